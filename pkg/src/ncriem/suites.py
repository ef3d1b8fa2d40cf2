"""Named verification suites and the C_q[SU2] condition classifier.

Each suite returns ``{"suite", "checks": [{id, ref, status, witness}], "ok"}``
where ``status`` is ``"pass"`` or ``"fail"``.  Everything is seeded, so two
runs with the same configuration give identical reports.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import groupconn as gc
from . import qalg
from . import qconn as qc
from .groupcalc import s3_calculus
from .matrixkit import braid_defect, det
from .scalars import GAUSS, QRAT, GaussRat, QRatFn, cdouble_field, random_point, random_real

__all__ = ["SUITES", "UnknownSuite", "RunConfig", "run_suite", "classify_qsu2", "QSU2_CONDITIONS"]


class UnknownSuite(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    backend: str = "gauss"
    tol: float = 1e-10
    seed: int = 0
    samples: int = 50


def _rec(cid: str, ref: str, ok: bool, witness=None) -> dict:
    out = {"id": cid, "ref": ref, "status": "pass" if ok else "fail"}
    if witness is not None:
        out["witness"] = witness
    return out


# ---------------------------------------------------------------------------
# S3
# ---------------------------------------------------------------------------


def suite_s3_calculus(cfg: RunConfig) -> list[dict]:
    calc = s3_calculus(GAUSS)
    G, n = calc.group, calc.n
    rng = random.Random(cfg.seed)
    out = [_rec("s3.dim-lambda2", "dimension of the degree-2 invariant forms is 4", calc.dim2 == 4, calc.dim2)]

    ok = all(calc.is_zero2(calc.d1(calc.d0(calc.delta(h)))) for h in range(G.order))
    out.append(_rec("s3.d-squared-basis", "d^2 = 0 on every delta function", ok))
    ok = True
    for _ in range(20):
        f = [random_point(50, rng) for _ in range(G.order)]
        ok &= calc.is_zero2(calc.d1(calc.d0(f)))
    out.append(_rec("s3.d-squared-random", "d^2 = 0 on 20 random functions", ok))

    ok = True
    for _ in range(20):
        f = [random_point(50, rng) for _ in range(G.order)]
        h = [random_point(50, rng) for _ in range(G.order)]
        fh = [x * y for x, y in zip(f, h)]
        lhs = calc.d0(fh)
        rhs = calc.left_mul(f, calc.d0(h)) + calc.right_mul(calc.d0(f), h)
        ok &= calc.is_zero1(lhs - rhs)
    out.append(_rec("s3.leibniz", "d(fh) = f dh + (df) h on 20 random pairs", ok))

    ok = True
    for _ in range(10):
        f = [random_point(50, rng) for _ in range(G.order)]
        w = calc.left_mul([random_point(50, rng) for _ in range(G.order)], calc.xi(rng.randrange(n)))
        lhs = calc.d1(calc.left_mul(f, w))
        rhs = calc.wedge(calc.d0(f), w) + calc.left_mul2(f, calc.d1(w))
        ok &= calc.is_zero2(lhs - rhs)
    out.append(_rec("s3.graded-leibniz", "d(f w) = df ^ w + f dw on 10 random pairs", ok))

    out.append(_rec("s3.psi-braid", "the crossed-module braiding satisfies the braid relations",
                    braid_defect(calc.psi, n).is_zero()))
    out.append(_rec("s3.varpi-kernel", "kernel of the Maurer-Cartan map has dimension 3",
                    len(calc.varpi_kernel_basis()) == 3))

    mc = gc.s3_connection((1, 0, 0, 1, 0))
    out.append(_rec("s3.mc-sigma-is-psi", "zero Christoffel symbols give sigma = Psi", mc.sigma.equals(calc.psi)))
    for name in ("braid", "star_compatible", "metric", "torsion_compatible"):
        holds = gc.check(mc, name)[0]
        expect = name != "torsion_compatible"
        out.append(_rec(f"s3.mc-{name}", f"Maurer-Cartan connection: {name} is {expect}", holds == expect))
    return out


def _det_formula(p: gc.S3Params):
    a, b, c, d, e = p.as_tuple()
    return (a - b) ** 2 * (a + 2 * b) * (e + c + d) ** 2 * (e * e - c * e - d * e + c * c + d * d - c * d) ** 2


def suite_s3_classification(cfg: RunConfig) -> list[dict]:
    rng = random.Random(cfg.seed)
    out = []
    bad = None
    for _ in range(100):
        p = gc.S3Params(*(random_point(1000, rng) for _ in range(5)))
        if det(gc.s3_connection(p).sigma) != _det_formula(p):
            bad = p.format(GAUSS)
            break
    out.append(_rec("s3.det-identity", "det sigma = (a-b)^2 (a+2b) (e+c+d)^2 (e^2-ce-de+c^2+d^2-cd)^2 at 100 points",
                    bad is None, bad))

    # torsion-free <=> torsion-compatible <=> d = c = e + 1
    ok = True
    for _ in range(50):
        a, b, e = (random_point(100, rng) for _ in range(3))
        conn = gc.s3_connection((a, b, e + 1, e + 1, e))
        ok &= gc.check(conn, "torsion_free")[0] and gc.check(conn, "torsion_compatible")[0]
    for _ in range(50):
        p = [random_point(100, rng) for _ in range(5)]
        conn = gc.s3_connection(p)
        ok &= not gc.check(conn, "torsion_free")[0] and not gc.check(conn, "torsion_compatible")[0]
    out.append(_rec("s3.torsion-plane", "torsion free iff torsion compatible iff d = c = e + 1 (50 + 50 samples)", ok))

    metric_implies_cot = True
    for _ in range(30):
        a, c, d = (random_real(100, rng) for _ in range(3))
        b = random_point(100, rng)
        conn = gc.s3_connection((a, b, c, d, b.conjugate()))
        metric_implies_cot &= gc.check(conn, "metric")[0] and gc.check(conn, "cotorsion_free")[0]
    out.append(_rec("s3.metric-implies-cotorsion", "metric preserving implies cotorsion free (30 samples)", metric_implies_cot))

    for p, lam in (((1, 0, 0, 1, 0), 1), ((-1, 0, 0, -1, 0), -1), ((2, 0, 0, 2, 0), 8)):
        res = gc.sigma_power_check(gc.s3_connection(p), 3)
        out.append(_rec(f"s3.sigma-cube-{p}", f"sigma^3 = {lam} * id", res is not None and res == GaussRat(lam),
                        None if res is None else GAUSS.format(res)))

    ref = gc.s3_connection((GaussRat(5) / 3, GaussRat(-1) / 3, GaussRat(2) / 3, GaussRat(2) / 3, GaussRat(-1) / 3))
    fl = {k: gc.check(ref, k)[0] for k in ("torsion_free", "cotorsion_free", "metric", "star_compatible")}
    out.append(_rec("s3.frame-bundle-point", "(5/3,-1/3,2/3,2/3,-1/3): torsion free, cotorsion free, metric, not star compatible",
                    fl == {"torsion_free": True, "cotorsion_free": True, "metric": True, "star_compatible": False}, fl))

    sets = sorted({f.conditions for f in gc.FAMILIES} | set(gc.EMPTY_CONJUNCTIONS), key=lambda s: sorted(s))
    for conds in sets:
        rep = gc.classify_s3(conds, backend=cfg.backend, samples=cfg.samples, seed=cfg.seed, tol=cfg.tol)
        failing = [f["name"] for f in rep["families"] if not f["ok"]]
        out.append(_rec("s3.classify." + "+".join(sorted(conds)),
                        "empty conjunction" if rep["empty"] else "catalogued families certified",
                        rep["ok"], {"failing_families": failing, "off_family_passing": rep["off_family_samples"]["passing"]}))
    return out


# ---------------------------------------------------------------------------
# C_q[SL2] and C_q[SU2]
# ---------------------------------------------------------------------------


def suite_qsl2_algebra(cfg: RunConfig) -> list[dict]:
    rep = qalg.verify_3d_calculus()
    out = [_rec("qalg." + c["name"], "normal-form identity", c["ok"],
                None if c["ok"] else {"lhs": c["lhs"], "rhs": c["rhs"]}) for c in rep["checks"]]
    rng = random.Random(cfg.seed)
    bad = 0
    for _ in range(500):
        x, y, z = (qalg.random_monomial(rng) for _ in range(3))
        if (x * y) * z != x * (y * z):
            bad += 1
    out.append(_rec("qalg.associativity", "(xy)z = x(yz) on 500 random monomial triples", bad == 0, bad))
    return out


def _rand_conn(rng: random.Random, field=QRAT, q=None) -> qc.QSU2Connection:
    return qc.QSU2Connection.make(q=q, field=field, **{k: random_point(20, rng) for k in qc.PARAMS})


def suite_qsu2_calculus(cfg: RunConfig) -> list[dict]:
    rng = random.Random(cfg.seed)
    out = []
    ok_disp = ok_tor = ok_qalg = ok_tc = ok_star = True
    for _ in range(5):
        conn = _rand_conn(rng)
        ok_disp &= qc.sigma9(conn).equals(qc.sigma9_display(conn))
        tq = qc.torsion_q(conn)
        tw = qc.torsion_from_wedge(conn)
        ok_tor &= tw[qc.P][1] == tq[0] and tw[qc.Z][0] == tq[1] and tw[qc.M][2] == tq[2]
        ta = qc.torsion_from_qalg(conn)
        ok_qalg &= all(ta[i].comps[k] == qalg.QPoly.scalar(tw[i][k]) for i in range(3) for k in range(3))
        # torsion compatibility: matrix form agrees with the closed form
        tc = conn.with_params(m_plus=conn.q ** 4 * conn.n_plus - (1 + conn.q ** 2),
                              m_minus=conn.q ** -4 * (conn.n_minus + 1 + conn.q ** 2))
        ok_tc &= all(QRAT.is_zero(x) for x in qc.torsion_compat_defect(tc))
        ok_tc &= not all(QRAT.is_zero(x) for x in qc.torsion_compat_defect(conn))
    out.append(_rec("qsu2.sigma-display", "general construction of sigma equals the 9x9 display (5 random points)", ok_disp))
    out.append(_rec("qsu2.torsion-closed-form", "closed-form torsion equals wedge(nabla) - d (5 random points)", ok_tor))
    out.append(_rec("qsu2.torsion-engine", "torsion re-derived with the algebra engine agrees", ok_qalg))
    out.append(_rec("qsu2.torsion-compatible", "m+ = q^4 n+ - (1+q^2), m- = q^-4 (n- + 1 + q^2) is torsion compatibility", ok_tc))

    # star compatibility: matrix form agrees with the closed-form relations
    F = cdouble_field(cfg.tol)
    for _ in range(20):
        q = rng.uniform(0.5, 2.0)
        conn = _rand_conn(rng, F, q)
        a = all(F.is_zero(x) for x in qc.star_compat_defect(conn))
        b = all(F.is_zero(x) for x in qc.star_compat_formula_defect(conn))
        ok_star &= a == b and not a
        np_ = complex(rng.uniform(-2, 2))
        yp = 1 + np_ * (1 - q * q)
        mp = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        r = [0.0, 2 / (q * q - 1)][rng.randrange(2)]
        good = conn.with_params(n_plus=np_, n_minus=(-np_ / yp).conjugate(), m_plus=mp,
                                m_minus=(-(q ** -4) * mp / yp).conjugate(), r=r)
        ok_star &= all(F.is_zero(x) for x in qc.star_compat_defect(good))
    out.append(_rec("qsu2.star-compatible", "sigma J conj(sigma) J = id agrees with the closed-form relations (20 draws)", ok_star))

    # braid relations: m+- = 0 always braided; exceptional cases with corrected signs
    q = QRatFn.q()
    ok = True
    for _ in range(3):
        conn = _rand_conn(rng).with_params(m_plus=0, m_minus=0)
        ok &= braid_defect(qc.sigma9(conn), 3).is_zero()
    out.append(_rec("qsu2.braid-m-zero", "m+ = m- = 0 gives braided sigma for any n+-, r, nu, mu", ok))
    r = random_point(20, rng)
    rho = 1 + r * (1 - q ** 2)
    np_ = (-1 - q ** -2 * rho) / (1 - q ** 2)
    nm = (-1 - q ** 2 * rho) / (1 - q ** 2)
    for label, sgn, expect in (("printed", 1, False), ("corrected", -1, True)):
        c1 = qc.QSU2Connection.make(n_plus=np_, n_minus=-(1 + q ** 2), m_plus=sgn * q ** 2 * np_, r=r)
        c2 = qc.QSU2Connection.make(n_plus=q ** -4 * (1 + q ** 2), n_minus=nm, m_minus=sgn * q ** -2 * nm, r=r)
        got = (braid_defect(qc.sigma9(c1), 3).is_zero(), braid_defect(qc.sigma9(c2), 3).is_zero())
        out.append(_rec(f"qsu2.braid-exceptional-{label}",
                        f"exceptional braid cases with m+ = {'' if sgn > 0 else '-'}q^2 n+, m- = {'' if sgn > 0 else '-'}q^-2 n-: braided is {expect}",
                        got == (expect, expect), list(got)))

    conn = _rand_conn(rng).with_params(m_plus=0, m_minus=0)
    et = qc.eigen_table_check(conn)
    out.append(_rec("qsu2.eigen-table", "nine eigenpairs for m+- = 0 (q+- on the e0 term)", et["attached_reading_ok"],
                    {"overall_reading_ok": et["overall_reading_ok"]}))
    return out


QSU2_CONDITIONS = ("metric", "star_compatible", "torsion_compatible", "braid", "torsion_free", "star_preserving")
_QALIASES = {
    "star": "star_compatible", "star-compatible": "star_compatible", "star-compat": "star_compatible",
    "torsion-compat": "torsion_compatible", "torsion-compatible": "torsion_compatible",
    "torsion": "torsion_free", "torsion-free": "torsion_free", "metric-preserving": "metric",
    "braided": "braid", "star-preserving": "star_preserving",
}
_QFLAG = {"metric": "metric_preserving", "star_compatible": "star_compatible", "torsion_compatible": "torsion_compatible",
          "braid": "braided", "torsion_free": "torsion_free", "star_preserving": "star_preserving"}


def _qnorm(conditions) -> frozenset:
    out = set()
    for raw in conditions:
        name = raw.strip()
        if not name:
            continue
        name = _QALIASES.get(name, name).replace("-", "_")
        if name not in QSU2_CONDITIONS:
            raise gc.UnknownCondition(f"unknown condition {raw!r}; expected one of {sorted(QSU2_CONDITIONS)}")
        out.add(name)
    return frozenset(out)


def _holds_all(conn, conds, g) -> tuple[bool, list]:
    fl = qc.flags(conn, g)
    failed = [c for c in sorted(conds) if not fl[_QFLAG[c]]]
    return not failed, failed


def classify_qsu2(conditions, q: float = 0.9, metric: qc.QMetric | None = None, samples: int = 10,
                  seed: int = 0, tol: float = 1e-9) -> dict:
    """Certify the known solution sets of a conjunction of conditions on C_q[SU2].

    Exact families use symbolic q; the torsion-free points (which need a
    square root) use the numeric q given here.
    """
    conds = _qnorm(conditions)
    g = metric or qc.QMetric(1, 1, 1)
    rng = random.Random(seed)
    base = frozenset({"metric", "star_compatible", "torsion_compatible"})
    F = cdouble_field(tol)
    fams = []

    def family(name, ref, conns, expect=True):
        res = [_holds_all(c, conds, g) for c in conns]
        passed = all(r[0] for r in res)
        fams.append({"name": name, "ref": ref, "samples": len(conns), "pass": passed, "expected": expect,
                     "ok": passed == expect, "failed_conditions": sorted({x for r in res for x in r[1]})})

    def reals(k):
        return [GaussRat(rng.randint(-50, 50) or 1, 0) / rng.randint(1, 20) for _ in range(k)]

    if conds == base:
        conns = [qc.family_6_2_2(None, g, ri, n) for ri in (0, 1) for n in reals(samples)]
        family("metric-torsion-compatible-star", "n+ real, r in {0, 2/(q^2-1)}, remaining parameters determined by n+", conns)
    if conds == base | {"braid"}:
        family("braided-points", "n+ = (1+q^2)/q^4, n- = -(1+q^2), m = nu = mu = 0, r in {0, 2/(q^2-1)}",
               qc.braided_points(None, QRAT))
    if conds == base | {"star_preserving"}:
        family("star-preserving-points", "closed-form n+-, m+-, nu, mu in terms of the metric, r in {0, 2/(q^2-1)}",
               qc.star_preserving_points(None, g, QRAT))
    if conds == base | {"torsion_free"}:
        lc = qc.levi_civita_solve(q, g, tol)
        conns = [qc.family_6_2_2(q, g, ri, qc._n_plus_root(q, (float(g.gpp), float(g.g00), float(g.gmm)), s), F)
                 for ri in (0, 1) for s in (-1, 1)]
        family("levi-civita-points", "four torsion-free points: two roots for n+ and two choices of r", conns)
        fams[-1]["classical_root_index"] = lc["classical_root_index"]
    if conds == {"braid"}:
        conns = [_rand_conn(rng).with_params(m_plus=0, m_minus=0) for _ in range(3)]
        family("braid-m-zero", "m+ = m- = 0 with the other parameters free", conns)
        qs = QRatFn.q()
        plus, minus = [], []
        for _ in range(samples):
            r = random_point(20, rng)
            rho = 1 + r * (1 - qs ** 2)
            np_ = (-1 - qs ** -2 * rho) / (1 - qs ** 2)
            nm = (-1 - qs ** 2 * rho) / (1 - qs ** 2)
            plus.append(qc.QSU2Connection.make(n_plus=np_, n_minus=-(1 + qs ** 2), m_plus=-(qs ** 2) * np_, r=r))
            minus.append(qc.QSU2Connection.make(n_plus=qs ** -4 * (1 + qs ** 2), n_minus=nm, m_minus=-(qs ** -2) * nm, r=r))
        family("braid-exceptional-plus", "m- = 0, n- = -(1+q^2), m+ = -q^2 n+, n+ fixed by r", plus)
        family("braid-exceptional-minus", "m+ = 0, n+ = (1+q^2)/q^4, m- = -q^-2 n-, n- fixed by r", minus)
    if conds == {"torsion_compatible"}:
        conns = []
        for _ in range(samples):
            c = _rand_conn(rng)
            conns.append(c.with_params(m_plus=c.q ** 4 * c.n_plus - (1 + c.q ** 2), m_minus=c.q ** -4 * (c.n_minus + 1 + c.q ** 2)))
        family("torsion-compatible", "m+ = q^4 n+ - (1+q^2), m- = q^-4 (n- + 1 + q^2)", conns)
    if conds == {"metric"}:
        conns = []
        for _ in range(samples):
            c = _rand_conn(rng)
            gpp, g00, gmm = g.coerce(QRAT)
            nr = [random_real(20, rng) for _ in range(3)]
            mu = gpp * c.m_plus.conjugate() / (c.q * g00)
            m_minus = g00 * c.nu.conjugate() / (c.q * gmm)
            conns.append(c.with_params(n_plus=nr[0], n_minus=nr[1], r=nr[2], mu=mu, m_minus=m_minus))
        family("metric", "n+-, r real, q^-1 g++ conj(m+) = g00 mu, q^-1 g00 conj(nu) = g-- m-", conns)

    off_rng = random.Random(seed + 1)
    off = [_rand_conn(off_rng) for _ in range(max(10, samples))]
    off_pass = sum(1 for c in off if _holds_all(c, conds, g)[0])
    catalogued = bool(fams)
    return {
        "condition_set": sorted(conds),
        "catalogued": catalogued,
        "families": fams,
        "off_family_samples": {"count": len(off), "passing": off_pass},
        "seed": seed,
        "q_numeric": q,
        "metric": g.to_json(),
        "tolerance": tol,
        "ok": catalogued and off_pass == 0 and all(f["ok"] for f in fams),
    }


def suite_qsu2_classification(cfg: RunConfig) -> list[dict]:
    rng = random.Random(cfg.seed)
    out = []
    g = qc.QMetric(1, 2, 3)
    sets = [("metric", "star_compatible", "torsion_compatible"),
            ("metric", "star_compatible", "torsion_compatible", "braid"),
            ("metric", "star_compatible", "torsion_compatible", "star_preserving"),
            ("metric", "star_compatible", "torsion_compatible", "torsion_free"),
            ("braid",), ("torsion_compatible",), ("metric",)]
    for conds in sets:
        rep = classify_qsu2(conds, metric=g, samples=5, seed=cfg.seed, tol=max(cfg.tol, 1e-9))
        out.append(_rec("qsu2.classify." + "+".join(sorted(conds)), "catalogued solution set certified", rep["ok"],
                        {"failing": [f["name"] for f in rep["families"] if not f["ok"]],
                         "off_family_passing": rep["off_family_samples"]["passing"]}))

    # the family's torsion in e0 matches the closed form
    q = QRatFn.q()
    ok = True
    for _ in range(5):
        n = random_real(30, rng)
        for ri in (0, 1):
            c = qc.family_6_2_2(None, g, ri, n)
            gpp, g00, gmm = g.coerce(QRAT)
            ok &= qc.torsion_q(c)[1] == q * (gmm * c.m_minus - gpp * c.m_plus - q ** 2 * g00) / g00
    out.append(_rec("qsu2.family-torsion", "T(e0) = q (g-- m- - g++ m+ - q^2 g00)/g00 on the family", ok))

    for conn in qc.braided_points(None, QRAT):
        rows = qc.braided_point_table_check(conn)
        out.append(_rec(f"qsu2.braided-table-r={QRAT.format(conn.r)}", "nine eigenpairs at the braided point",
                        all(r["ok"] for r in rows)))
        out.append(_rec(f"qsu2.braided-torsion-r={QRAT.format(conn.r)}", "T(e0) = -q^3 e+^e- at the braided point",
                        qc.torsion_q(conn)[1] == -(q ** 3)))

    lc = qc.levi_civita_solve(2.0, qc.QMetric(1, 1, 1), 1e-9)
    out.append(_rec("qsu2.lc-disc", "metric (1,1,1), q = 2: disc = 148", lc["disc"] == 148.0, lc["disc"]))
    for qq in (1 - 1e-3, 1 + 1e-3):
        lc = qc.levi_civita_solve(qq, qc.QMetric(1, 1, 1), 1e-9)
        n = lc["solutions"][lc["classical_root_index"]]["n_plus"]
        out.append(_rec(f"qsu2.lc-classical-{qq}", "classical root n+ is within 1e-2 of 3/2 near q = 1", abs(n - 1.5) < 1e-2, n))
    all_ok = True
    disc_pos = True
    for _ in range(10):
        qq = rng.uniform(0.5, 2.0)
        gg = qc.QMetric(*(round(rng.uniform(0.2, 5.0), 6) for _ in range(3)))
        lc = qc.levi_civita_solve(qq, gg, 1e-9)
        all_ok &= lc["ok"] and len(lc["solutions"]) == 4
        disc_pos &= lc["disc"] > 0
    out.append(_rec("qsu2.lc-random", "four torsion-free points within 1e-9 for 10 random (q, metric)", all_ok))
    out.append(_rec("qsu2.lc-disc-positive", "disc > 0 for 10 random (q, metric)", disc_pos))

    sp = qc.special_points(None, qc.QMetric(1, 2, 1))
    out.append(_rec("qsu2.star-preserving-coincide", "equal g++ and g--: the r = 0 star-preserving point is the braided one",
                    bool(sp.get("coincide_at_r0"))))
    probe = qc.classical_probe(qc.QMetric(1, 2, 3))
    out.append(_rec("qsu2.star-preserving-no-limit", "unequal g++ and g--: star-preserving n+ has no limit at q = 1",
                    not probe["bounded"], probe))

    cl = qc.classical_limit_check(qc.QMetric(1, 1, 1))
    keys = ("matches_closed_form", "torsion_free", "metric_preserving", "star_preserving", "gamma_star_condition", "unique")
    out.append(_rec("qsu2.classical-limit", "q = 1, g++ = g--: nu = -mu = 1/2 connection passes", all(cl[k] for k in keys),
                    cl["solution"]))
    cl = qc.classical_limit_check(qc.QMetric(1, 1, 2))
    out.append(_rec("qsu2.classical-limit-empty", "q = 1, g++ != g--: no solution", not cl["exists"]))
    return out


def suite_sphere(cfg: RunConfig) -> list[dict]:
    rep = qc.sphere_descent_check()
    out = [_rec(f"sphere.d({r['u']})", f"e0 part of d({r['u']}) is proportional to {r['u']}", r["proportional"],
                {"lambda": r["lambda"], "n": r["n"]}) for r in rep["rows"]]
    out.append(_rec("sphere.descended-n", "descended (n+, n-) = ((1+q^2)/q^4, -(1+q^2))", rep["matches_braided_point"],
                    {"n_plus": rep["n_plus"], "n_minus": rep["n_minus"]}))
    return out


SUITES = {
    "s3-calculus": suite_s3_calculus,
    "s3-classification": suite_s3_classification,
    "qsl2-algebra": suite_qsl2_algebra,
    "qsu2-calculus": suite_qsu2_calculus,
    "qsu2-classification": suite_qsu2_classification,
    "sphere": suite_sphere,
}


def run_suite(name: str, cfg: RunConfig | None = None) -> dict:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    cfg = cfg or RunConfig()
    checks = SUITES[name](cfg)
    return {"suite": name, "checks": checks, "ok": all(c["status"] == "pass" for c in checks)}
