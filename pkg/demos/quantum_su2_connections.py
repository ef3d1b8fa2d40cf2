"""Connections on the 3D calculus of C_q[SU2]: the metric family, its special points and q -> 1.

Run: python demos/quantum_su2_connections.py
"""
from __future__ import annotations

from ncriem import qconn as qc
from ncriem.matrixkit import braid_defect
from ncriem.scalars import QRAT


def main():
    g = qc.QMetric(1, 2, 3)
    print("Metric, torsion-compatible, star-compatible connections form two lines in n+.")
    conn = qc.family_6_2_2(None, g, 0, QRAT.parse("1/2"))
    print("  member at n+ = 1/2, r = 0:", conn.format())
    print("  torsion in e0 direction:", QRAT.format(qc.torsion_q(conn)[1]))

    print("\nThe two braided members (one for each r):")
    for p in qc.braided_points(None, QRAT):
        print(f"  r = {QRAT.format(p.r):<12} braided = {braid_defect(qc.sigma9(p), 3).is_zero()}, "
              f"torsion e0 = {QRAT.format(qc.torsion_q(p)[1])}")

    print("\nTorsion-free members at numeric q (metric 1,1,1):")
    for q in (2.0, 1.1, 1.001, 0.999, 0.5):
        rep = qc.levi_civita_solve(q, qc.QMetric(1, 1, 1))
        ns = [s["n_plus"] for s in rep["solutions"][:2]]
        print(f"  q={q:<6} disc={rep['disc']:<10.6g} n+ roots = {ns[0]: .5f}, {ns[1]: .5f}  "
              f"(classical root index {rep['classical_root_index']})")

    print("\nAt q = 1 with equal g++ and g--, the unique torsion-free, metric,")
    print("star-preserving connection:")
    rep = qc.classical_limit_check(qc.QMetric(1, 1, 1))
    print("  ", rep["solution"])
    print("  unequal g++ and g--:", "solution exists" if qc.classical_limit_check(qc.QMetric(1, 1, 2))["exists"] else "no solution")

    print("\nDescent to the quantum sphere picks out n+ and n-:")
    sp = qc.sphere_descent_check()
    print(f"   n+ = {sp['n_plus']}, n- = {sp['n_minus']}, equal to the braided point: {sp['matches_braided_point']}")


if __name__ == "__main__":
    main()
