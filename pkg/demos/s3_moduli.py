"""Sample the continuous moduli of torsion-free, star-compatible connections on S3.

Run: python demos/s3_moduli.py
"""
from __future__ import annotations

import random

from ncriem import groupconn as gc
from ncriem.scalars import cdouble_field

F = cdouble_field(1e-10)


def residuals(params, names):
    conn = gc.s3_connection(params.coerce(F), F)
    return max(gc.check(conn, n)[1] for n in names)


def main():
    rng = random.Random(0)
    print("Three-angle family (torsion free + star compatible):")
    for _ in range(5):
        p = gc.sample_tf_star(rng)
        vals = "  ".join(f"{complex(x):.3f}" for x in p.as_tuple())
        print(f"   {vals}   residual {residuals(p, ('torsion_free', 'star_compatible')):.1e}")

    print("\nOne-parameter line, also cotorsion free. r runs over [1/3, 2/3]:")
    for r in (1 / 3, 0.4, 0.5, 0.6, 2 / 3):
        for st in (1, -1):
            p = gc.r_line_params(r, st, 1)
            res = residuals(p, ("torsion_free", "cotorsion_free", "star_compatible"))
            print(f"   r={r:.4f} sign={st:+d}  a={complex(p.a):.4f}  residual {res:.1e}")

    # conjugating c = d (flipping psi alone) keeps e = c - 1 but breaks cotorsion freedom
    p = gc.r_line_params(0.5, 1, 1)
    c = complex(p.c).conjugate()
    flipped = gc.S3Params(p.a, p.b, c, c, c - 1)
    print(f"\n   psi flipped alone at r=0.5: cotorsion residual {residuals(flipped, ('cotorsion_free',)):.2f}")


if __name__ == "__main__":
    main()
