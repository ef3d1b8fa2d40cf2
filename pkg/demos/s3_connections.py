"""Walk through bimodule connections on the functions of S3.

Run: python demos/s3_connections.py
"""
from __future__ import annotations

from ncriem import groupconn as gc
from ncriem.groupcalc import s3_calculus
from ncriem.matrixkit import braid_defect, det
from ncriem.scalars import GAUSS, GaussRat


def show(label, params):
    conn = gc.s3_connection(params)
    flags = {name: gc.check(conn, name)[0] for name in
             ("braid", "torsion_free", "cotorsion_free", "metric", "star_compatible")}
    text = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in flags.items())
    print(f"  {label:<28} det={GAUSS.format(det(conn.sigma)):>10}  {text}")


def main():
    calc = s3_calculus()
    print("The calculus: generators are the three transpositions.")
    print(f"  dim of invariant 1-forms = {calc.n}, dim of invariant 2-forms = {calc.dim2}")
    print(f"  crossed-module braiding obeys the braid relations: {braid_defect(calc.psi, 3).is_zero()}")

    print("\nA right-invariant connection has five parameters (a, b, c, d, e).")
    print("Zero Christoffel symbols give sigma equal to the braiding itself:")
    print(gc.s3_connection((1, 0, 0, 1, 0)).sigma.pretty())

    t = GaussRat(1) / 3
    print("\nA few points and the conditions they satisfy:")
    show("Maurer-Cartan (1,0,0,1,0)", (1, 0, 0, 1, 0))
    show("cube -1 (-1,0,0,-1,0)", (-1, 0, 0, -1, 0))
    show("(5/3,-1/3,2/3,2/3,-1/3)", (5 * t, -t, 2 * t, 2 * t, -t))
    show("(1/3,-2/3,-2/3,1/3,-2/3)", (t, -2 * t, -2 * t, t, -2 * t))
    show("(-1,0,0,0,-1)", (-1, 0, 0, 0, -1))

    print("\nThe point (5/3, -1/3, 2/3, 2/3, -1/3) is torsion free, cotorsion free and")
    print("metric preserving but not star compatible. The last point above is braided,")
    print("torsion free and star compatible at once, so that conjunction is not empty.")

    for p in ((1, 0, 0, 1, 0), (-1, 0, 0, -1, 0)):
        lam = gc.sigma_power_check(gc.s3_connection(p), 3)
        print(f"  sigma^3 at {p} = {GAUSS.format(lam)} * id")


if __name__ == "__main__":
    main()
