"""
Where the reliability polynomial vanishes.

Rel2 at fixed node reliability rho is a polynomial in p.  Its complex zeros
pile up on the curves where the two largest eigenvalues have equal modulus,
plus a stretch of the positive real axis.  This script finds the zeros for a
few n, measures how close they sit to the limiting curve, and writes
plot-ready CSV files next to itself (demos/out/).
"""

import pathlib
from fractions import Fraction

import numpy as np

from relladder import find_roots, limit_curve, poly_in_p, real_accumulation
from relladder.zeros import write_curve_csv, write_roots_csv

out = pathlib.Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

rho = Fraction(1)
curve = limit_curve("directed", rho, region=(-3, 5, -3, 3))
print("real accumulation segment:", [(round(a, 4), round(b, 4)) for a, b in curve.real.segments])

sets = []
for n in (10, 20, 40):
    P = poly_in_p("directed", n, rho)
    rs = find_roots(P, 256, n=n, rho=rho)
    z = [w for w in rs.as_complex() if w != 0]
    med = np.median([curve.distance(w) for w in z])
    print(f"n={n:3d}  degree {P.degree:3d}  max residual {rs.max_residual():.1e}  median distance to curve {med:.4f}")
    sets.append(rs)

with open(out / "zeros_directed_rho1.csv", "w", newline="") as fh:
    write_roots_csv(sets, fh)
with open(out / "curve_directed_rho1.csv", "w", newline="") as fh:
    write_curve_csv(curve, fh)

# the undirected segment shrinks to the single point 3/2 at rho = 8/9
for r in (Fraction(1), Fraction(9, 10), Fraction(8, 9), Fraction(22, 25)):
    acc = real_accumulation("undirected", r)
    print(f"undirected rho={str(r):5s}  segments {[(round(a, 4), round(b, 4)) for a, b in acc.segments]}  points {acc.points}")
print("CSV written to", out)
