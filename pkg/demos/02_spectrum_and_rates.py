"""
Generating functions, eigenvalues and failure rates of long ladders.

For a uniform ladder the reliabilities obey a short linear recurrence, so the
whole family is captured by N(z)/D(z).  The largest eigenvalue zeta_+ sets
the decay with n, and the failure rate grows linearly in n.
"""

from fractions import Fraction

import numpy as np

from relladder import (
    LadderConfig,
    asymptotic_rate,
    closed_form_directed,
    dominant_eigenvalue,
    failure_frequency,
    gf_extract,
    rel2,
)

gf = gf_extract("angele_directed", Fraction(1, 3), Fraction(1, 2))
print("N(z) =", gf.N.format("z"))
print("D(z) =", gf.D.format("z"))
print("first terms:", ", ".join(str(c) for c in gf.series(5)[1:]))

# two-eigenvalue form against the transfer matrices
form = closed_form_directed(0.9, 1.0)
print("zeta_+ , zeta_- at p=0.9:", form.eigenvalues)
for n in (2, 10, 50):
    print(f"n={n:3d}  closed form {form.value(n):.12f}  transfer {rel2(LadderConfig.uniform('angele_directed', n, 0.9, 1)):.12f}")

# directed and undirected zeta_+ are close over the whole range
print("\n   p   zeta+ dir  zeta+ undir")
for p in np.linspace(0.5, 1.0, 6):
    q = Fraction(p).limit_denominator(100)
    print(f"{p:5.2f}  {dominant_eigenvalue('angele_directed', q, 1):.6f}   {dominant_eigenvalue('angele_undirected', q, 1):.6f}")

# failure rate of an n-cell ladder when only edges fail (rate lam)
lam, p = 1e-3, 0.95
intercept, slope = asymptotic_rate("angele_undirected", p, 1, lam)
print(f"\nasymptotic rate: {intercept:.3e} + n * {slope:.3e}")
for n in (5, 20, 80):
    cfg = LadderConfig.uniform("angele_undirected", n, p, 1.0)
    rates = {k: (0.0 if k[0] in "ST" else lam) for k in cfg.components()}
    res = failure_frequency(cfg, rates)
    print(f"n={n:3d}  exact {res.rate:.6e}  linear {intercept + n * slope:.6e}")
