"""
Structural transitions as node reliability drops.

The undirected real segment pinches to a point at one critical rho, and the
directed segment starts to cut through the closed curve at another.  For
small rho both pictures become a circle plus a segment whose size grows like
rho**(-1/3).
"""

from fractions import Fraction

from relladder import asymptotic_loci, critical_predicate, critical_rho, segment_endpoints_directed

rc_u = critical_rho("undirected")
rc_d = critical_rho("directed")
print(f"undirected critical rho {rc_u:.8f}   (8/9 = {8 / 9:.8f})")
print(f"directed critical rho   {rc_d:.8f}")

print("\ndirected: does the segment cut the closed curve?")
for r in (0.45, 0.5, 0.51, 0.52, 0.55, 0.7):
    print(f"  rho={r:.2f}  {critical_predicate('directed', r)}")

print("\n    rho      p-       p+     predicted p-  p+     circle")
for r in (Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10**4), Fraction(1, 10**5)):
    lo, hi = segment_endpoints_directed(r)
    loci = asymptotic_loci("directed", float(r))
    print(f"{float(r):8.0e}  {lo:8.3f} {hi:8.3f}   {loci['p_minus']:8.3f} {loci['p_plus']:8.3f}  {loci['circle_radius']:8.3f}")
