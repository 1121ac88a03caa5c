"""
Reliability of short K4 ladders, exact and by brute force.

Builds a few ladders, evaluates the source-to-destination reliability with
the transfer matrices, and checks it against explicit state enumeration.
Run from the repository root:  python3 demos/01_small_ladders.py
"""

from fractions import Fraction

from relladder import LadderConfig, UniPoly, expand_graph, oracle_enumerate, rel2, rel2_gradient

half = Fraction(1, 2)

# uniform directed ladder: every edge p, every node rho
cfg = LadderConfig.uniform("angele_directed", 2, half, half)
print("directed n=2, p=rho=1/2:", rel2(cfg))
print("oracle                  :", oracle_enumerate(expand_graph(cfg)))

# same thing with p as a polynomial variable
p = UniPoly.x()
print("directed n=2, rho=1 as a polynomial in p:", rel2(LadderConfig.uniform("angele_directed", 2, p, 1)))

# floats work too, and so does the general 5x5 model; uniform() also sets the
# reverse edges to p, so the general directed ladder matches the undirected one
for preset in ("angele_directed", "angele_undirected", "general_directed", "undirected"):
    vals = [rel2(LadderConfig.uniform(preset, n, 0.9, 0.95)) for n in (1, 5, 20)]
    print(f"{preset:18s}", "  ".join(f"{v:.6f}" for v in vals))

# sensitivities: which component matters most?
cfg = LadderConfig.uniform("undirected", 3, 0.9, 0.99)
grad = rel2_gradient(cfg)
top = sorted(grad.items(), key=lambda kv: -kv[1])[:5]
print("largest dRel/dx_i for undirected n=3:")
for (field, cell), g in top:
    print(f"  {field:5s} cell {cell}: {g:.5f}")
