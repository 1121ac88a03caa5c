"""Self-checks: oracle equivalence and agreement with the printed formulas.

Each check returns a :class:`Check`; :func:`run_checks` runs the suite with
a fixed seed so results are reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from .ladder import EDGE_FIELDS, FIELDS, CellParams, LadderConfig, Preset, expand_graph
from .oracle import oracle_enumerate, oracle_factoring
from .reference import angele_directed_gf, angele_undirected_gf
from .scalars import UniPoly
from .spectral import closed_form_directed, closed_form_undirected_perfect, gf_extract
from .transfer import rel2, rel2_sequence
from .zeros import find_roots, poly_in_p

__all__ = ["Check", "run_checks", "random_config", "swap_destination"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


def _rand_fraction(rng: random.Random, den: int = 12) -> Fraction:
    return Fraction(rng.randint(0, den), den)


def random_config(rng: random.Random, preset, n: int, exact: bool = True, destination=None) -> LadderConfig:
    """Random ladder with every live component drawn independently."""
    draw = (lambda: _rand_fraction(rng)) if exact else rng.random
    cells = [CellParams(**{f: draw() for f in FIELDS}) for _ in range(n + 1)]
    dest = destination or rng.choice("ST")
    return LadderConfig.from_cells(preset, cells, dest)


def swap_destination(config: LadderConfig) -> LadderConfig:
    """Relabel the last rung: ``a<->e``, ``c<->d`` (reverses too), ``S<->T``.

    The rung edge reverses under the relabelling, so ``b<->b_rev`` as well.
    Rel2 to ``S_n`` of the result equals Rel2 to ``T_n`` of the input.
    """
    last = config.cells[-1]
    pairs = {"a": "e", "e": "a", "c": "d", "d": "c", "S": "T", "T": "S", "b": "b_rev", "b_rev": "b"}
    for f in list(pairs):
        if f in EDGE_FIELDS and f != "b":
            pairs[f + "_rev"] = pairs[f] + "_rev"
    swapped = last.replace(**{f: getattr(last, g) for f, g in pairs.items()})
    dest = "S" if config.destination == "T" else "T"
    cells = config.cells[:-1] + (swapped,)
    return LadderConfig(cells, dest, config.preset)


def _oracle_equivalence(rng, count) -> Check:
    bad = 0
    total = 0
    for preset in Preset:
        for _ in range(count):
            n = rng.choice((1, 2))
            cfg = random_config(rng, preset, n)
            g = expand_graph(cfg)
            ref = oracle_enumerate(g) if len(g.components()) <= 24 else oracle_factoring(g)
            total += 1
            if rel2(cfg) != ref:
                bad += 1
    return Check("oracle_equivalence", bad == 0, f"{total - bad}/{total} exact matches")


def _cross_oracle(rng, count) -> Check:
    bad = 0
    for preset in Preset:
        for _ in range(count):
            g = expand_graph(random_config(rng, preset, 1))
            if oracle_enumerate(g) != oracle_factoring(g):
                bad += 1
    return Check("oracle_cross", bad == 0, f"{4 * count - bad}/{4 * count} enumerate == factoring")


def _mapping(rng) -> Check:
    p, r = Fraction(1, 3), Fraction(2, 5)
    ok = rel2(LadderConfig.uniform("angele_directed", 1, p, r)) == p * r * r
    ok &= rel2(LadderConfig.uniform("angele_directed", 2, p, r)) == 2 * p**2 * r**3 - p**4 * r**4
    sym = all(
        rel2(cfg) == rel2(swap_destination(cfg))
        for cfg in (random_config(rng, "general_directed", 2, destination="T") for _ in range(10))
    )
    return Check("edge_mapping", ok and sym, f"first terms {'ok' if ok else 'WRONG'}, S<->T symmetry {'ok' if sym else 'WRONG'}")


def _printed_gf(rng, count) -> Check:
    bad = 0
    for _ in range(count):
        p = Fraction(rng.randint(1, 50), rng.randint(1, 30))
        r = Fraction(rng.randint(1, 50), rng.randint(1, 30))
        if r == 1:
            r = Fraction(1, 2)
        for preset, ref in (("angele_directed", angele_directed_gf), ("angele_undirected", angele_undirected_gf)):
            gf = gf_extract(preset, p, r)
            N, D = ref(p, r)
            if gf.D != D or gf.N != N:
                bad += 1
        for preset in ("angele_directed", "angele_undirected"):
            if gf_extract(preset, p, r).series(2)[1] != p * r * r:
                bad += 1
    return Check("printed_gf", bad == 0, f"{bad} mismatches over {count} points")


def _closed_forms(rng, count) -> Check:
    worst = 0.0
    for _ in range(count):
        p, r = rng.uniform(0.05, 0.99), rng.uniform(0.05, 1.0)
        forms = [("angele_directed", r, closed_form_directed(p, r)), ("angele_undirected", 1.0, closed_form_undirected_perfect(p))]
        for preset, rho, form in forms:
            cfg = LadderConfig.uniform(preset, 30, p, rho)
            seq = rel2_sequence(cfg)
            for n in range(2, 31):
                v = form.value(n)
                worst = max(worst, abs(complex(v).real - seq[n - 1]) / abs(seq[n - 1]))
    return Check("closed_forms", worst <= 1e-10, f"max relative deviation {worst:.2e}")


def _zeros_anchor(bits) -> Check:
    rs = find_roots(poly_in_p("directed", 2, 1), bits)
    want = sorted([0, 0, 2**0.5, -(2**0.5)])
    got = sorted(complex(z).real for z in rs.roots)
    err = max(abs(a - b) for a, b in zip(got, want))
    exact = UniPoly([0, 0, 2, 0, -1])
    ok = poly_in_p("directed", 2, 1) == exact and err < 1e-15 and rs.max_residual() <= 1e-20
    return Check("zeros_anchor", ok, f"roots {', '.join(f'{x:.15g}' for x in got)}")


def run_checks(seed: int = 20240601, quick: bool = False, precision_bits: int = 256) -> list[Check]:
    """Run the verification suite; ``quick`` shrinks the random sample sizes."""
    rng = random.Random(seed)
    k = 3 if quick else 15
    steps = [
        lambda: _mapping(rng),
        lambda: _oracle_equivalence(rng, k),
        lambda: _cross_oracle(rng, k),
        lambda: _printed_gf(rng, k),
        lambda: _closed_forms(rng, k),
        lambda: _zeros_anchor(precision_bits),
    ]
    out = []
    for step in steps:
        t0 = time.perf_counter()
        c = step()
        c.seconds = round(time.perf_counter() - t0, 3)
        out.append(c)
    return out
