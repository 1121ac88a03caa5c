"""Acceptance criteria 1-10, one test each, at the stated tolerances.

Every test prints a single ``CRITERION k: PASS|FAIL`` line with the measured
quantities before asserting.
"""

import cmath
import csv
import io
import math
import random
import time
from fractions import Fraction

import gmpy2
import numpy as np
import pytest

from relladder import (
    LadderConfig,
    Preset,
    asymptotic_loci,
    closed_form_directed,
    closed_form_undirected_perfect,
    critical_predicate,
    critical_rho,
    expand_graph,
    failure_frequency,
    find_roots,
    gf_extract,
    limit_curve,
    oracle_enumerate,
    poly_in_p,
    real_accumulation,
    rel2,
    rel2_sequence,
    segment_endpoints_directed,
)
from relladder.ladder import EDGE_FIELDS, REV_FIELDS
from relladder.reference import angele_directed_gf, angele_undirected_gf
from relladder.verify import random_config, swap_destination
from relladder.zeros import write_roots_csv


@pytest.fixture
def report(capsys):
    def _report(k, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return _report


def _free(graph):
    return [c for c in graph.components() if graph.reliability(c) != 1]


def _limit_components(rng, cfg, limit=24):
    """Pin randomly chosen components to 0 or 1 until at most ``limit`` remain live."""
    keys = [k for k in cfg.components() if cfg.get(k) not in (0, 1)]
    rng.shuffle(keys)
    while len(_free(expand_graph(cfg))) > limit:
        cfg = cfg.with_value(keys.pop(), Fraction(rng.randint(0, 1)))
    return cfg


def test_criterion_01_oracle_equivalence(report):
    rng = random.Random(101)
    t0 = time.perf_counter()
    counts = {}
    for preset in Preset:
        ok = 0
        for _ in range(100):
            cfg = _limit_components(rng, random_config(rng, preset, rng.choice((1, 2, 3))))
            ok += rel2(cfg) == oracle_enumerate(expand_graph(cfg))
        counts[preset.value] = ok
    elapsed = time.perf_counter() - t0
    passed = all(v == 100 for v in counts.values()) and elapsed <= 120
    detail = ", ".join(f"{k} {v}/100" for k, v in counts.items())
    assert report(1, passed, f"exact matches: {detail}; {elapsed:.1f} s (limit 120 s)")


def test_criterion_02_general_directed_float(report):
    rng = random.Random(202)
    t0 = time.perf_counter()
    worst = 0.0
    sizes = set()
    base = LadderConfig.uniform("general_directed", 2, 0.5, 1.0)
    for _ in range(50):
        cfg = base.map_values(lambda k, v: 1.0 if k[0] in ("S", "T") else rng.uniform(0.0, 1.0))
        g = expand_graph(cfg)
        sizes.add(len(_free(g)))
        worst = max(worst, abs(rel2(cfg) - oracle_enumerate(g, exact=False)))
    elapsed = time.perf_counter() - t0
    passed = worst <= 1e-12 and sizes == {22} and elapsed <= 600
    assert report(2, passed, f"max |rel2 - oracle| = {worst:.2e} (tol 1e-12), components {sorted(sizes)}, {elapsed:.1f} s")


def test_criterion_03_printed_gf(report):
    rng = random.Random(303)
    mismatches = 0
    first = {p.value: 0 for p in Preset}
    for _ in range(20):
        dp, dr = rng.randint(2, 60), rng.randint(2, 60)
        p, rho = Fraction(rng.randint(1, dp - 1), dp), Fraction(rng.randint(1, dr - 1), dr)
        for preset, ref in (("angele_directed", angele_directed_gf), ("angele_undirected", angele_undirected_gf)):
            gf = gf_extract(preset, p, rho)
            mismatches += (gf.N, gf.D) != ref(p, rho)
        for preset in Preset:
            first[preset.value] += gf_extract(preset, p, rho).series(2)[1] == p * rho**2
    passed = mismatches == 0 and all(v == 20 for v in first.values())
    detail = ", ".join(f"{k} {v}/20" for k, v in first.items())
    assert report(3, passed, f"printed N/D mismatches {mismatches}/40; z^1 = p rho^2: {detail}")


def test_criterion_04_closed_form_spectra(report):
    rng = random.Random(404)
    worst_d = worst_u = 0.0
    for _ in range(50):
        p, rho = rng.random(), rng.random()
        for preset, r, form in (
            ("angele_directed", rho, closed_form_directed(p, rho)),
            ("angele_undirected", 1.0, closed_form_undirected_perfect(p)),
        ):
            exact = rel2_sequence(LadderConfig.uniform(preset, 50, Fraction(p), Fraction(r)))
            err = max(abs(complex(form.value(n)).real - float(exact[n - 1])) / float(exact[n - 1]) for n in range(2, 51))
            if preset == "angele_directed":
                worst_d = max(worst_d, err)
            else:
                worst_u = max(worst_u, err)
    passed = worst_d <= 1e-10 and worst_u <= 1e-10
    assert report(4, passed, f"max relative error n=2..50: directed {worst_d:.2e}, undirected rho=1 {worst_u:.2e} (tol 1e-10)")


def test_criterion_05_frequency(report):
    rng = random.Random(505)
    worst = 0.0
    done = 0
    while done < 50:
        preset = rng.choice(list(Preset))
        cfg = random_config(rng, preset, rng.choice((1, 2, 3, 4)), exact=False)
        if rel2(cfg) == 0:
            continue
        done += 1
        rates = {k: rng.uniform(0.0, 0.1) for k in cfg.components()}
        nu = failure_frequency(cfg, rates).frequency
        h = 1e-4
        fd = 0.0
        for k in cfg.components():
            v = cfg.get(k)
            lo, hi = max(v - h, 0.0), min(v + h, 1.0)
            fd += rates[k] * v * (rel2(cfg.with_value(k, hi)) - rel2(cfg.with_value(k, lo))) / (hi - lo)
        worst = max(worst, abs(nu - fd) / max(abs(fd), 1e-300))
    exact_ok = 0
    for _ in range(20):
        p, rho = Fraction(rng.randint(1, 20), 20), Fraction(rng.randint(1, 20), 20)
        le, ln = Fraction(rng.randint(0, 50), 1000), Fraction(rng.randint(0, 50), 1000)
        cfg = LadderConfig.uniform("angele_directed", 1, p, rho)
        rates = {k: (ln if k[0] in ("S", "T") else le) for k in cfg.components()}
        exact_ok += failure_frequency(cfg, rates).frequency == p * rho**2 * (le + 2 * ln)
    passed = worst <= 1e-6 and exact_ok == 20
    assert report(5, passed, f"max relative deviation from finite differences {worst:.2e} (tol 1e-6); n=1 exact identity {exact_ok}/20")


def test_criterion_06_zeros_anchor(report):
    rs = find_roots(poly_in_p("directed", 2, 1), 256)
    with gmpy2.context(gmpy2.get_context(), precision=256):
        s2 = gmpy2.sqrt(gmpy2.mpfr(2))
        want = [-s2, gmpy2.mpfr(0), gmpy2.mpfr(0), s2]
        got = sorted(rs.roots, key=lambda z: float(z.real))
        err = max(float(abs(z - w)) for z, w in zip(got, want))
    passed = len(rs.roots) == 4 and err <= 1e-20
    assert report(6, passed, f"roots {[f'{float(z.real):+.15f}' for z in got]}, max |error| {err:.2e} (tol 1e-20) at {rs.precision_bits} bits")


def test_criterion_07_critical_values(report):
    t0 = time.perf_counter()
    rc_u = critical_rho("undirected")
    rc_d = critical_rho("directed")
    curve = limit_curve("undirected", Fraction(8, 9), region=(0.5, 2.5, -1.0, 1.0), grid_resolution=121)
    hits = curve.real_axis_hits()
    gap = min(abs(x - 1.5) for x in hits) if hits else math.inf
    elapsed = time.perf_counter() - t0
    passed = abs(rc_u - 8 / 9) <= 1e-3 and abs(rc_d - 0.51242) <= 5e-4 and gap <= 1e-6 and elapsed <= 600
    assert report(
        7,
        passed,
        f"undirected rho_c {rc_u:.10f} (8/9 +- 1e-3), directed rho_c {rc_d:.8f} (0.51242 +- 5e-4), "
        f"real-axis meeting at 8/9: |p - 3/2| = {gap:.1e}; {elapsed:.1f} s",
    )


def test_criterion_08_asymptotic_loci(report):
    rho = Fraction(1, 10**4)
    lo, hi = segment_endpoints_directed(rho)
    loci = asymptotic_loci("directed", 1e-4)
    seg_err = max(abs(lo - loci["p_minus"]) / loci["p_minus"], abs(hi - loci["p_plus"]) / loci["p_plus"])
    circle = {}
    for case in ("directed", "undirected"):
        radius = asymptotic_loci(case, 1e-4)["circle_radius"]
        roots = find_roots(poly_in_p(case, 40, rho), 256).as_complex()
        mods = [abs(z) for z in roots if z != 0 and abs(cmath.phase(z)) > 0.3]
        circle[case] = (abs(float(np.median(mods)) - radius) / radius, max(abs(m - radius) / radius for m in mods), radius)
    passed = seg_err <= 0.02 and all(v[0] <= 0.05 for v in circle.values())
    detail = (
        f"directed endpoints ({lo:.4f}, {hi:.4f}) vs ({loci['p_minus']:.4f}, {loci['p_plus']:.4f}): {seg_err:.2%} (tol 2%); "
        + "; ".join(f"{k} circle median modulus off {v[0]:.2%} of {v[2]:.3f} (tol 5%, max single root {v[1]:.2%})" for k, v in circle.items())
    )
    assert report(8, passed, detail)


PANELS = [(case, rho) for case in ("directed", "undirected") for rho in (Fraction(1), Fraction(9, 10), Fraction(1, 10))]


def _read_roots(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return np.array([complex(float(r["re"]), float(r["im"])) for r in rows])


def test_criterion_09_zero_set_panels(report, tmp_path):
    t0 = time.perf_counter()
    rc_d = 0.51242
    lines = []
    passed = True
    for case, rho in PANELS:
        rs = find_roots(poly_in_p(case, 50, rho), 256, n=50, rho=rho)
        path = tmp_path / f"{case}_{rho.numerator}_{rho.denominator}.csv"
        with open(path, "w", newline="") as fh:
            write_roots_csv(rs, fh)
        z = _read_roots(path.read_text())
        z = z[z != 0]
        acc = real_accumulation(case, rho)
        segment = bool(acc.segments)
        on_segment = 0
        if segment:
            a, b = acc.segments[0]
            on_segment = int(np.sum((np.abs(z.imag) < 0.05) & (z.real > a - 0.05) & (z.real < b + 0.05)))
        R = float(np.max(np.abs(z))) + 0.5
        curve = limit_curve(case, rho, region=(-R, R, -R, R), grid_resolution=241)
        off_axis = z[np.abs(z.imag) > 0.05]
        med = float(np.median([curve.distance(w) for w in off_axis]))
        closed = len(off_axis) >= 80 and med < 0.05
        ok = segment and on_segment >= 5 and closed
        if case == "directed":
            punctured = critical_predicate(case, float(rho))
            ok &= punctured == (float(rho) < rc_d)
            extra = f", punctured {punctured}"
        else:
            extra = ""
        passed &= ok
        lines.append(
            f"{case} rho={rho}: segment {'yes' if segment else 'no'} ({on_segment} roots on it), "
            f"closed branch {'yes' if closed else 'no'} ({len(off_axis)} roots, median distance {med:.3f}){extra}"
        )
    elapsed = time.perf_counter() - t0
    passed &= elapsed <= 900
    assert report(9, passed, "; ".join(lines) + f"; {elapsed:.0f} s (limit 900 s)")


def _forward_only(cfg):
    return [c.replace(**{f: 0 for f in REV_FIELDS}) for c in cfg.cells]


def test_criterion_10_property_suite(report):
    rng = random.Random(1010)
    N = 200
    fails = dict.fromkeys(["affinity", "monotonicity", "range", "S<->T symmetry", "undirected recovery", "directed <= undirected"], 0)
    for _ in range(N):
        cfg = random_config(rng, rng.choice(list(Preset)), rng.choice((1, 2, 3)))
        key = rng.choice(cfg.components())
        x = Fraction(rng.randint(0, 12), 12)
        lo, hi = rel2(cfg.with_value(key, 0)), rel2(cfg.with_value(key, 1))
        fails["affinity"] += rel2(cfg.with_value(key, x)) != lo + x * (hi - lo)
        a, b = sorted([Fraction(rng.randint(0, 12), 12) for _ in range(2)])
        fails["monotonicity"] += rel2(cfg.with_value(key, a)) > rel2(cfg.with_value(key, b))
        fails["range"] += not 0 <= rel2(cfg) <= 1

        sym = random_config(rng, rng.choice((Preset.GENERAL_DIRECTED, Preset.UNDIRECTED)), rng.choice((1, 2, 3)))
        fails["S<->T symmetry"] += rel2(swap_destination(sym)) != rel2(sym)

        und = random_config(rng, Preset.UNDIRECTED, rng.choice((1, 2)))
        tied = [c.replace(**{f + "_rev": getattr(c, f) for f in EDGE_FIELDS}) for c in und.cells]
        directed = LadderConfig.from_cells(Preset.GENERAL_DIRECTED, tied, und.destination)
        fails["undirected recovery"] += rel2(directed) != oracle_enumerate(expand_graph(und))

        src = random_config(rng, rng.choice((Preset.GENERAL_DIRECTED, Preset.ANGELE_DIRECTED)), rng.choice((1, 2, 3)))
        fwd = _forward_only(src)
        partner = Preset.UNDIRECTED if src.preset is Preset.GENERAL_DIRECTED else Preset.ANGELE_UNDIRECTED
        d = rel2(LadderConfig.from_cells(src.preset, fwd, src.destination))
        u = rel2(LadderConfig.from_cells(partner, fwd, src.destination))
        fails["directed <= undirected"] += d > u
    passed = not any(fails.values())
    detail = ", ".join(f"{k} {N - v}/{N}" for k, v in fails.items())
    assert report(10, passed, detail)
