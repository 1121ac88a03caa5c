import math
from fractions import Fraction

import numpy as np
import pytest

from relladder import (
    DegenerateSpectrum,
    LadderConfig,
    Preset,
    SingularAmplitude,
    ZeroAvailability,
    asymptotic_rate,
    closed_form_directed,
    closed_form_undirected_perfect,
    dominant_eigenvalue,
    failure_frequency,
    gf_extract,
    recurrence_family,
    rel2,
    rel2_sequence,
    spectral_form,
)
from relladder.reference import angele_directed_gf, angele_undirected_gf
from relladder.verify import random_config


def test_gf_matches_reference_forms():
    for p, r in [(Fraction(1, 3), Fraction(1, 2)), (Fraction(7, 9), Fraction(2, 11))]:
        for preset, ref in (("angele_directed", angele_directed_gf), ("angele_undirected", angele_undirected_gf)):
            gf = gf_extract(preset, p, r)
            assert (gf.N, gf.D) == ref(p, r)


def test_gf_structure():
    gf = gf_extract("angele_directed", Fraction(1, 3), Fraction(1, 2))
    assert gf.D[0] == 1 and gf.D.degree == 2
    assert gf_extract("angele_directed", 0, Fraction(1, 2)).D == 1
    assert gf_extract("angele_directed", 0, Fraction(1, 2)).series(5)[1:] == [0] * 4


@pytest.mark.parametrize("preset", list(Preset))
def test_gf_series_replays_reliabilities(preset):
    p, r = Fraction(3, 5), Fraction(4, 7)
    gf = gf_extract(preset, p, r)
    seq = rel2_sequence(LadderConfig.uniform(preset, 20, p, r))
    assert gf.series(21)[1:] == seq
    assert gf.order <= (3 if preset is Preset.ANGELE_DIRECTED else 5)


def test_directed_closed_form_values():
    form = closed_form_directed(0.9, 1.0)
    zp, zm = form.eigenvalues
    assert zp == pytest.approx(0.999667, abs=1e-6)
    assert zm == pytest.approx(0.160434, abs=5e-7)
    q = 2 - 4 * 0.9 + 0.81
    u = 2 + 0.9 * q
    assert u * u - 8 * 0.9 * 0.1 * 1.1 == pytest.approx(0.869521, abs=1e-6)
    assert form.value(10) == pytest.approx(rel2(LadderConfig.uniform("angele_directed", 10, 0.9, 1)), abs=1e-12)
    one = closed_form_directed(1.0, 1.0)
    assert one.eigenvalues == [1.0, 0.0]
    assert one.value(7) == pytest.approx(1.0)


def test_undirected_closed_form_values():
    form = closed_form_undirected_perfect(0.5)
    want = rel2(LadderConfig.uniform("angele_undirected", 5, 0.5, 1))
    assert form.value(5) == pytest.approx(want, rel=1e-10)
    assert closed_form_undirected_perfect(0.0).eigenvalues == [0.0, 0.0]
    with pytest.raises(SingularAmplitude):
        closed_form_undirected_perfect(1.0)


def test_printed_a_minus_has_the_wrong_sign():
    # the printed amplitudes attach the sign to the root term; only a_- changes
    p = 0.5
    A = 4 - 8 * p + 36 * p**2 - 100 * p**3 + 128 * p**4 - 76 * p**5 + 17 * p**6
    B = 2 - 10 * p + 38 * p**2 - 59 * p**3 + 40 * p**4 - 10 * p**5
    lin = 1 - 4 * p + 2 * p**2
    den = 4 * (1 - p) ** 2 * (1 - p + p**2) ** 2 * math.sqrt(A)
    printed_plus = (B + lin * math.sqrt(A)) / den
    printed_minus = (B - lin * math.sqrt(A)) / den
    a_plus, a_minus = closed_form_undirected_perfect(p).amplitudes
    assert printed_plus == pytest.approx(a_plus, rel=1e-14)
    assert printed_minus == pytest.approx(-a_minus, rel=1e-14)
    assert a_minus == pytest.approx(-2.39800, abs=5e-6)
    zp, zm = closed_form_undirected_perfect(p).eigenvalues
    exact = float(rel2(LadderConfig.uniform("angele_undirected", 5, Fraction(1, 2), 1)))
    assert a_plus * zp**5 + printed_minus * zm**5 != pytest.approx(exact, rel=1e-6)


def test_degenerate_spectrum():
    # the discriminant is a quadratic in rho: p^2 q^2 rho^2 - 4p(2 - 2p + p^2) rho + 4
    p = 0.5
    q = 2 - 4 * p + p * p
    rho = min(np.roots([p * p * q * q, -4 * p * (2 - 2 * p + p * p), 4]))
    with pytest.raises(DegenerateSpectrum):
        closed_form_directed(p, rho)


@pytest.mark.parametrize("preset,rho", [("undirected", Fraction(9, 10)), ("general_directed", Fraction(3, 4))])
def test_numeric_spectrum(preset, rho):
    form = spectral_form(preset, Fraction(2, 3), rho)
    seq = rel2_sequence(LadderConfig.uniform(preset, 30, Fraction(2, 3), rho))
    for n in range(2, 31):
        assert complex(form.value(n)).real == pytest.approx(float(seq[n - 1]), rel=1e-10)


def test_dominant_eigenvalue():
    assert dominant_eigenvalue("angele_directed", 1, 1) == pytest.approx(1.0)
    assert dominant_eigenvalue("angele_undirected", 1, 1) == pytest.approx(1.0)
    assert dominant_eigenvalue("angele_directed", Fraction(9, 10), 1) == pytest.approx(0.999667, abs=1e-6)
    assert dominant_eigenvalue("angele_directed", 0, 1) == 0.0


def test_zeta_plus_nearly_equal_directed_undirected():
    worst = max(
        abs(dominant_eigenvalue("angele_directed", p, 1) - dominant_eigenvalue("angele_undirected", p, 1))
        for p in (Fraction(k, 20) for k in range(21))
    )
    assert worst <= 0.02


def test_recurrence_family_matches_gf():
    fam = recurrence_family("angele_undirected")
    for p, r in [(Fraction(1, 2), Fraction(1, 3)), (Fraction(5, 7), Fraction(9, 10))]:
        D = gf_extract("angele_undirected", p, r).D
        assert [c(p) for c in fam.at_rho(r)] == list(D.coeffs) + [0] * (fam.order - D.degree)


# --- frequency ------------------------------------------------------------


def test_frequency_n1_exact():
    p, r = Fraction(2, 3), Fraction(3, 4)
    le, ln = Fraction(1, 100), Fraction(1, 1000)
    cfg = LadderConfig.uniform("angele_directed", 1, p, r)
    rates = {k: (ln if k[0] in "ST" else le) for k in cfg.components()}
    res = failure_frequency(cfg, rates)
    assert res.frequency == p * r * r * (le + 2 * ln)
    assert res.availability == p * r * r
    assert res.rate == le + 2 * ln


def test_frequency_finite_difference(rng):
    for preset in Preset:
        cfg = random_config(rng, preset, 3, exact=False)
        while rel2(cfg) == 0:
            cfg = random_config(rng, preset, 3, exact=False)
        rates = {k: rng.uniform(0, 0.1) for k in cfg.components()}
        res = failure_frequency(cfg, rates)
        h = 1e-7
        fd = 0.0
        for k in cfg.components():
            v = cfg.get(k)
            lo, hi = max(v - h, 0.0), min(v + h, 1.0)
            d = (rel2(cfg.with_value(k, hi)) - rel2(cfg.with_value(k, lo))) / (hi - lo)
            fd += rates[k] * v * d
        assert res.frequency == pytest.approx(fd, rel=1e-6, abs=1e-15)


def test_frequency_zero_rates_and_zero_availability():
    cfg = LadderConfig.uniform("undirected", 2, 0.7, 0.9)
    assert failure_frequency(cfg, {k: 0.0 for k in cfg.components()}).frequency == 0
    dead = LadderConfig.uniform("undirected", 2, 0.0, 0.9)
    with pytest.raises(ZeroAvailability):
        failure_frequency(dead, {k: 1.0 for k in dead.components()})
    with pytest.raises(ValueError):
        failure_frequency(cfg, {})


def test_frequency_accepts_repair_pairs():
    cfg = LadderConfig.uniform("angele_undirected", 2, 0.8, 1)
    a = failure_frequency(cfg, {k: 0.2 for k in cfg.components()})
    b = failure_frequency(cfg, {k: (0.2, 5.0) for k in cfg.components()})
    assert a.frequency == b.frequency


# --- asymptotic rate --------------------------------------------------------


def test_asymptotic_rate_trivial():
    assert asymptotic_rate("angele_directed", 0.7, 1, 0.0) == (0.0, 0.0)
    slope = asymptotic_rate("angele_directed", 1.0, 1, 1.0)[1]
    assert slope >= 0
    h = 1e-6
    fd = (math.log(dominant_eigenvalue("angele_directed", 1, 1)) - math.log(dominant_eigenvalue("angele_directed", 1 - Fraction(h), 1))) / -math.log(1 - h)
    assert slope == pytest.approx(fd, abs=1e-6)


@pytest.mark.parametrize("preset,rho", [("angele_directed", 0.8), ("angele_undirected", 1), ("undirected", Fraction(9, 10))])
def test_asymptotic_rate_approximates_edge_failure_rate(preset, rho):
    lam, p, n = 0.01, 0.85, 60
    intercept, slope = asymptotic_rate(preset, p, rho, lam)
    cfg = LadderConfig.uniform(preset, n, p, float(rho))
    rates = {k: (0.0 if k[0] in "ST" else lam) for k in cfg.components()}
    rate = failure_frequency(cfg, rates).rate
    assert intercept + n * slope == pytest.approx(rate, rel=1e-8)


def test_slope_finite_difference():
    p, h = 0.8, 1e-6
    slope = asymptotic_rate("angele_directed", p, 1, 1.0)[1]
    f = lambda x: math.log(closed_form_directed(x, 1.0).eigenvalues[0])
    assert slope == pytest.approx((f(p + h) - f(p - h)) / (math.log(p + h) - math.log(p - h)), rel=1e-6)


def test_directed_and_undirected_slopes_are_close():
    worst = 0.0
    for p in np.linspace(0.5, 0.98, 25):
        d = asymptotic_rate("angele_directed", p, 1, 1.0)[1]
        u = asymptotic_rate("angele_undirected", p, 1, 1.0)[1]
        worst = max(worst, abs(d - u) / d)
    assert worst <= 0.2


@pytest.mark.parametrize("p", [0.9972788741721124, 0.999, 0.99999])
def test_undirected_amplitudes_near_one(p):
    form = closed_form_undirected_perfect(p)
    seq = rel2_sequence(LadderConfig.uniform("angele_undirected", 12, Fraction(p), 1))
    for n in range(2, 13):
        assert form.value(n) == pytest.approx(float(seq[n - 1]), rel=1e-12)
