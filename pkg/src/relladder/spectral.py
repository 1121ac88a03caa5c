"""Generating functions, eigenvalue forms and failure frequency of uniform ladders.

For a uniform ladder (every edge ``p``, every node ``rho``) the sequence
``R_n`` obeys a linear recurrence, so ``sum R_n z**n = N(z) / D(z)`` and
``R_n = sum_k alpha_k * zeta_k**n`` where the ``zeta_k`` are the reciprocal
roots of ``D``.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegenerateSpectrum, NoRecurrence, SingularAmplitude, ZeroAvailability
from .ladder import LadderConfig, Preset, as_preset
from .scalars import Dual, UniPoly, _sqrt, berlekamp_massey, interpolate, poly_mul, to_fraction
from .transfer import rel2, rel2_gradient, rel2_sequence

__all__ = [
    "RationalGF",
    "SpectralForm",
    "FrequencyResult",
    "gf_extract",
    "closed_form_directed",
    "closed_form_undirected_perfect",
    "numeric_spectrum",
    "spectral_form",
    "dominant_eigenvalue",
    "failure_frequency",
    "asymptotic_rate",
    "RecurrenceFamily",
    "recurrence_family",
    "gf_in_p",
]

DEGENERACY_TOL = 1e-9


def _dim(preset: Preset) -> int:
    return 3 if preset is Preset.ANGELE_DIRECTED else 5


@dataclass(frozen=True)
class RationalGF:
    """``N(z) / D(z)`` with ``D(0) = 1``.

    The constant term of the series is the value the recurrence extrapolates
    back to ``n = 0``; coefficients ``n >= 1`` are the reliabilities.
    """

    N: UniPoly
    D: UniPoly
    order: int = 0

    def series(self, terms: int) -> list:
        """First ``terms`` power-series coefficients (index 0 included)."""
        out = []
        d = self.D
        for k in range(terms):
            acc = self.N[k]
            for j in range(1, min(k, d.degree) + 1):
                acc = acc - d[j] * out[k - j]
            out.append(acc / d[0] if d[0] != 1 else acc)
        return out


def gf_extract(preset, p, rho) -> RationalGF:
    """Exact generating function at rational ``(p, rho)``.

    Reliabilities for ``n = 1 .. 2*dim+2`` are computed in exact rationals,
    the minimal recurrence is found by Berlekamp-Massey and the numerator
    follows from truncating ``D(z) * series``.
    """
    preset = as_preset(preset)
    p, rho = to_fraction(p), to_fraction(rho)
    dim = _dim(preset)
    terms = 2 * dim + 2
    seq = rel2_sequence(LadderConfig.uniform(preset, terms, p, rho))
    D, order = berlekamp_massey(seq)
    if order > dim:
        raise NoRecurrence(f"recurrence order {order} exceeds transfer dimension {dim}")
    shifted = UniPoly([0] + list(seq))
    P = poly_mul(D, shifted).truncate(order + 1)
    c0 = Fraction(0)
    if D.degree == order and order > 0:
        c0 = -P[order] / D[order]
    N = (P + D * c0).truncate(order)
    if D.degree < order:
        N = (P + D * c0).truncate(order + 1)
    gf = RationalGF(N, D, order)
    if gf.series(terms + 1)[1:] != list(seq):
        raise NoRecurrence("extracted generating function does not reproduce the sequence")
    return gf


@dataclass
class SpectralForm:
    """``R_n = sum(alpha * zeta**n)``, valid for ``n >= min_n``."""

    eigenvalues: list
    amplitudes: list
    min_n: int = 2

    def value(self, n: int):
        acc = 0
        for a, z in zip(self.amplitudes, self.eigenvalues):
            acc = acc + a * z**n
        return acc

    def leading(self):
        """``(alpha_+, zeta_+)`` for the eigenvalue of largest modulus."""
        k = max(range(len(self.eigenvalues)), key=lambda i: abs(_val(self.eigenvalues[i])))
        return self.amplitudes[k], self.eigenvalues[k]


def _val(x):
    return x.value if isinstance(x, Dual) else x


def closed_form_directed(p, rho, tol: float = 1e-14) -> SpectralForm:
    """Two-eigenvalue form of the directed Angele ladder.

    Accepts floats, complex numbers or :class:`Dual` values.
    """
    q = 2 - 4 * p + p * p
    disc = 4 - 4 * p * rho * (2 - 2 * p + p * p) + p * p * rho * rho * q * q
    if abs(_val(disc)) < tol:
        raise DegenerateSpectrum("the two eigenvalues coincide")
    root = _sqrt(disc)
    half = p * rho / 2
    zp = half * (2 + p * rho * q + root)
    zm = half * (2 + p * rho * q - root)
    ratio = (2 - p * rho * q) / root
    ap = rho / 4 * (1 + ratio)
    am = rho / 4 * (1 - ratio)
    return SpectralForm([zp, zm], [ap, am])


def closed_form_undirected_perfect(p, tol: float = 1e-14) -> SpectralForm:
    """Two-eigenvalue form of the undirected Angele ladder with perfect nodes."""
    A = 4 - 8 * p + 36 * p**2 - 100 * p**3 + 128 * p**4 - 76 * p**5 + 17 * p**6
    B = 2 - 10 * p + 38 * p**2 - 59 * p**3 + 40 * p**4 - 10 * p**5
    denom_poly = (1 - p) ** 2 * (1 - p + p**2) ** 2
    if abs(_val(denom_poly)) < tol:
        raise SingularAmplitude("amplitudes are singular at p = 1; there R_n = 1 for every n")
    if abs(_val(A)) < tol:
        raise DegenerateSpectrum("the two eigenvalues coincide")
    root = _sqrt(A)
    base = 2 + 2 * p - 6 * p**2 + 3 * p**3
    zp = p / 2 * (base + root)
    zm = p / 2 * (base - root)
    lin = 1 - 4 * p + 2 * p**2
    den = 4 * denom_poly * root
    # the sign of B flips between the two amplitudes, not that of the root term
    s_plus, s_minus = lin * root + B, lin * root - B
    # s_plus * s_minus = lin^2 A - B^2 = -8 p^2 (2p - 3)^2 (1-p)^2 (1-p+p^2)^2; near p = 1
    # s_plus cancels, so the smaller of the two is taken from the product
    prod = -8 * p**2 * (2 * p - 3) ** 2 * denom_poly
    if abs(_val(s_plus)) < abs(_val(s_minus)):
        s_plus = prod / s_minus
    elif _val(s_plus) != 0:
        s_minus = prod / s_plus
    return SpectralForm([zp, zm], [s_plus / den, s_minus / den])


def _partial_fractions(N_coeffs, D_coeffs, tol=DEGENERACY_TOL):
    """Eigenvalues and amplitudes of ``N/D`` (numeric coefficient lists)."""
    D = [complex(c) for c in D_coeffs]
    while len(D) > 1 and D[-1] == 0:
        D.pop()
    deg = len(D) - 1
    if deg == 0:
        return [], []
    # reciprocal roots of D are the roots of z^deg D(1/z)
    zetas = list(np.roots(D))
    for i in range(deg):
        for j in range(i + 1, deg):
            if abs(zetas[i] - zetas[j]) <= tol * max(1.0, abs(zetas[i])):
                raise DegenerateSpectrum("repeated eigenvalue")
    amps = []
    for k, zk in enumerate(zetas):
        w = 1 / zk
        num = sum(complex(c) * w**i for i, c in enumerate(N_coeffs))
        den = 1
        for j, zj in enumerate(zetas):
            if j != k:
                den *= 1 - zj * w
        amps.append(num / den)
    return zetas, amps


def _realify(xs, tol=1e-13):
    out = []
    for x in xs:
        if abs(x.imag) <= tol * max(1.0, abs(x)):
            out.append(x.real)
        else:
            out.append(x)
    return out


def numeric_spectrum(preset, p, rho) -> SpectralForm:
    """Eigenvalues and amplitudes from the poles of the exact generating function."""
    gf = gf_extract(preset, p, rho)
    zetas, amps = _partial_fractions([float(c) for c in gf.N], [float(c) for c in gf.D])
    order = sorted(range(len(zetas)), key=lambda k: -abs(zetas[k]))
    return SpectralForm(_realify([zetas[k] for k in order]), _realify([amps[k] for k in order]))


def spectral_form(preset, p, rho) -> SpectralForm:
    """Closed form where one exists, otherwise the numeric decomposition."""
    preset = as_preset(preset)
    if preset is Preset.ANGELE_DIRECTED:
        return closed_form_directed(p, rho)
    if preset is Preset.ANGELE_UNDIRECTED and rho == 1:
        return closed_form_undirected_perfect(p)
    return numeric_spectrum(preset, p, rho)


def dominant_eigenvalue(preset, p, rho):
    """``zeta_+``, the largest-modulus reciprocal pole of the generating function.

    Needs no amplitudes, so it is defined where the spectral form is not
    (repeated eigenvalues, ``p = 1``).  Returns 0 when ``R_n`` vanishes.
    """
    gf = gf_extract(preset, to_fraction(p), to_fraction(rho))
    D = [float(c) for c in gf.D]
    while len(D) > 1 and D[-1] == 0:
        D.pop()
    if len(D) == 1:
        return 0.0
    roots = np.roots(D)
    z = max(roots, key=abs)
    return _realify([complex(z)])[0]


# --- exact recurrence coefficients as polynomials ------------------------


def _sample_points(count, rng, avoid=()):
    seen = set(avoid)
    out = []
    while len(out) < count:
        x = Fraction(rng.randint(1, 400), rng.randint(1, 60))
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _generic_order(preset: Preset) -> int:
    rng = random.Random(7)
    orders = []
    for _ in range(3):
        p, r = _sample_points(2, rng)
        orders.append(gf_extract(preset, p, r).order)
    return max(orders)


@functools.lru_cache(maxsize=None)
def gf_in_p(preset, rho) -> tuple[list[UniPoly], list[UniPoly]]:
    """Generating-function coefficients as exact polynomials in ``p``.

    Returns ``(N, D)`` where ``N[k]`` and ``D[k]`` are the coefficients of
    ``z**k`` at the fixed rational node reliability ``rho``.  Obtained by
    interpolation over sample values of ``p`` and certified on fresh points.
    """
    preset = as_preset(preset)
    rho = to_fraction(rho)
    dim = _dim(preset)
    rng = random.Random(hash((preset.value, rho)) & 0xFFFF)
    order = max(gf_extract(preset, p, rho).order for p in _sample_points(3, rng))
    need = 5 * dim + 3
    ps, Ns, Ds = [], [], []
    for p in _sample_points(4 * need, rng):
        gf = gf_extract(preset, p, rho)
        if gf.order != order:
            continue
        ps.append(p)
        Ns.append(gf.N)
        Ds.append(gf.D)
        if len(ps) == need:
            break
    width = order + 1
    N = [interpolate(ps, [g[k] for g in Ns]) for k in range(width)]
    D = [interpolate(ps, [g[k] for g in Ds]) for k in range(width)]
    for p in _sample_points(2, rng, avoid=ps):
        gf = gf_extract(preset, p, rho)
        if gf.order == order and (
            [c(p) for c in D] != [gf.D[k] for k in range(width)]
            or [c(p) for c in N] != [gf.N[k] for k in range(width)]
        ):
            raise NoRecurrence("polynomial interpolation of the recurrence failed to certify")
    return N, D


class RecurrenceFamily:
    """Recurrence denominator ``D(z; p, rho)`` with exact bivariate coefficients.

    ``coeffs[k]`` is a 2-D array (object dtype, Fractions) with
    ``D_k(p, rho) = sum coeffs[k][i, j] * p**i * rho**j``.
    """

    def __init__(self, preset, coeffs):
        self.preset = as_preset(preset)
        self.coeffs = coeffs
        self._float = [np.array(c, dtype=float) for c in coeffs]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def at_rho(self, rho) -> list[UniPoly]:
        """Coefficients ``D_k`` as exact polynomials in ``p``."""
        rho = to_fraction(rho)
        out = []
        for c in self.coeffs:
            out.append(UniPoly([sum(c[i, j] * rho**j for j in range(c.shape[1])) for i in range(c.shape[0])]))
        return out

    def char_poly(self, p, rho) -> np.ndarray:
        """Monic characteristic coefficients ``[1, D_1, ..., D_L]`` at numeric points.

        ``p`` may be an array (real or complex); the result then has a
        trailing axis of length ``L + 1``.
        """
        p = np.asarray(p)
        out = [np.polynomial.polynomial.polyval2d(p, np.full(p.shape, rho, dtype=float), c) for c in self._float]
        return np.stack(out, axis=-1)

    def eigenvalues(self, p, rho) -> np.ndarray:
        """Eigenvalues at every ``p`` (array), sorted by decreasing modulus."""
        cp = np.atleast_1d(self.char_poly(np.asarray(p, dtype=complex), rho))
        L = self.order
        flat = cp.reshape(-1, L + 1)
        comp = np.zeros((flat.shape[0], L, L), dtype=complex)
        comp[:, 0, :] = -flat[:, 1:]
        for i in range(1, L):
            comp[:, i, i - 1] = 1
        ev = np.linalg.eigvals(comp)
        idx = np.argsort(-np.abs(ev), axis=-1, kind="stable")
        ev = np.take_along_axis(ev, idx, axis=-1)
        return ev.reshape(cp.shape[:-1] + (L,))


@functools.lru_cache(maxsize=None)
def recurrence_family(preset) -> RecurrenceFamily:
    """Bivariate recurrence coefficients, by interpolation in ``p`` then ``rho``."""
    preset = as_preset(preset)
    dim = _dim(preset)
    rng = random.Random(11)
    rhos = []
    per_rho = []
    need = 2 * dim + 2
    order = None
    for rho in _sample_points(4 * need, rng):
        _, D = gf_in_p(preset, rho)
        if order is None:
            order = len(D) - 1
        if len(D) - 1 != order:
            continue
        rhos.append(rho)
        per_rho.append(D)
        if len(rhos) == need:
            break
    coeffs = []
    for k in range(order + 1):
        pdeg = max(per_rho[j][k].degree for j in range(len(rhos)))
        rows = []
        for i in range(pdeg + 1):
            poly = interpolate(rhos, [per_rho[j][k][i] for j in range(len(rhos))])
            rows.append(list(poly.coeffs))
        width = max([len(r) for r in rows] + [1])
        arr = np.empty((max(pdeg + 1, 1), width), dtype=object)
        arr[:] = Fraction(0)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                arr[i, j] = v
        coeffs.append(arr)
    fam = RecurrenceFamily(preset, coeffs)
    check_rho = _sample_points(1, rng, avoid=rhos)[0]
    for k, poly in enumerate(gf_in_p(preset, check_rho)[1]):
        if fam.at_rho(check_rho)[k] != poly:
            raise NoRecurrence("bivariate interpolation of the recurrence failed to certify")
    return fam


# --- failure frequency ---------------------------------------------------


@dataclass
class FrequencyResult:
    availability: object
    frequency: object
    rate: object = None
    terms: dict = field(default_factory=dict)


def failure_frequency(config: LadderConfig, rates) -> FrequencyResult:
    """Steady-state failure frequency ``sum_i lambda_i p_i dA/dp_i`` and rate.

    ``rates`` maps component keys ``(field, cell)`` to a failure rate, or to
    a ``(failure_rate, repair_rate)`` pair of which only the failure rate is
    used.
    """
    grad = rel2_gradient(config)
    missing = [k for k in grad if k not in rates]
    if missing:
        raise ValueError(f"no rate given for components {missing}")
    A = rel2(config)
    nu = 0
    terms = {}
    for key, g in grad.items():
        lam = rates[key]
        if isinstance(lam, (tuple, list)):
            lam = lam[0]
        t = lam * config.get(key) * g
        terms[key] = t
        nu = nu + t
    if A == 0:
        raise ZeroAvailability("availability is zero; the failure rate is undefined", nu=nu)
    return FrequencyResult(A, nu, nu / A, terms)


def _spectral_dual(preset: Preset, p, rho) -> SpectralForm:
    """Spectral form with eigenvalues and amplitudes as duals in ``p``."""
    if preset is Preset.ANGELE_DIRECTED:
        return closed_form_directed(Dual(float(p), 1.0), float(rho))
    if preset is Preset.ANGELE_UNDIRECTED and rho == 1 and abs(1 - p) > 1e-3:
        # closed-form derivatives lose accuracy as p -> 1
        return closed_form_undirected_perfect(Dual(float(p), 1.0))
    N, D = gf_in_p(preset, rho)
    Dv = [complex(float(c(Fraction(p)))) for c in D]
    Dd = [float(c.derivative()(Fraction(p))) for c in D]
    Nd = [Dual(float(c(Fraction(p))), float(c.derivative()(Fraction(p)))) for c in N]
    zetas, _ = _partial_fractions([0], Dv)
    duals = []
    for z in zetas:
        # D(1/zeta) = 0  ->  F(zeta) = sum D_k zeta^(L-k) = 0 with L = deg D
        L = len(Dv) - 1
        while L > 0 and Dv[L] == 0:
            L -= 1
        F_z = sum(Dv[k] * (L - k) * z ** (L - k - 1) for k in range(L))
        F_p = sum(Dd[k] * z ** (L - k) for k in range(L + 1))
        duals.append(Dual(z, -F_p / F_z))
    amps = []
    for k, zk in enumerate(duals):
        w = 1 / zk
        num = 0
        for i, c in enumerate(Nd):
            num = num + c * w**i
        den = Dual(1.0, 0.0)
        for j, zj in enumerate(duals):
            if j != k:
                den = den * (1 - zj * w)
        amps.append(num / den)
    return SpectralForm(duals, amps)


def asymptotic_rate(preset, p, rho, lam) -> tuple[float, float]:
    """``(intercept, slope)`` of the large-``n`` failure rate ``intercept + n * slope``.

    Only edges fail (rate ``lam``); ``slope = lam * dln(zeta_+)/dln(p)`` and
    ``intercept = lam * dln(alpha_+)/dln(p)``.
    """
    preset = as_preset(preset)
    if lam == 0:
        return 0.0, 0.0
    form = _spectral_dual(preset, p, rho)
    a, z = form.leading()
    pf = float(p)
    slope = lam * pf * z.deriv / z.value
    intercept = lam * pf * a.deriv / a.value
    return _real(intercept), _real(slope)


def _real(x):
    if isinstance(x, complex):
        if abs(x.imag) > 1e-9 * max(1.0, abs(x)):
            return x
        return float(x.real)
    return float(x)
