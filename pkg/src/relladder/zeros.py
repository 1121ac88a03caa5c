"""Complex zeros of the uniform-ladder reliability polynomial and their limit set.

``Rel2(n; p, rho)`` at fixed rational ``rho`` is an exact polynomial in ``p``.
Its zeros are found by Aberth-Ehrlich iteration at multiprecision and, as
``n`` grows, accumulate on the set where the two largest eigenvalues of the
recurrence have equal modulus.  That set consists of complex curves plus
segments of the positive real axis where the dominant pair is a complex
conjugate pair.

The plain strings ``"directed"`` and ``"undirected"`` used throughout refer to
the uniform Angele ladders (presets ``angele_directed`` /
``angele_undirected``); pass a :class:`Preset` member for the general
ladders.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import numpy as np

from .errors import NoConvergence, NoSegment, NotBracketed
from .ladder import LadderConfig, Preset, as_preset
from .scalars import UniPoly, poly_divmod, poly_gcd, to_fraction
from .spectral import recurrence_family
from .transfer import rel2

__all__ = [
    "RootSet",
    "LimitCurveSample",
    "RealAccumulation",
    "poly_in_p",
    "find_roots",
    "limit_curve",
    "real_accumulation",
    "segment_endpoints_directed",
    "asymptotic_loci",
    "critical_predicate",
    "critical_rho",
    "write_roots_csv",
    "write_curve_csv",
]

RESIDUAL_TARGET = 1e-20
MAX_PRECISION_BITS = 2048
_MODULUS = (1 << 61) - 1


def case_preset(case) -> Preset:
    """Map the plain strings ``"directed"`` / ``"undirected"`` to the Angele presets.

    :class:`Preset` members pass through unchanged.
    """
    if not isinstance(case, Preset) and isinstance(case, str) and case.strip().lower() in ("directed", "undirected"):
        return Preset.ANGELE_DIRECTED if case.strip().lower() == "directed" else Preset.ANGELE_UNDIRECTED
    return as_preset(case)


def _case_name(case) -> str:
    preset = case_preset(case)
    if preset is Preset.ANGELE_DIRECTED:
        return "directed"
    if preset is Preset.ANGELE_UNDIRECTED:
        return "undirected"
    raise ValueError(f"case must be 'directed' or 'undirected', got {case!r}")


# --- exact polynomial in p ---------------------------------------------------


def poly_in_p(preset, n: int, rho, destination: str = "S") -> UniPoly:
    """``Rel2`` of the uniform ladder as an exact polynomial in ``p``.

    Parameters
    ----------
    preset : Preset or str
        Structural preset; ``"directed"`` and ``"undirected"`` select the
        Angele presets.
    n : int
        Ladder length, ``n >= 1``.
    rho : rational
        Node reliability (converted exactly to a Fraction).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rho = to_fraction(rho)
    cfg = LadderConfig.uniform(case_preset(preset), n, UniPoly.x(), rho, destination)
    out = rel2(cfg)
    return out if isinstance(out, UniPoly) else UniPoly([out])


# --- root finding --------------------------------------------------------------


@dataclass
class RootSet:
    """Roots of one polynomial with per-root residual certificates.

    ``residuals[k]`` is ``|P(z_k)| / sum_j |a_j| |z_k|**j``, the backward
    error of the root relative to the coefficient scale.
    """

    roots: list
    residuals: list
    precision_bits: int
    n: int | None = None
    rho: Fraction | None = None

    def __len__(self) -> int:
        return len(self.roots)

    def as_complex(self) -> np.ndarray:
        return np.array([complex(z) for z in self.roots])

    def conjugate_error(self) -> float:
        """Largest distance from a root's conjugate to the nearest root."""
        z = self.as_complex()
        if not len(z):
            return 0.0
        d = np.abs(np.conj(z)[:, None] - z[None, :])
        return float(d.min(axis=1).max())

    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


def _is_squarefree(coeffs: list[Fraction]) -> bool:
    """Cheap sufficient test: gcd(P, P') is trivial modulo a large prime."""
    m = _MODULUS
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    a = [int(c * den) % m for c in coeffs]
    if a[-1] == 0:
        return False
    b = [(k * a[k]) % m for k in range(1, len(a))]

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], m - 2, m)
        while len(a) >= len(b):
            q = a[-1] * inv % m
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                a[shift + j] = (a[shift + j] - q * bj) % m
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) == 1


def _squarefree_factors(P: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``[(F_k, k)]`` with ``P = c * prod F_k**k``."""
    coeffs = [to_fraction(c) for c in P.coeffs]
    if P.degree <= 1 or _is_squarefree(coeffs):
        return [(P, 1)]
    d = P.derivative()
    a = poly_gcd(P, d)
    b = poly_divmod(P, a)[0]
    c = poly_divmod(d, a)[0]
    out = []
    k = 1
    while b.degree > 0:
        e = c - b.derivative()
        f = poly_gcd(b, e) if not e.is_zero() else b.monic()
        if f.degree > 0:
            out.append((f, k))
        b = poly_divmod(b, f)[0]
        c = poly_divmod(e, f)[0] if not e.is_zero() else e
        k += 1
    return out


def _cauchy_bound(coeffs) -> float:
    lead = abs(coeffs[-1])
    deg = len(coeffs) - 1
    return 2 * max(abs(coeffs[deg - k] / lead) ** (1.0 / k) for k in range(1, deg + 1))


def _aberth_float(coeffs_mp, max_iter: int = 2000):
    """Vectorized double-precision stage on a rescaled polynomial.

    Returns starting points for the multiprecision stage; they need not be
    converged (clusters are finished at high precision).
    """
    deg = len(coeffs_mp) - 1
    # scale p = s t so that the geometric mean of root moduli is 1
    s = float(abs(gmpy2.mpfr(coeffs_mp[0].real) / coeffs_mp[-1].real) ** (1.0 / deg))
    if not math.isfinite(s) or s == 0:
        s = 1.0
    logs = [gmpy2.mpc(c) * gmpy2.mpfr(s) ** k for k, c in enumerate(coeffs_mp)]
    big = max(abs(c) for c in logs)
    scaled = np.array([complex(c / big) for c in logs])[::-1]
    radius = _cauchy_bound(list(scaled[::-1]))
    angles = 2 * np.pi * np.arange(deg) / deg + 0.7
    z = radius * np.exp(1j * angles)
    dp = np.polyder(scaled)
    with np.errstate(all="ignore"):
        for _ in range(max_iter):
            pv = np.polyval(scaled, z)
            dv = np.polyval(dp, z)
            ratio = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = ratio / (1.0 - ratio * inv.sum(axis=1))
            if not np.all(np.isfinite(corr)):
                return [complex(radius * s * cmath.exp(1j * a)) for a in angles]
            z = z - corr
            if np.max(np.abs(corr) / np.maximum(np.abs(z), 1.0)) < 1e-14:
                break
    return [complex(w) * s for w in z]


def _aberth_mp(coeffs_mp, start, bits: int, target, max_iter: int = 400):
    """Gauss-Seidel Aberth iteration at ``bits`` of working precision.

    A root is frozen once its correction drops below ``target`` (relative),
    or once its residual reaches the rounding-noise floor of the Horner
    evaluation.  In the latter case the forward error is estimated as
    ``noise / |P'(z)|``; if that exceeds ``target`` the precision is
    insufficient and the second return value is False.
    """
    deg = len(coeffs_mp) - 1
    dcoeffs = [k * coeffs_mp[k] for k in range(1, deg + 1)]
    mags = [abs(c) for c in coeffs_mp]
    z = [gmpy2.mpc(w) for w in start]
    done = [False] * deg
    accurate = [True] * deg
    noise = gmpy2.mpfr(2) ** (-(bits - 12))
    one = gmpy2.mpfr(1)
    for _ in range(max_iter):
        for i in range(deg):
            if done[i]:
                continue
            zi = z[i]
            az = abs(zi)
            pv = coeffs_mp[-1]
            scale = mags[-1]
            for c, m in zip(reversed(coeffs_mp[:-1]), reversed(mags[:-1])):
                pv = pv * zi + c
                scale = scale * az + m
            dv = dcoeffs[-1]
            for c in reversed(dcoeffs[:-1]):
                dv = dv * zi + c
            floor = noise * scale
            if abs(pv) <= floor:
                done[i] = True
                accurate[i] = dv != 0 and floor / abs(dv) <= target * max(one, az)
                continue
            ratio = pv / dv
            acc = gmpy2.mpc(0)
            for j in range(deg):
                if j != i:
                    acc += 1 / (zi - z[j])
            corr = ratio / (1 - ratio * acc)
            z[i] = zi - corr
            if abs(corr) <= target * max(one, abs(z[i])):
                done[i] = True
        if all(done):
            return z, all(accurate)
    return z, False


def _residual(coeffs_mp, z) -> float:
    pv = gmpy2.mpc(0)
    scale = gmpy2.mpfr(0)
    az = abs(z)
    for c in reversed(coeffs_mp):
        pv = pv * z + c
        scale = scale * az + abs(c)
    if scale == 0:
        return 0.0
    return float(abs(pv) / scale)


def find_roots(P: UniPoly, precision_bits: int = 256, n: int | None = None, rho=None) -> RootSet:
    """All complex roots of ``P`` by Aberth-Ehrlich iteration.

    Zero roots are split off exactly, repeated factors are separated with
    Yun's algorithm, and each squarefree factor is solved by a fast
    double-precision pass followed by multiprecision iteration.  Roots are
    required to be accurate to ``2**(-precision_bits / 2)`` relative; when
    cancellation in the polynomial makes that unreachable, the working
    precision is doubled (warm-started from the current roots), up to 2048
    bits.  ``RootSet.precision_bits`` records the working precision used.

    Raises
    ------
    NoConvergence
        If the accuracy or the ``1e-20`` residual certificate cannot be met
        at the precision cap.
    """
    if not isinstance(P, UniPoly):
        P = UniPoly(P)
    if P.degree < 1:
        raise ValueError("find_roots needs a polynomial of degree >= 1")
    rho = None if rho is None else to_fraction(rho)
    v = P.valuation()
    roots = [gmpy2.mpc(0)] * v
    residuals = [0.0] * v
    Q = P.shift_down(v)
    bits_used = precision_bits
    target = gmpy2.mpfr(2) ** (-(precision_bits // 2))
    for factor, mult in _squarefree_factors(Q) if Q.degree > 0 else []:
        zs, bits = _solve_squarefree(factor, precision_bits, target)
        bits_used = max(bits_used, bits)
        with gmpy2.context(gmpy2.get_context(), precision=bits):
            coeffs = [gmpy2.mpc(gmpy2.mpq(to_fraction(c))) for c in factor.coeffs]
            for z in zs:
                res = _residual(coeffs, z)
                if not res <= RESIDUAL_TARGET:
                    raise NoConvergence(f"residual {res:.3g} above target at {bits} bits")
                roots.extend([z] * mult)
                residuals.extend([res] * mult)
    order = sorted(range(len(roots)), key=lambda k: (float(roots[k].real), float(roots[k].imag)))
    return RootSet([roots[k] for k in order], [residuals[k] for k in order], bits_used, n, rho)


def _solve_squarefree(factor: UniPoly, bits: int, target):
    start = None
    while True:
        with gmpy2.context(gmpy2.get_context(), precision=bits):
            coeffs = [gmpy2.mpc(gmpy2.mpq(to_fraction(c))) for c in factor.coeffs]
            if factor.degree == 1:
                return [-coeffs[0] / coeffs[1]], bits
            if start is None:
                start = _aberth_float(coeffs)
            zs, ok = _aberth_mp(coeffs, start, bits, target)
        if ok:
            return zs, bits
        if bits >= MAX_PRECISION_BITS:
            raise NoConvergence(f"Aberth iteration did not reach the accuracy target at {bits} bits")
        start = zs
        bits *= 2


def _real_roots(P: UniPoly, bits: int = 256) -> list[float]:
    """Sorted real roots (each once) of a rational polynomial."""
    if P.degree < 1:
        return []
    rs = find_roots(P, bits)
    out = []
    for z in rs.roots:
        if abs(z.imag) <= gmpy2.mpfr(2) ** (-(bits // 2)) * max(1, abs(z)):
            x = float(z.real)
            if not out or abs(x - out[-1]) > 1e-14 * max(1.0, abs(x)):
                out.append(x)
    return sorted(out)


# --- limit set -------------------------------------------------------------------


def _discriminant(D: list[UniPoly]) -> UniPoly:
    """Discriminant (in lambda) of ``lambda**L + D1 lambda**(L-1) + ... + DL``."""
    L = len(D) - 1
    if L == 1:
        return UniPoly([1])
    if L == 2:
        return D[1] * D[1] - D[2] * 4
    if L == 3:
        b, c, d = D[1], D[2], D[3]
        return b * c * d * 18 - b * b * b * d * 4 + b * b * c * c - c * c * c * 4 - d * d * 27
    raise NotImplementedError("discriminant implemented for recurrences of order <= 3")


def _char_coeffs(preset: Preset, rho) -> list[UniPoly]:
    D = recurrence_family(preset).at_rho(rho)
    while len(D) > 2 and D[-1].is_zero():
        D = D[:-1]
    return D


def _dominant_complex(fam, p, rho) -> np.ndarray:
    ev = fam.eigenvalues(np.asarray(p, dtype=float), rho)
    top = ev[..., 0]
    return np.abs(top.imag) > 1e-9 * np.maximum(np.abs(top), 1e-300)


@dataclass
class RealAccumulation:
    """Part of the limit set on the positive real axis at one ``rho``.

    ``segments`` are intervals where the dominant eigenvalues form a complex
    pair; ``points`` are isolated real points where the two leading
    eigenvalues coincide (a segment shrunk to a point).
    """

    segments: list
    points: list

    @property
    def length(self) -> float:
        return sum(b - a for a, b in self.segments)


def real_accumulation(preset, rho, scan: int = 64) -> RealAccumulation:
    """Accumulation segments and isolated points on ``p > 0``.

    Segment endpoints are real roots of the eigenvalue discriminant (found
    exactly at rational ``rho``) or points where a real eigenvalue overtakes
    the complex pair (found by bisection).
    """
    preset = case_preset(preset)
    rho = to_fraction(rho)
    fam = recurrence_family(preset)
    D = _char_coeffs(preset, rho)
    disc = _discriminant(D)
    roots = [r for r in _real_roots(disc) if r > 0]
    hi = 2 * max(roots + [1.0]) + 1
    cuts = [0.0] + roots + [hi]

    def flag(p):
        return _dominant_complex(fam, p, rho)

    pieces = []
    for lo, up in zip(cuts[:-1], cuts[1:]):
        t = np.linspace(lo, up, scan + 2)[1:-1]
        f = flag(t)
        xs = [lo]
        states = [bool(f[0])]
        for k in range(len(t) - 1):
            if f[k] != f[k + 1]:
                a, b = t[k], t[k + 1]
                for _ in range(60):
                    m = 0.5 * (a + b)
                    if bool(flag(m)) == bool(f[k]):
                        a = m
                    else:
                        b = m
                xs.append(0.5 * (a + b))
                states.append(bool(f[k + 1]))
        xs.append(up)
        for k, s in enumerate(states):
            pieces.append((xs[k], xs[k + 1], s))
    segments = []
    for a, b, s in pieces:
        if not s:
            continue
        if segments and abs(segments[-1][1] - a) <= 1e-14 * max(1.0, a):
            segments[-1] = (segments[-1][0], b)
        else:
            segments.append((a, b))
    points = []
    for r in roots:
        if any(a - 1e-12 <= r <= b + 1e-12 for a, b in segments):
            continue
        ev = fam.eigenvalues(np.array([r]), rho)[0]
        if abs(ev[0] - ev[1]) <= 1e-6 * abs(ev[0]):
            points.append(r)
    return RealAccumulation(segments, points)


@dataclass
class LimitCurveSample:
    """Grid evaluation of the equimodularity gap and located contour points.

    ``gap`` holds ``|lambda_1| - |lambda_2|`` on ``grid``; ``points`` are
    contour points refined on grid edges where the two leading (tracked)
    eigenvalues swap order; ``real`` is the accumulation set on ``p > 0``.
    """

    preset: Preset
    rho: Fraction
    grid: np.ndarray
    gap: np.ndarray
    points: np.ndarray
    tolerance: float
    real: RealAccumulation = field(default_factory=lambda: RealAccumulation([], []))

    def real_axis_hits(self) -> list[float]:
        """Isolated real points and segment endpoints of the contour."""
        hits = list(self.real.points)
        for a, b in self.real.segments:
            hits.extend([a, b])
        return sorted(hits)

    def distance(self, z) -> np.ndarray:
        """Distance from each ``z`` to the nearest contour point or real segment."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        d = np.full(z.shape, np.inf)
        if len(self.points):
            d = np.min(np.abs(z[:, None] - self.points[None, :]), axis=1)
        for a, b in self.real.segments:
            x = np.clip(z.real, a, b)
            d = np.minimum(d, np.abs(z - x))
        for r in self.real.points:
            d = np.minimum(d, np.abs(z - r))
        return d


def _match(pair, ev):
    """Indices in ``ev`` (shape (..., L)) nearest to each member of ``pair``."""
    i1 = np.argmin(np.abs(ev - pair[0][..., None]), axis=-1)
    i2 = np.argmin(np.abs(ev - pair[1][..., None]), axis=-1)
    return i1, i2


def _swapped(pair, ev):
    i1, i2 = _match(pair, ev)
    m1 = np.abs(np.take_along_axis(ev, i1[..., None], axis=-1)[..., 0])
    m2 = np.abs(np.take_along_axis(ev, i2[..., None], axis=-1)[..., 0])
    return (i1 != i2) & (m1 < m2), i1, i2


def limit_curve(preset, rho, region=(-3.0, 5.0, -3.0, 3.0), grid_resolution=241, tolerance: float = 1e-6, steps: int = 48):
    """Sample the curves ``|lambda_1(p)| = |lambda_2(p)|`` in a box of the p-plane.

    Parameters
    ----------
    region : (re_min, re_max, im_min, im_max)
    grid_resolution : int or (int, int)
        Grid points along the real and imaginary directions.
    tolerance : float
        Contour points must satisfy ``gap <= tolerance * |lambda_1|``.

    Notes
    -----
    The two largest eigenvalues at one grid node are continued to the next
    node by nearest matching; an edge is crossed by the contour when their
    order by modulus flips.  Crossings are refined by bisection along the
    edge, continuing the pair from the near end at every step.
    """
    preset = case_preset(preset)
    rho = to_fraction(rho)
    fam = recurrence_family(preset)
    nx, ny = (grid_resolution, grid_resolution) if np.isscalar(grid_resolution) else grid_resolution
    x = np.linspace(region[0], region[1], nx)
    y = np.linspace(region[2], region[3], ny)
    grid = x[None, :] + 1j * y[:, None]
    ev = fam.eigenvalues(grid, rho)
    mods = np.abs(ev)
    gap = mods[..., 0] - mods[..., 1]

    starts, ends, pairs = [], [], []
    for axis in (0, 1):
        sl_a = (slice(None, -1), slice(None)) if axis == 0 else (slice(None), slice(None, -1))
        sl_b = (slice(1, None), slice(None)) if axis == 0 else (slice(None), slice(1, None))
        ea, eb = ev[sl_a], ev[sl_b]
        pair = (ea[..., 0], ea[..., 1])
        hit, _, _ = _swapped(pair, eb)
        starts.append(grid[sl_a][hit])
        ends.append(grid[sl_b][hit])
        pairs.append(np.stack([ea[..., 0][hit], ea[..., 1][hit]], axis=-1))
    a = np.concatenate(starts)
    b = np.concatenate(ends)
    pair = np.concatenate(pairs)
    if len(a):
        p1, p2 = pair[:, 0], pair[:, 1]
        for _ in range(steps):
            m = 0.5 * (a + b)
            em = fam.eigenvalues(m, rho)
            sw, i1, i2 = _swapped((p1, p2), em)
            b = np.where(sw, m, b)
            a = np.where(sw, a, m)
            q1 = np.take_along_axis(em, i1[:, None], axis=-1)[:, 0]
            q2 = np.take_along_axis(em, i2[:, None], axis=-1)[:, 0]
            p1 = np.where(sw, p1, q1)
            p2 = np.where(sw, p2, q2)
        pts = 0.5 * (a + b)
        em = np.abs(fam.eigenvalues(pts, rho))
        ok = (em[:, 0] - em[:, 1]) <= tolerance * em[:, 0]
        pts = pts[ok]
    else:
        pts = np.zeros(0, dtype=complex)
    return LimitCurveSample(preset, rho, grid, gap, pts, tolerance, real_accumulation(preset, rho))


# --- directed segment and asymptotics --------------------------------------------


def _directed_polys(rho) -> tuple[UniPoly, UniPoly]:
    """``(u, A')`` as polynomials in ``p``; eigenvalues are ``p rho (u +- sqrt(A')) / 2``."""
    rho = to_fraction(rho)
    p = UniPoly.x()
    u = 2 + p * rho * (2 - 4 * p + p * p)
    A = u * u - p * rho * (1 - p) * (2 - p) * 8
    return u, A


def segment_endpoints_directed(rho) -> tuple[float, float]:
    """Endpoints of the directed accumulation segment: real roots of ``A'``.

    Among the intervals of ``p > 0`` where ``A' < 0`` (complex eigenvalue
    pair) the longest is returned.

    Raises
    ------
    NoSegment
        If ``A' >= 0`` on the whole positive real axis.
    """
    _, A = _directed_polys(rho)
    roots = [r for r in _real_roots(A) if r > 0]
    best = None
    for lo, up in zip(roots[:-1], roots[1:]):
        mid = to_fraction((lo + up) / 2)
        if A(mid) < 0 and (best is None or up - lo > best[1] - best[0]):
            best = (lo, up)
    if best is None:
        raise NoSegment(f"A' has no negative interval on p > 0 at rho = {float(rho)}")
    return best


def asymptotic_loci(case, rho) -> dict:
    """Small-``rho`` expansions of the segment endpoints and circle radius."""
    name = _case_name(case)
    rho = float(rho)
    if name == "directed":
        base = (2 / rho) ** (1 / 3)
        half = (2 / 3) * (2 / rho) ** (1 / 6)
        shift = 4 / 3
    else:
        s17 = math.sqrt(17)
        base = ((s17 - 3) / (2 * rho)) ** (1 / 3)
        half = math.sqrt((34 - 2 * s17) / 153) * ((s17 - 3) / (2 * rho)) ** (1 / 6)
        shift = 2 * (23 - s17) / 51
    return {"p_minus": base - half + shift, "p_plus": base + half + shift, "circle_radius": base}


# --- critical node reliabilities --------------------------------------------------


def _segment_length(rho) -> float:
    return real_accumulation(Preset.ANGELE_UNDIRECTED, rho).length


def _directed_touch(rho) -> bool:
    """True when the closed curve meets the directed segment.

    The equimodular set is the preimage of the negative real axis under
    ``w = A' / u**2``; complex branches leave the real segment exactly at
    critical points of ``w``, i.e. real roots of ``A'_p u - 2 A' u_p``
    strictly inside an interval where ``A' < 0``.
    """
    u, A = _directed_polys(rho)
    C = A.derivative() * u - A * u.derivative() * 2
    try:
        lo, up = segment_endpoints_directed(rho)
    except NoSegment:
        return False
    span = up - lo
    return any(lo + 1e-9 * span < r < up - 1e-9 * span for r in _real_roots(C))


def critical_predicate(case, rho, h: float = 1e-6) -> bool:
    """Geometric predicate whose flip defines the critical ``rho``.

    undirected
        The positive-real accumulation segment grows with ``rho``
        (``dL/drho > 0``).  The segment length ``L`` has a zero minimum
        where the segment degenerates to a single point.
    directed
        The closed curve meets the accumulation segment.
    """
    name = _case_name(case)
    rho = Fraction(rho).limit_denominator(10**12)
    if name == "undirected":
        hh = Fraction(h).limit_denominator(10**12)
        return _segment_length(rho + hh) > _segment_length(rho - hh)
    return _directed_touch(rho)


def critical_rho(case, lo: float = 0.02, hi: float = 0.98, step: float = 0.02, tol: float = 1e-7) -> float:
    """First ``rho`` (scanning down from ``hi``) where the predicate flips.

    Raises
    ------
    NotBracketed
        If the predicate takes a single value on the scan grid.
    """
    grid = np.arange(hi, lo - 1e-12, -step)
    prev = critical_predicate(case, grid[0])
    for r0, r1 in zip(grid[:-1], grid[1:]):
        cur = critical_predicate(case, r1)
        if cur != prev:
            a, b = float(r1), float(r0)
            while b - a > tol:
                m = 0.5 * (a + b)
                if critical_predicate(case, m) == prev:
                    b = m
                else:
                    a = m
            return 0.5 * (a + b)
        prev = cur
    raise NotBracketed(f"critical predicate for {_case_name(case)} does not change over [{lo}, {hi}]")


# --- CSV ------------------------------------------------------------------------


def write_roots_csv(rootsets, out, digits: int = 30) -> None:
    """Write roots as CSV with columns ``n, rho, re, im, residual``."""
    if isinstance(rootsets, RootSet):
        rootsets = [rootsets]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "rho", "re", "im", "residual"])
    for rs in rootsets:
        rho = "" if rs.rho is None else str(rs.rho)
        for z, res in zip(rs.roots, rs.residuals):
            w.writerow(["" if rs.n is None else rs.n, rho, _fmt(z.real, digits), _fmt(z.imag, digits), f"{res:.3e}"])


def write_curve_csv(sample: LimitCurveSample, out) -> None:
    """Write contour points as CSV with columns ``re, im``.

    Real accumulation segments are emitted as their endpoints and isolated
    points with ``im = 0``.
    """
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["re", "im"])
    for z in sample.points:
        w.writerow([repr(float(z.real)), repr(float(z.imag))])
    for x in sample.real_axis_hits():
        w.writerow([repr(float(x)), "0.0"])


def _fmt(x, digits: int) -> str:
    return gmpy2.mpfr(x).__format__(f".{digits}g")
