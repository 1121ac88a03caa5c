"""Coefficient arithmetic shared by every numeric path of the package.

The transfer-matrix code only ever uses ``+``, ``-``, ``*`` and the integer
literals 0 and 1, so any type that overloads these operators can flow
through it.  The types actually used are:

* ``float`` for plain evaluation,
* ``fractions.Fraction`` for exact rational arithmetic,
* :class:`Dual` for first-order derivatives,
* :class:`UniPoly` for exact polynomials in one indeterminate,
* ``gmpy2.mpc`` for multiprecision complex root iteration.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Number

from .errors import NoRecurrence

__all__ = [
    "Dual",
    "UniPoly",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "squarefree_part",
    "interpolate",
    "minimal_recurrence",
    "berlekamp_massey",
    "to_fraction",
]


def to_fraction(x) -> Fraction:
    """Exact rational value of an int, Fraction, float or numeric string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


class Dual:
    """First-order dual number ``value + eps * deriv`` with ``eps**2 = 0``.

    Components may be any field element (float, complex, Fraction).
    """

    __slots__ = ("value", "deriv")

    def __init__(self, value, deriv=0):
        self.value = value
        self.deriv = deriv

    @staticmethod
    def _lift(other):
        if isinstance(other, Dual):
            return other
        return Dual(other, 0)

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value + other.value, self.deriv + other.deriv)
        if isinstance(other, Number):
            return Dual(self.value + other, self.deriv)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value - other.value, self.deriv - other.deriv)
        if isinstance(other, Number):
            return Dual(self.value - other, self.deriv)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Number):
            return Dual(other - self.value, -self.deriv)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(
                self.value * other.value,
                self.value * other.deriv + self.deriv * other.value,
            )
        if isinstance(other, Number):
            return Dual(self.value * other, self.deriv * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            if other.value == 0:
                raise ZeroDivisionError("division by a dual with zero value part")
            v = self.value / other.value
            return Dual(v, (self.deriv - v * other.deriv) / other.value)
        if isinstance(other, Number):
            return Dual(self.value / other, self.deriv / other)
        return NotImplemented

    def __rtruediv__(self, other):
        return Dual._lift(other) / self

    def __neg__(self):
        return Dual(-self.value, -self.deriv)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Dual(1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = Dual._lift(other)
        return self.value == other.value and self.deriv == other.deriv

    def __hash__(self):
        return hash((self.value, self.deriv))

    def __repr__(self):
        return f"Dual({self.value!r}, {self.deriv!r})"

    def isclose(self, other, rel_tol=1e-12, abs_tol=0.0) -> bool:
        other = Dual._lift(other)
        return cmath.isclose(self.value, other.value, rel_tol=rel_tol, abs_tol=abs_tol) and cmath.isclose(
            self.deriv, other.deriv, rel_tol=rel_tol, abs_tol=abs_tol
        )

    def sqrt(self):
        if isinstance(self.value, complex) or (
            isinstance(self.value, (int, float, Fraction)) and self.value < 0
        ):
            r = cmath.sqrt(self.value)
        else:
            r = math.sqrt(self.value)
        return Dual(r, self.deriv / (2 * r))

    def log(self):
        if isinstance(self.value, complex):
            return Dual(cmath.log(self.value), self.deriv / self.value)
        return Dual(math.log(self.value), self.deriv / self.value)


def _sqrt(x):
    """Square root that also accepts :class:`Dual` and negative reals."""
    if isinstance(x, Dual):
        return x.sqrt()
    if isinstance(x, complex) or x < 0:
        return cmath.sqrt(x)
    return math.sqrt(x)


class UniPoly:
    """Immutable univariate polynomial, coefficients in increasing power.

    ``UniPoly([2, -3, 1])`` is ``2 - 3x + x**2``.  Trailing zeros are
    stripped so the zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, c):
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, Number):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def __str__(self):
        return self.format("x")

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"({c})*{var}")
            else:
                terms.append(f"({c})*{var}^{k}")
        return " + ".join(terms)

    def __add__(self, other):
        if isinstance(other, UniPoly):
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, c in enumerate(b):
                out[i] = out[i] + c
            return UniPoly(out)
        if isinstance(other, Number):
            if not self.coeffs:
                return UniPoly([other])
            return UniPoly((self.coeffs[0] + other,) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (UniPoly, Number)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Number):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            return poly_mul(self, other)
        if isinstance(other, Number):
            return UniPoly([c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            if isinstance(other, int):
                other = Fraction(other)
            return UniPoly([c / other for c in self.coeffs])
        return NotImplemented

    def __pow__(self, k: int):
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift_down(self, k: int) -> UniPoly:
        """Divide by ``x**k``; the low ``k`` coefficients must be zero."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError("polynomial is not divisible by x**%d" % k)
        return UniPoly(self.coeffs[k:])

    def truncate(self, k: int) -> UniPoly:
        """Keep terms of degree < k."""
        return UniPoly(self.coeffs[:k])

    def valuation(self) -> int:
        """Multiplicity of the root at 0 (0 for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return 0

    def map(self, f) -> UniPoly:
        return UniPoly([f(c) for c in self.coeffs])

    def monic(self) -> UniPoly:
        lead = self.coeffs[-1]
        return UniPoly([Fraction(c) / lead for c in self.coeffs])


def poly_mul(a: UniPoly, b: UniPoly) -> UniPoly:
    """Product by schoolbook convolution."""
    if not a.coeffs or not b.coeffs:
        return UniPoly()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j, bj in enumerate(b.coeffs):
            out[i + j] = out[i + j] + ai * bj
    return UniPoly(out)


def poly_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Euclidean division over the rationals."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a.coeffs]
    db = b.degree
    lead = Fraction(b.coeffs[-1])
    if len(rem) - 1 < db:
        return UniPoly(), UniPoly(rem)
    quot = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        q = rem[k + db] / lead
        quot[k] = q
        if q:
            for j, bj in enumerate(b.coeffs):
                rem[k + j] -= q * bj
    return UniPoly(quot), UniPoly(rem[:db])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the rationals."""
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    if a.is_zero():
        return a
    return a.monic()


def squarefree_part(a: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Return ``(a / g, g)`` with ``g = gcd(a, a')``.

    Roots of ``g`` are exactly the repeated roots of ``a``.
    """
    g = poly_gcd(a, a.derivative())
    if g.degree <= 0:
        return a, UniPoly([1])
    return poly_divmod(a, g)[0], g


def interpolate(xs, ys) -> UniPoly:
    """Exact Newton interpolation through the points ``(xs[i], ys[i])``."""
    xs = [to_fraction(x) for x in xs]
    coef = [to_fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        result = result * UniPoly([-xs[i], 1]) + coef[i]
    return result


def berlekamp_massey(seq) -> tuple[UniPoly, int]:
    """Berlekamp-Massey over Q: ``(connection polynomial, linear complexity)``.

    The connection polynomial ``D(z) = 1 + d_1 z + ... + d_L z^L`` satisfies
    ``s[k] + d_1 s[k-1] + ... + d_L s[k-L] = 0`` for every ``k >= L``, where
    ``L`` is the linear complexity.  ``deg D`` can be smaller than ``L``.
    """
    s = [to_fraction(v) for v in seq]
    conn = [Fraction(1)]
    prev = [Fraction(1)]
    length = 0
    shift = 1
    last_disc = Fraction(1)
    for k, sk in enumerate(s):
        disc = sk
        for i in range(1, min(length, len(conn) - 1) + 1):
            disc += conn[i] * s[k - i]
        if disc == 0:
            shift += 1
            continue
        scale = disc / last_disc
        updated = list(conn) + [Fraction(0)] * max(0, len(prev) + shift - len(conn))
        for i, c in enumerate(prev):
            updated[i + shift] -= scale * c
        if 2 * length <= k:
            prev, conn = conn, updated
            length = k + 1 - length
            last_disc = disc
            shift = 1
        else:
            conn = updated
            shift += 1
    return UniPoly(conn[: length + 1]), length


def minimal_recurrence(seq, max_order: int) -> UniPoly:
    """Shortest linear recurrence of a sequence, as ``D(z)`` with ``D(0) = 1``.

    Raises :class:`NoRecurrence` if the minimal order exceeds ``max_order``
    or the recurrence does not replay the whole sequence.
    """
    s = [to_fraction(v) for v in seq]
    if len(s) < 2 * max_order + 1:
        raise ValueError(
            f"need at least {2 * max_order + 1} terms for order {max_order}, got {len(s)}"
        )
    d, length = berlekamp_massey(s)
    if length > max_order:
        raise NoRecurrence(f"minimal recurrence order {length} exceeds {max_order}")
    # replay the recurrence to certify every supplied term
    for k in range(length, len(s)):
        if sum(d[i] * s[k - i] for i in range(length + 1)) != 0:
            raise NoRecurrence("recurrence does not reproduce the sequence")
    return d
