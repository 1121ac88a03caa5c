"""Closed-form generating functions of the uniform Angele ladders.

These are hand-derived reference polynomials in ``z``; the package itself
extracts generating functions numerically from the transfer matrices (see
:func:`relladder.spectral.gf_extract`) and these forms serve as a check.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import UniPoly


def angele_undirected_gf(p, rho) -> tuple[UniPoly, UniPoly]:
    """``(N, D)`` for the undirected Angele ladder; undefined at ``rho = 1``."""
    N = UniPoly(
        [
            1,
            -p * (2 + 2 * p - 6 * p**2 + 3 * p**3) * rho**2,
            2 * (1 - p) ** 2 * (2 - p) * p**3 * (1 - p + p**2) * rho**4,
        ]
    ) * (rho / (2 * (1 - rho)))
    D = UniPoly(
        [
            1,
            -p * rho * (2 + 2 * p * rho - 6 * p**2 * rho + 3 * p**3 * rho),
            2
            * (1 - p)
            * p**3
            * rho**3
            * (2 - 3 * p - 2 * p * rho + 6 * p**2 * rho - 4 * p**3 * rho + p**4 * rho),
            -4 * (1 - p) ** 2 * (2 - p) * p**6 * (1 - rho) * rho**5,
        ]
    )
    return N, D


def angele_directed_gf(p, rho) -> tuple[UniPoly, UniPoly]:
    """``(N, D)`` for the directed Angele ladder."""
    half = Fraction(1, 2) if isinstance(rho, (int, Fraction)) else 0.5
    N = UniPoly([1, -(p**2) * rho**2 * (2 - 4 * p + p**2)]) * (rho * half)
    D = UniPoly(
        [
            1,
            -p * rho * (2 + 2 * p * rho - 4 * p**2 * rho + p**3 * rho),
            2 * p**3 * rho**3 * (1 - p) * (2 - p),
        ]
    )
    return N, D
