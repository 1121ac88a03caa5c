"""Transfer matrices of the K4 ladder and the reliability contraction.

All functions are generic over the scalar type of the cell parameters
(float, Fraction, Dual, UniPoly, ...): they only add, subtract and multiply.
"""

from __future__ import annotations

from .errors import PresetViolation
from .ladder import CellParams, LadderConfig, Preset, REV_FIELDS

__all__ = [
    "build_xs",
    "build_matrix_5",
    "build_matrix_3",
    "transfer_matrices",
    "rel2",
    "rel2_sequence",
    "rel2_gradient",
]


def build_xs(cell: CellParams) -> dict:
    """Entries ``x1..x20`` (there is no ``x16``) keyed by their index."""
    a, ar = cell.a, cell.a_rev
    b, br = cell.b, cell.b_rev
    c, cr = cell.c, cell.c_rev
    d, dr = cell.d, cell.d_rev
    e, er = cell.e, cell.e_rev
    S, T = cell.S, cell.T
    ST = S * T
    x = {}
    x[1] = S * (a + br * e * T - a * br * e * T)
    x[2] = S * (d + br * c * T - br * c * d * T)
    x[3] = S * (
        a * d
        + a * br * c * T
        - a * br * c * d * T
        + br * c * e * T
        - a * br * c * e * T
        + (1 - a) * br * (1 - c) * d * e * T
    )
    x[4] = (1 - a) * (1 - br) * cr * d * e * ST
    x[5] = a * (1 - br) * c * (1 - d) * er * ST
    x[6] = (e + a * b * S - a * b * e * S) * T
    x[7] = (c + b * d * S - b * c * d * S) * T
    x[8] = (
        c * e
        + a * b * c * S
        + a * b * d * S
        - a * b * c * d * S
        - a * b * c * e * S
        + (1 - a) * b * (1 - c) * d * e * S
    ) * T
    x[9] = a * (1 - b) * c * dr * (1 - e) * ST
    x[10] = ar * (1 - b) * (1 - c) * d * e * ST
    x[11] = (1 - a) * (1 - br) * e * ST
    x[12] = (1 - br) * c * (1 - d) * ST
    core = a * c - a * c * d + c * e - a * c * e + (1 - a) * (1 - c) * d * e
    x[13] = (1 - br) * core * ST
    x[14] = (1 - br) * core * ST - (
        a * b * c + a * b * d - a * b * c * d + c * e - a * b * c * e + (1 - a) * b * (1 - c) * d * e
    ) * ST
    x[15] = (1 - b) * (a * c + a * d - a * c * d - a * c * e + (1 - a) * (1 - c) * d * e) * ST
    x[17] = -(c * (br + d - br * d) + b * d * (1 - c)) * ST
    x[18] = -(a * (b + e - b * e) + br * e * (1 - a)) * ST
    x[19] = (1 - b) * (1 - c) * d * ST
    x[20] = a * (1 - b) * (1 - e) * ST
    return x


def build_matrix_5(cell: CellParams) -> list[list]:
    """The 5x5 transfer matrix of one cell (row-major nested lists)."""
    x = build_xs(cell)
    return [
        [x[1], x[2], x[3], x[4], x[5]],
        [x[6], x[7], x[8], x[9], x[10]],
        [x[18], x[17], x[14], -x[4] - x[9], -x[5] - x[10]],
        [x[20], x[19], x[15], -x[9], -x[10]],
        [x[11], x[12], x[13], -x[4], -x[5]],
    ]


def _check_angele_directed(cell: CellParams, i: int | None = None):
    bad = [f for f in ("b",) + REV_FIELDS if getattr(cell, f) != 0]
    if bad:
        where = "" if i is None else f"cell {i}: "
        raise PresetViolation(f"{where}reduced matrix needs {', '.join(bad)} = 0")


def build_matrix_3(cell: CellParams) -> list[list]:
    """Reduced 3x3 matrix, valid when ``b`` and every reverse edge vanish."""
    _check_angele_directed(cell)
    a, c, d, e, S, T = cell.a, cell.c, cell.d, cell.e, cell.S, cell.T
    chi = a * c * (1 - d) * (1 - e) + d * e * (1 - a - c)
    return [
        [a * S, d * S, a * d * S],
        [e * T, c * T, c * e * T],
        [-a * e * S * T, -c * d * S * T, chi * S * T],
    ]


def transfer_matrices(config: LadderConfig) -> list[list[list]]:
    """Per-cell matrices ``M_0..M_n``; 3x3 for the directed Angele preset."""
    if config.preset is Preset.ANGELE_DIRECTED:
        return [build_matrix_3(cell) for cell in config.cells]
    return [build_matrix_5(cell) for cell in config.cells]


def _matvec(m, v):
    out = []
    for row in m:
        acc = 0
        for mij, vj in zip(row, v):
            acc = acc + mij * vj
        out.append(acc)
    return out


def _vecmat(v, m):
    dim = len(m[0])
    out = [0] * dim
    for vi, row in zip(v, m):
        for j in range(dim):
            out[j] = out[j] + vi * row[j]
    return out


def _dot(u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def _end_vectors(dim: int, destination: str):
    right = [1] + [0] * (dim - 1)
    left = [0] * dim
    left[0 if destination == "S" else 1] = 1
    return left, right


def rel2(config: LadderConfig):
    """Two-terminal reliability from ``S_0`` to the configured destination."""
    mats = transfer_matrices(config)
    left, v = _end_vectors(len(mats[0]), config.destination)
    for m in mats:
        v = _matvec(m, v)
    return _dot(left, v)


def rel2_sequence(config: LadderConfig) -> list:
    """Reliabilities of the prefixes of a uniform-cell ladder, ``n = 1..N``.

    The last cell of a prefix is taken as the final cell of ``config``, so
    boundary conventions on cell ``n`` (such as ``T_n = 0``) are honored at
    every length.  Only meaningful when cells ``1..n-1`` are identical.
    """
    mats = transfer_matrices(config)
    last = mats[-1]
    left, v = _end_vectors(len(mats[0]), config.destination)
    v = _matvec(mats[0], v)
    out = []
    for k in range(1, len(mats)):
        out.append(_dot(left, _matvec(last, v)))
        v = _matvec(mats[k], v)
    return out


def rel2_gradient(config: LadderConfig) -> dict:
    """Partial derivative of ``rel2`` with respect to every live component.

    Each matrix entry is affine in every parameter of its cell, so the
    derivative of ``M_i`` is ``M_i(x=1) - M_i(x=0)``; it is contracted with
    precomputed prefix and suffix vectors.  For undirected presets an edge's
    two directions move together.
    """
    mats = transfer_matrices(config)
    dim = len(mats[0])
    left, right = _end_vectors(dim, config.destination)
    n = config.n
    # rights[i] = M_{i-1} ... M_0 r ; lefts[i] = l M_n ... M_{i+1}
    rights = [right]
    for m in mats[:-1]:
        rights.append(_matvec(m, rights[-1]))
    lefts = [None] * (n + 1)
    lefts[n] = left
    for i in range(n, 0, -1):
        lefts[i - 1] = _vecmat(lefts[i], mats[i])
    build = build_matrix_3 if config.preset is Preset.ANGELE_DIRECTED else build_matrix_5
    grad = {}
    for key in config.components():
        f, i = key
        hi = build(_set(config, i, f, 1))
        lo = build(_set(config, i, f, 0))
        diff = [[h - l for h, l in zip(rh, rl)] for rh, rl in zip(hi, lo)]
        grad[key] = _dot(lefts[i], _matvec(diff, rights[i]))
    return grad


def _set(config: LadderConfig, i: int, f: str, value) -> CellParams:
    changes = {f: value}
    if config.preset.undirected and f in ("a", "b", "c", "d", "e"):
        changes[f + "_rev"] = value
    return config.cells[i].replace(**changes)
