"""Brute-force ground truth for two-terminal reliability of a component graph.

Two independent routes: exhaustive state enumeration (vectorized over
states with numpy) and recursive pivotal decomposition.  Components whose
reliability is exactly 1 are treated as always up and not enumerated.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import TooLarge
from .ladder import ComponentGraph, component_order

__all__ = ["reachable", "oracle_enumerate", "oracle_factoring", "ENUMERATE_LIMIT", "FACTORING_LIMIT"]

ENUMERATE_LIMIT = 24
FACTORING_LIMIT = 40
_CHUNK_BITS = 20


def reachable(graph: ComponentGraph, up_set) -> bool:
    """True iff the destination can be reached from the source.

    ``up_set`` holds the component keys (``("node", key)`` / ``("arc", key)``)
    that are up; everything else is down.
    """
    up = set(up_set)
    src, dst = graph.source, graph.destination
    if ("node", src) not in up or ("node", dst) not in up:
        return False
    seen = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        if u == dst:
            return True
        for arc in graph.arcs:
            if ("arc", arc.key) not in up:
                continue
            for o, t in _directions(arc):
                if o == u and t not in seen and ("node", t) in up:
                    seen.add(t)
                    stack.append(t)
    return dst in seen


def _directions(arc):
    if arc.bidirectional:
        return ((arc.origin, arc.target), (arc.target, arc.origin))
    return ((arc.origin, arc.target),)


def _split(graph: ComponentGraph):
    free, fixed = [], []
    for comp in graph.components():
        r = graph.reliability(comp)
        (fixed if r == 1 else free).append(comp)
    return free, fixed


def _indicator(graph: ComponentGraph, free: list, states: np.ndarray) -> np.ndarray:
    """Connectivity indicator for an array of state bitmasks over ``free``."""
    bit = {comp: j for j, comp in enumerate(free)}
    ones = np.ones(states.shape, dtype=bool)

    def up(comp):
        j = bit.get(comp)
        if j is None:
            return ones
        return ((states >> j) & 1).astype(bool)

    src, dst = graph.source, graph.destination
    if src not in graph.nodes or dst not in graph.nodes:
        return np.zeros(states.shape, dtype=bool)
    node_up = {k: up(("node", k)) for k in graph.nodes}
    usable = [(arc, up(("arc", arc.key))) for arc in graph.arcs]
    reach = {k: np.zeros(states.shape, dtype=bool) for k in graph.nodes}
    reach[src] = node_up[src].copy()
    changed = True
    while changed:
        changed = False
        for arc, ok in usable:
            for o, t in _directions(arc):
                new = reach[o] & ok & node_up[t] & ~reach[t]
                if new.any():
                    reach[t] |= new
                    changed = True
    return reach[dst]


def oracle_enumerate(graph: ComponentGraph, exact: bool | None = None):
    """Sum of state probabilities over all connected states.

    Returns a Fraction when every reliability is rational (or ``exact`` is
    set), a float otherwise.  Raises :class:`TooLarge` beyond 24 unreliable
    components.
    """
    free, _ = _split(graph)
    k = len(free)
    if k > ENUMERATE_LIMIT:
        raise TooLarge(f"{k} unreliable components exceed the enumeration limit {ENUMERATE_LIMIT}")
    rels = [graph.reliability(c) for c in free]
    if exact is None:
        exact = all(isinstance(r, (int, Fraction)) for r in rels)
    if exact:
        return _enumerate_exact(graph, free, [Fraction(r) for r in rels])
    return _enumerate_float(graph, free, [float(r) for r in rels])


def _enumerate_float(graph, free, rels) -> float:
    k = len(free)
    total = 0.0
    chunk = 1 << min(k, _CHUNK_BITS)
    for start in range(0, 1 << k, chunk):
        states = np.arange(start, start + chunk, dtype=np.int64)
        ind = _indicator(graph, free, states)
        if not ind.any():
            continue
        w = np.ones(chunk)
        for j, r in enumerate(rels):
            bitj = ((states >> j) & 1).astype(bool)
            w *= np.where(bitj, r, 1.0 - r)
        total += float(w[ind].sum())
    return total


def _half_weights(rels) -> list[int]:
    """Integer state weights over a block of components (common denominator)."""
    w = [1]
    for r in rels:
        num, den = r.numerator, r.denominator
        w = [x * (den - num) for x in w] + [x * num for x in w]
    return w


def _enumerate_exact(graph, free, rels) -> Fraction:
    k = len(free)
    lo_bits = k // 2
    hi_bits = k - lo_bits
    lo_w = _half_weights(rels[:lo_bits])
    hi_w = _half_weights(rels[lo_bits:])
    den = 1
    for r in rels:
        den *= r.denominator
    lo_count = 1 << lo_bits
    fits = max(lo_w) * lo_count < 2**62
    lo_vec = np.array(lo_w, dtype=np.int64 if fits else object)
    total = 0
    rows_per_chunk = max(1, (1 << _CHUNK_BITS) // lo_count)
    for hi_start in range(0, 1 << hi_bits, rows_per_chunk):
        rows = min(rows_per_chunk, (1 << hi_bits) - hi_start)
        states = np.arange(hi_start * lo_count, (hi_start + rows) * lo_count, dtype=np.int64)
        ind = _indicator(graph, free, states).reshape(rows, lo_count)
        partial = ind.astype(lo_vec.dtype) @ lo_vec
        for h in range(rows):
            if partial[h]:
                total += hi_w[hi_start + h] * int(partial[h])
    return Fraction(total, den)


def oracle_factoring(graph: ComponentGraph):
    """Recursive pivotal decomposition on components adjacent to the source side.

    Each pivot splits into the disjoint events "component up" and "component
    down".  Recursion stops as soon as the destination is reached through up
    components, or cannot be reached even with every undecided component up.
    """
    free, fixed = _split(graph)
    if len(free) > FACTORING_LIMIT:
        raise TooLarge(f"{len(free)} unreliable components exceed the factoring limit {FACTORING_LIMIT}")
    rel = {c: graph.reliability(c) for c in free}
    src, dst = graph.source, graph.destination
    if src not in graph.nodes or dst not in graph.nodes:
        return 0
    adj = {}
    for arc in graph.arcs:
        for o, t in _directions(arc):
            adj.setdefault(o, []).append((("arc", arc.key), t))

    def reach(status, optimistic):
        def ok(comp):
            s = status.get(comp)
            return s is True or (s is None and optimistic)

        if not ok(("node", src)):
            return set()
        seen = {src}
        stack = [src]
        while stack:
            u = stack.pop()
            for comp, t in adj.get(u, ()):
                if t not in seen and ok(comp) and ok(("node", t)):
                    seen.add(t)
                    stack.append(t)
        return seen

    def pivot(status):
        if status.get(("node", src)) is None:
            return ("node", src)
        seen = reach(status, optimistic=False)
        cands = []
        for u in seen:
            for comp, t in adj.get(u, ()):
                if t in seen:
                    continue
                s = status.get(comp)
                if s is None:
                    cands.append(comp)
                elif s is True and status.get(("node", t)) is None:
                    cands.append(("node", t))
        return min(cands, key=component_order)

    def solve(status):
        if dst not in reach(status, optimistic=True):
            return 0
        if dst in reach(status, optimistic=False):
            return 1
        comp = pivot(status)
        r = rel[comp]
        status[comp] = True
        up = solve(status)
        status[comp] = False
        down = solve(status)
        del status[comp]
        return r * up + (1 - r) * down

    return solve({c: True for c in fixed})
