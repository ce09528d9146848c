"""Constructive Hamiltonian and pancyclic cycles in strongly connected tournaments.

Both constructions grow a cycle one vertex at a time.  An outside vertex
with an in-neighbour and an out-neighbour on the cycle is inserted between
consecutive cycle vertices ``c_i -> x -> c_{i+1}``.  When no such vertex
exists every outside vertex either is dominated by the whole cycle or
dominates it; strong connectivity then forces an arc ``u -> w`` from a
dominated ``u`` to a dominating ``w``, and ``c_i, u, w, c_{i+2}`` replaces
``c_i, c_{i+1}, c_{i+2}``, lengthening the cycle by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .connectivity import is_strongly_connected, unreachable_pair
from .core import Digraph, Tournament, bits, mask_of
from .errors import BadLength, NotStronglyConnected
from .results import SearchResult, Status

TWO_CYCLE_EXHAUSTIVE_N = 14
TWO_CYCLE_BUDGET = 50_000


def canonical_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = min(range(len(seq)), key=seq.__getitem__)
    return tuple(seq[i:]) + tuple(seq[:i])


@dataclass(frozen=True)
class Cycle:
    """Directed cycle stored starting at its smallest vertex."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", canonical_rotation(tuple(self.vertices)))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def arcs(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_valid(self, d: Digraph, min_length: int = 2) -> bool:
        vs = self.vertices
        if len(vs) < min_length or len(set(vs)) != len(vs):
            return False
        return all(0 <= a < d.n and d.has_arc(a, b) for a, b in self.arcs())


def _require_strong(t: Digraph, within: int):
    pair = unreachable_pair(t, within)
    if pair is not None:
        raise NotStronglyConnected(pair)


def _triangle_through(t: Digraph, v: int, within: int) -> list[int]:
    for a in bits(t.out_rows[v] & within):
        back = t.out_rows[a] & t.in_rows[v] & within
        if back:
            b = (back & -back).bit_length() - 1
            return [v, a, b]
    raise NotStronglyConnected((v, v))


def _grow(t: Digraph, cyc: list[int], within: int, keep: int | None = None) -> list[int]:
    """Return a cycle one vertex longer than ``cyc`` inside ``within``.

    ``keep`` (if given) is never dropped during the rotation step.
    """
    on = mask_of(cyc)
    outside = within & ~on
    r = len(cyc)
    for x in bits(outside):
        if t.in_rows[x] & on and t.out_rows[x] & on:
            for i in range(r):
                if t.out_rows[cyc[i]] >> x & 1 and t.out_rows[x] >> cyc[(i + 1) % r] & 1:
                    return cyc[: i + 1] + [x] + cyc[i + 1:]
    dominated = mask_of(x for x in bits(outside) if t.in_rows[x] & on == on)
    dominating = outside & ~dominated
    for u in bits(dominated):
        hit = t.out_rows[u] & dominating
        if hit:
            w = (hit & -hit).bit_length() - 1
            for i in range(r):
                dropped = cyc[(i + 1) % r]
                if dropped != keep:
                    return [cyc[i], u, w] + [cyc[(i + 2 + s) % r] for s in range(r - 2)]
    raise NotStronglyConnected((min(bits(dominated)), min(bits(on))))


def camion_cycle(t: Tournament, within: int | None = None) -> Cycle:
    """Hamiltonian cycle of a strongly connected tournament (``n >= 3``)."""
    w = t.all_mask if within is None else within
    _require_strong(t, w)
    if w.bit_count() < 3:
        raise BadLength("a cycle needs at least 3 vertices")
    v = (w & -w).bit_length() - 1
    cyc = _triangle_through(t, v, w)
    while len(cyc) < w.bit_count():
        cyc = _grow(t, cyc, w)
    out = Cycle(cyc)
    assert out.is_valid(t, 3) and out.mask == w
    return out


def moon_cycle(t: Tournament, v: int, length: int, within: int | None = None) -> Cycle:
    """Cycle of exactly ``length`` vertices through ``v`` (vertex-pancyclicity)."""
    w = t.all_mask if within is None else within
    size = w.bit_count()
    if not 3 <= length <= size:
        raise BadLength(f"length {length} outside [3, {size}]")
    if not w >> v & 1:
        raise ValueError(f"vertex {v} not in the tournament")
    _require_strong(t, w)
    cyc = _triangle_through(t, v, w)
    while len(cyc) < length:
        cyc = _grow(t, cyc, w, keep=v)
    out = Cycle(cyc)
    assert out.is_valid(t, 3) and len(out) == length and v in out
    return out


def two_cycle_partition(t: Tournament, v: int, length: int, budget: int | None = None) -> SearchResult:
    """Two disjoint cycles covering ``V(T)``: one of ``length`` vertices through ``v``,
    the other of ``n - length`` vertices.

    Searches over the vertex set ``S`` of the first cycle (``v`` in ``S``),
    accepting when both ``T[S]`` and ``T - S`` are strongly connected, then
    builds each cycle by ``camion_cycle``.  A Moon cycle through ``v`` is
    tried first.  Exhaustive (certified ``NONE``) for ``n <= 14``.
    """
    n = t.n
    if n < 6 or not 3 <= length <= n - 3:
        raise BadLength(f"need n >= 6 and 3 <= length <= n - 3 (n={n}, length={length})")
    full = t.all_mask
    exhaustive = n <= TWO_CYCLE_EXHAUSTIVE_N
    if budget is None and not exhaustive:
        budget = TWO_CYCLE_BUDGET

    def finish(first_mask: int, nodes: int) -> SearchResult:
        c1 = camion_cycle(t, first_mask)
        c2 = camion_cycle(t, full & ~first_mask)
        return SearchResult(Status.FOUND, (c1, c2), nodes=nodes)

    if is_strongly_connected(t):
        c = moon_cycle(t, v, length)
        if is_strongly_connected(t, full & ~c.mask):
            return finish(c.mask, 0)
    others = [x for x in range(n) if x != v]
    nodes = 0
    for combo in combinations(others, length - 1):
        nodes += 1
        if budget is not None and nodes > budget:
            return SearchResult(Status.UNKNOWN, nodes=nodes, note="budget exhausted")
        s = mask_of(combo) | 1 << v
        if is_strongly_connected(t, s) and is_strongly_connected(t, full & ~s):
            return finish(s, nodes)
    return SearchResult(Status.NONE if exhaustive or budget is None else Status.UNKNOWN, nodes=nodes)
