"""Cycle factors with prescribed lengths and prescribed member vertices.

A set of vertices of a tournament spans a cycle iff it induces a strongly
connected subtournament (Camion), so ``find_factor`` searches for a vertex
partition with strongly connected classes of the requested sizes and then
builds each cycle constructively.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

from .connectivity import is_strongly_connected, reach
from .core import Tournament, bits, mask_of
from .errors import BadSpec, TooLarge
from .hamiltonicity import Cycle, camion_cycle, moon_cycle
from .results import SearchResult, Status

FACTOR_EXHAUSTIVE_N = 14
FACTOR_NODE_BUDGET = 500_000
TRANSITIVE_MAX_N = 16


@dataclass(frozen=True)
class FactorSpec:
    """Cycle lengths ``l_1..l_t`` and optional pinned vertices (``None`` = free)."""

    lengths: tuple[int, ...]
    prescribed: tuple[int | None, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(self.lengths))
        pins = tuple(self.prescribed) or (None,) * len(self.lengths)
        object.__setattr__(self, "prescribed", pins)

    def validate(self, n: int) -> None:
        if not self.lengths:
            raise BadSpec("at least one cycle length is needed")
        if any(l < 3 for l in self.lengths):
            raise BadSpec(f"cycle lengths must be >= 3: {self.lengths}")
        if sum(self.lengths) != n:
            raise BadSpec(f"lengths sum to {sum(self.lengths)}, expected n={n}")
        if len(self.prescribed) != len(self.lengths):
            raise BadSpec("one prescribed entry per cycle is required")
        pins = [p for p in self.prescribed if p is not None]
        if len(set(pins)) != len(pins):
            raise BadSpec(f"prescribed vertices must be distinct: {pins}")
        if any(not 0 <= p < n for p in pins):
            raise BadSpec(f"prescribed vertex out of range: {pins}")


@dataclass(frozen=True)
class CycleFactor:
    cycles: tuple[Cycle, ...]


def verify_factor(t: Tournament, spec: FactorSpec, factor: CycleFactor) -> tuple[bool, str | None]:
    """Check a factor clause by clause; returns ``(ok, first violated clause)``."""
    if len(factor.cycles) != len(spec.lengths):
        return False, f"expected {len(spec.lengths)} cycles, got {len(factor.cycles)}"
    seen: set[int] = set()
    for i, cyc in enumerate(factor.cycles):
        vs = cyc.vertices
        if any(not 0 <= v < t.n for v in vs):
            return False, f"cycle {i}: vertex out of range"
        if len(set(vs)) != len(vs):
            return False, f"cycle {i}: repeated vertex"
        if seen & set(vs):
            return False, f"cycle {i}: shares vertices {sorted(seen & set(vs))} with an earlier cycle"
        seen |= set(vs)
        for a, b in cyc.arcs():
            if not t.has_arc(a, b):
                return False, f"cycle {i}: ({a},{b}) is not an arc"
        if len(vs) != spec.lengths[i]:
            return False, f"cycle {i}: length {len(vs)} != {spec.lengths[i]}"
        pin = spec.prescribed[i] if spec.prescribed else None
        if pin is not None and pin not in vs:
            return False, f"cycle {i}: prescribed vertex {pin} missing"
    if len(seen) != t.n:
        return False, f"vertices {sorted(set(range(t.n)) - seen)} not covered"
    return True, None


def _greedy_moon(t: Tournament, spec: FactorSpec):
    """One pass of Moon cycles, pinned classes first; None if it gets stuck."""
    remaining = t.all_mask
    order = sorted(range(len(spec.lengths)), key=lambda i: spec.prescribed[i] is None)
    pins = mask_of(p for p in spec.prescribed if p is not None)
    masks = [0] * len(spec.lengths)
    for pos, i in enumerate(order):
        if not is_strongly_connected(t, remaining):
            return None
        if pos == len(order) - 1:
            if remaining.bit_count() != spec.lengths[i]:
                return None
            masks[i] = remaining
            break
        anchor = spec.prescribed[i]
        if anchor is None:
            free = remaining & ~pins
            if not free:
                return None
            anchor = (free & -free).bit_length() - 1
        cyc = moon_cycle(t, anchor, spec.lengths[i], remaining)
        if cyc.mask & pins & ~(1 << anchor):
            return None
        masks[i] = cyc.mask
        remaining &= ~cyc.mask
    if not is_strongly_connected(t, masks[order[-1]]):
        return None
    return masks


def _backtrack(t: Tournament, spec: FactorSpec, budget: int | None):
    n = t.n
    lengths = spec.lengths
    tcount = len(lengths)
    masks = [0] * tcount
    for i, p in enumerate(spec.prescribed):
        if p is not None:
            masks[i] |= 1 << p
    pinned = mask_of(p for p in spec.prescribed if p is not None)
    order = [v for v in range(n) if not pinned >> v & 1]
    nodes = 0

    class _Budget(Exception):
        pass

    def completable(i: int, pool: int) -> bool:
        m = masks[i]
        if m.bit_count() == lengths[i]:
            return is_strongly_connected(t, m)
        # the class must lie inside one strongly connected piece of class + pool
        w = m | pool
        v = (m & -m).bit_length() - 1
        return m & ~reach(t.out_rows, 1 << v, w) == 0 and m & ~reach(t.in_rows, 1 << v, w) == 0

    def go(pos: int, pool: int) -> bool:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Budget
        if pos == len(order):
            return all(is_strongly_connected(t, m) for m in masks)
        v = order[pos]
        pool &= ~(1 << v)
        tried_empty: set[int] = set()
        for i in range(tcount):
            if masks[i].bit_count() >= lengths[i]:
                continue
            if masks[i] == 0:
                # interchangeable empty unpinned classes of equal length
                if lengths[i] in tried_empty:
                    continue
                tried_empty.add(lengths[i])
            masks[i] |= 1 << v
            ok = completable(i, pool)
            if ok:
                # every partial class must stay viable with the shrunken pool
                ok = all(j == i or masks[j] == 0 or masks[j].bit_count() == lengths[j]
                         or completable(j, pool) for j in range(tcount))
            if ok and go(pos + 1, pool):
                return True
            masks[i] &= ~(1 << v)
        return False

    pool0 = mask_of(order)
    if any(masks[i] and not completable(i, pool0) for i in range(tcount)):
        return None, nodes
    try:
        found = go(0, pool0)
    except _Budget:
        return "budget", nodes
    return (list(masks) if found else None), nodes


def find_factor(t: Tournament, spec: FactorSpec, budget: int | None = None) -> SearchResult:
    """Vertex-disjoint cycles ``C_i`` with ``|C_i| = l_i`` and ``x_i`` in ``C_i``.

    A greedy Moon pass is tried first.  Otherwise backtracking assigns the
    non-pinned vertices in increasing order to classes, pruning any partial
    class that cannot lie inside a strongly connected subtournament of
    itself plus the unassigned pool.  The search is exhaustive (certified
    ``NONE``) for ``n <= 14``; beyond that it runs under a node budget.
    """
    spec.validate(t.n)
    exhaustive = t.n <= FACTOR_EXHAUSTIVE_N
    if budget is None and not exhaustive:
        budget = FACTOR_NODE_BUDGET
    if len(spec.lengths) == 1:
        if not is_strongly_connected(t):
            return SearchResult(Status.NONE)
        return SearchResult(Status.FOUND, CycleFactor((camion_cycle(t),)))
    masks = _greedy_moon(t, spec)
    nodes = 0
    if masks is None:
        masks, nodes = _backtrack(t, spec, budget)
        if masks == "budget":
            return SearchResult(Status.UNKNOWN, nodes=nodes, note="node budget exhausted")
        if masks is None:
            status = Status.NONE if exhaustive or budget is None else Status.UNKNOWN
            return SearchResult(status, nodes=nodes)
    factor = CycleFactor(tuple(camion_cycle(t, m) for m in masks))
    ok, why = verify_factor(t, spec, factor)
    assert ok, why
    return SearchResult(Status.FOUND, factor, nodes=nodes)


def max_transitive_subtournament(t: Tournament, size: int) -> tuple[int, ...] | None:
    """A ``size``-subset inducing a transitive subtournament, or None after a full scan.

    A subtournament is transitive iff its internal out-degrees are pairwise
    distinct.  Exact for ``n <= 16``.
    """
    if size > t.n:
        raise ValueError(f"size {size} exceeds n={t.n}")
    if t.n > TRANSITIVE_MAX_N:
        raise TooLarge(f"exhaustive scan limited to n <= {TRANSITIVE_MAX_N}")
    for combo in combinations(range(t.n), size):
        m = mask_of(combo)
        degs = {(t.out_rows[v] & m).bit_count() for v in combo}
        if len(degs) == size:
            return combo
    return None


# -- independent oracle ------------------------------------------------------


def _has_hamiltonian_cycle_bruteforce(t: Tournament, vs: Sequence[int]) -> bool:
    first, rest = vs[0], vs[1:]
    for perm in permutations(rest):
        seq = (first,) + perm
        if all(t.has_arc(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))):
            return True
    return False


def factor_oracle(t: Tournament, spec: FactorSpec) -> bool:
    """Existence of a factor by partition-then-Hamilton enumeration.

    Enumerates every assignment of vertices to classes of the requested
    sizes (respecting pins) and tests each class for a Hamiltonian cycle by
    trying all vertex orders.  Shares no code with ``find_factor``; meant
    for ``n <= 8``.
    """
    spec.validate(t.n)
    lengths = spec.lengths
    pins = spec.prescribed

    def assign(i: int, free: tuple[int, ...]) -> bool:
        if i == len(lengths):
            return not free
        pin = pins[i]
        forced = () if pin is None else (pin,)
        pool = [v for v in free if v != pin and v not in pins[i + 1:]]
        for combo in combinations(pool, lengths[i] - len(forced)):
            cls = tuple(sorted(forced + combo))
            if not _has_hamiltonian_cycle_bruteforce(t, cls):
                continue
            rest = tuple(v for v in free if v not in cls)
            if assign(i + 1, rest):
                return True
        return False

    if any(p is not None and p in pins[i + 1:] for i, p in enumerate(pins)):
        return False
    return assign(0, tuple(range(t.n)))
