"""Partitions into strongly k-connected parts of prescribed sizes, and
vertex-disjoint paths of prescribed lengths.

The partition pipeline grows small strongly k-connected seed cores, then
hands the leftover vertices out by a bipartite matching: a vertex may join
part ``i`` only if it has at least ``k`` in- and ``k`` out-neighbours in the
seed of part ``i``.  Any such extension stays strongly k-connected, so every
successful distribution is certified by construction (and re-checked).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .connectivity import PathSystem, connectivity_report, glue_check, is_strongly_k_connected
from .core import Digraph, bits, mask_of
from .dominating import IN_DOMINATING, almost_dominating
from .errors import BadSizes, BadSpec, ConsistencyError, NoMatching, PinConflict, UnbalancedSides
from .results import SearchResult, Status

PARTITION_EXHAUSTIVE_N = 12
LINKPATH_EXHAUSTIVE_N = 12
LINKPATH_NODE_BUDGET = 1_000_000


# -- Hall matching -----------------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    side_a: tuple[Hashable, ...]
    side_b: tuple[Hashable, ...]
    edges: frozenset[tuple[Hashable, Hashable]]

    def __init__(self, side_a: Iterable, side_b: Iterable, edges: Iterable[tuple]):
        a, b, e = tuple(side_a), tuple(side_b), frozenset(map(tuple, edges))
        if set(a) & set(b):
            raise ValueError("sides must be disjoint")
        sa, sb = set(a), set(b)
        for x, y in e:
            if x not in sa or y not in sb:
                raise ValueError(f"edge {(x, y)} is not in side_a x side_b")
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)
        object.__setattr__(self, "edges", e)

    def neighbors(self, a) -> list:
        return [b for b in self.side_b if (a, b) in self.edges]


@dataclass(frozen=True)
class HallResult:
    """``matching`` (side_a -> side_b) when perfect, else a Hall-violating ``witness``."""

    matching: dict | None
    witness: tuple | None

    @property
    def perfect(self) -> bool:
        return self.matching is not None

    def __bool__(self):
        return self.perfect


def hall_matching(g: BipartiteGraph) -> HallResult:
    """Perfect matching by augmenting paths, lowest-index choices first.

    On failure the witness is the set ``S`` of ``side_a`` vertices reachable by
    alternating paths from an unmatched vertex; ``|N(S)| = |S| - 1``.
    """
    if len(g.side_a) != len(g.side_b):
        raise UnbalancedSides(f"|A|={len(g.side_a)} but |B|={len(g.side_b)}")
    adj = {a: g.neighbors(a) for a in g.side_a}
    mate_b: dict = {}

    def augment(a, seen_a: list, seen_b: set) -> bool:
        seen_a.append(a)
        for b in adj[a]:
            if b in seen_b:
                continue
            seen_b.add(b)
            if b not in mate_b or augment(mate_b[b], seen_a, seen_b):
                mate_b[b] = a
                return True
        return False

    for a in g.side_a:
        free = next((b for b in adj[a] if b not in mate_b), None)
        if free is not None:
            mate_b[free] = a
            continue
        seen_a: list = []
        if not augment(a, seen_a, set()):
            order = {x: i for i, x in enumerate(g.side_a)}
            return HallResult(None, tuple(sorted(set(seen_a), key=order.__getitem__)))
    return HallResult({a: b for b, a in mate_b.items()}, None)


def hall_deficiency(g: BipartiteGraph, subset: Iterable) -> int:
    """``|S| - |N(S)|``; positive means ``S`` violates Hall's condition."""
    s = set(subset)
    nbrs = {b for a, b in g.edges if a in s}
    return len(s) - len(nbrs)


# -- distribution ------------------------------------------------------------


def attachable(d: Digraph, x: int, seed: int, k: int) -> bool:
    """``x`` has at least ``k`` out- and ``k`` in-neighbours inside ``seed``."""
    return (d.out_rows[x] & seed).bit_count() >= k and (d.in_rows[x] & seed).bit_count() >= k


def distribute_vertices(d: Digraph, seeds: Sequence[Iterable[int]], k: int,
                        targets: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Extend disjoint strongly ``k``-connected seeds to parts of sizes ``targets``.

    Leftover vertices are matched to the ``targets[i] - |W_i|`` free slots of
    part ``i``; ``x`` may take a slot of part ``i`` only if it is attachable to
    ``W_i``.  Raises NoMatching carrying a Hall-violating set of leftovers.
    """
    masks = [mask_of(s) for s in seeds]
    if len(masks) != len(targets):
        raise BadSizes("one target per seed is required")
    union = 0
    for m in masks:
        if union & m:
            raise ValueError("seeds must be pairwise disjoint")
        union |= m
    if any(t < m.bit_count() for t, m in zip(targets, masks)):
        raise BadSizes("every target must be at least its seed size")
    leftover = tuple(bits(d.all_mask & ~union))
    slots = [(i, r) for i, m in enumerate(masks) for r in range(targets[i] - m.bit_count())]
    if len(slots) != len(leftover):
        raise BadSizes(f"targets leave {len(slots)} free slots for {len(leftover)} vertices")
    for i, m in enumerate(masks):
        if not is_strongly_k_connected(d, k, m):
            raise ValueError(f"seed {i} is not strongly {k}-connected")
    ok = [[attachable(d, x, m, k) for m in masks] for x in range(d.n)]
    edges = [(x, s) for x in leftover for s in slots if ok[x][s[0]]]
    res = hall_matching(BipartiteGraph(leftover, slots, edges))
    if not res:
        raise NoMatching(res.witness)
    parts = [m for m in masks]
    for x, (i, _) in res.matching.items():
        parts[i] |= 1 << x
    for i, m in enumerate(masks):
        if not glue_check(d, bits(m), bits(parts[i] & ~m), k):
            raise ConsistencyError(f"part {i}: matched vertices fail the gluing check")
    return tuple(tuple(bits(p)) for p in parts)


# -- partitions --------------------------------------------------------------


@dataclass(frozen=True)
class PartitionCertificate:
    parts: tuple[tuple[int, ...], ...]
    k: int
    sizes: tuple[int, ...]
    pinned: tuple[tuple[int, ...], ...]
    kappas: tuple[int, ...] = field(default=())

    def verify(self, d: Digraph) -> bool:
        """Re-check from scratch: partition, sizes, pins, per-part connectivity."""
        seen = [v for p in self.parts for v in p]
        if sorted(seen) != list(range(d.n)):
            return False
        if tuple(len(p) for p in self.parts) != self.sizes:
            return False
        if any(not set(q) <= set(p) for q, p in zip(self.pinned, self.parts)):
            return False
        return all(is_strongly_k_connected(d, self.k, mask_of(p)) for p in self.parts)


def _normalise_sizes(n: int, t: int, sizes: Sequence[int]) -> tuple[int, ...]:
    sizes = tuple(sizes)
    if len(sizes) != t:
        raise BadSizes(f"{len(sizes)} sizes given for t={t} parts")
    if any(a < 1 for a in sizes):
        raise BadSizes(f"sizes must be positive: {sizes}")
    total = sum(sizes)
    if total > n:
        raise BadSizes(f"sizes sum to {total} > n={n}")
    # surplus vertices go to the first part
    return (sizes[0] + n - total,) + sizes[1:]


def _normalise_pins(n: int, t: int, sizes, pinned) -> tuple[tuple[int, ...], ...]:
    if pinned is None:
        return ((),) * t
    pins = tuple(tuple(sorted(set(q))) for q in pinned)
    if len(pins) != t:
        raise PinConflict(f"{len(pins)} pin sets given for t={t} parts")
    seen: set[int] = set()
    for i, q in enumerate(pins):
        if any(not 0 <= v < n for v in q):
            raise PinConflict(f"pinned vertex out of range in part {i}: {q}")
        if seen & set(q):
            raise PinConflict(f"vertices {sorted(seen & set(q))} pinned to two parts")
        if len(q) > sizes[i]:
            raise PinConflict(f"part {i} has {len(q)} pins but size {sizes[i]}")
        seen |= set(q)
    return pins


def _grow_seeds(d: Digraph, k: int, pins, seed_sizes) -> list[int] | None:
    """Greedy seed cores: pins, then an almost dominating path, then vertices
    maximising ``min(in, out)`` degree into the seed (ties by lowest index)."""
    pinned_all = mask_of(v for q in pins for v in q)
    used = pinned_all
    seeds = []
    for q, size in zip(pins, seed_sizes):
        seed = mask_of(q)
        free = d.all_mask & ~used
        if not seed:
            if not free:
                return None
            anchor = max(bits(free), key=lambda v: (min((d.out_rows[v] & free).bit_count(),
                                                        (d.in_rows[v] & free).bit_count()), -v))
            seed = 1 << anchor
            used |= seed
        if seed.bit_count() < size:
            anchor = min(bits(seed))
            blocked = [v for v in range(d.n) if used >> v & 1 and not seed >> v & 1]
            ds = almost_dominating(d, anchor, 2, IN_DOMINATING, exclude=blocked)
            for v in ds.path:
                if seed.bit_count() < size:
                    seed |= 1 << v
            used |= seed
        while seed.bit_count() < size:
            free = d.all_mask & ~used
            if not free:
                return None
            best = max(bits(free), key=lambda v: (min((d.out_rows[v] & seed).bit_count(),
                                                      (d.in_rows[v] & seed).bit_count()), -v))
            seed |= 1 << best
            used |= 1 << best
        seeds.append(seed)
    return seeds


def _certificate(d, parts, k, sizes, pins) -> PartitionCertificate:
    kappas = tuple(connectivity_report(d, mask_of(p)).kappa for p in parts)
    cert = PartitionCertificate(tuple(tuple(p) for p in parts), k, sizes, pins, kappas)
    if not cert.verify(d):
        raise ConsistencyError("constructed partition failed re-verification")
    return cert


def exhaustive_partition(d: Digraph, k: int, sizes: Sequence[int], pins) -> tuple[tuple[int, ...], ...] | None:
    """Try every assignment of vertices to parts of the given sizes."""
    pins = [mask_of(q) for q in pins]
    t = len(sizes)
    all_pins = 0
    for p in pins:
        all_pins |= p

    def go(i: int, free: int):
        if i == t - 1:
            if free.bit_count() == sizes[i] and is_strongly_k_connected(d, k, free):
                return [free]
            return None
        must = pins[i]
        pool = [v for v in bits(free & ~all_pins)]
        for combo in combinations(pool, sizes[i] - must.bit_count()):
            part = must | mask_of(combo)
            if not is_strongly_k_connected(d, k, part):
                continue
            rest = go(i + 1, free & ~part)
            if rest is not None:
                return [part] + rest
        return None

    found = go(0, d.all_mask)
    return None if found is None else tuple(tuple(bits(p)) for p in found)


def partition_k_connected(d: Digraph, t: int, k: int, sizes: Sequence[int],
                          pinned: Sequence[Iterable[int]] | None = None) -> SearchResult:
    """Partition ``V(D)`` into ``t`` strongly ``k``-connected parts with
    ``|W_i| = a_i`` and ``Q_i`` inside ``W_i``.

    Seeds of growing size are built greedily and completed by matching.  If
    that fails and ``n <= 12``, all assignments are tried and a failure is a
    certified ``NONE``; larger inputs report ``UNKNOWN``.
    """
    if t < 1:
        raise BadSizes("need at least one part")
    n = d.n
    sizes = _normalise_sizes(n, t, sizes)
    pins = _normalise_pins(n, t, sizes, pinned)
    if any(a < k + 1 for a in sizes):
        return SearchResult(Status.NONE, note="a strongly k-connected part needs k + 1 vertices")
    if t == 1:
        if is_strongly_k_connected(d, k):
            return SearchResult(Status.FOUND, _certificate(d, [tuple(range(n))], k, sizes, pins))
        return SearchResult(Status.NONE, note="D itself is not strongly k-connected")
    attempts = 0
    for base in range(k + 1, max(sizes) + 1):
        seed_sizes = [min(a, max(base, len(q))) for a, q in zip(sizes, pins)]
        seeds = _grow_seeds(d, k, pins, seed_sizes)
        if seeds is None:
            break
        attempts += 1
        if not all(is_strongly_k_connected(d, k, s) for s in seeds):
            continue
        try:
            parts = distribute_vertices(d, [bits(s) for s in seeds], k, sizes)
        except NoMatching:
            continue
        return SearchResult(Status.FOUND, _certificate(d, parts, k, sizes, pins), nodes=attempts,
                            note="seed growth and matching")
    if n > PARTITION_EXHAUSTIVE_N:
        return SearchResult(Status.UNKNOWN, nodes=attempts, note=f"greedy pipeline failed and n > {PARTITION_EXHAUSTIVE_N}")
    parts = exhaustive_partition(d, k, sizes, pins)
    if parts is None:
        return SearchResult(Status.NONE, nodes=attempts, note="exhaustive")
    return SearchResult(Status.FOUND, _certificate(d, parts, k, sizes, pins), nodes=attempts,
                        note="exhaustive fallback")


# -- paths of prescribed lengths --------------------------------------------


@dataclass(frozen=True)
class PathLinkSpec:
    """Terminal pairs ``(x_i, y_i)`` and vertex counts ``l_i`` of the paths."""

    pairs: tuple[tuple[int, int], ...]
    lengths: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        object.__setattr__(self, "lengths", tuple(self.lengths))

    def validate(self, n: int) -> None:
        if not self.pairs or len(self.pairs) != len(self.lengths):
            raise BadSpec("one length per terminal pair is required")
        ends = [v for p in self.pairs for v in p]
        if len(set(ends)) != len(ends):
            raise BadSpec(f"terminals must be pairwise distinct: {self.pairs}")
        if any(not 0 <= v < n for v in ends):
            raise BadSpec(f"terminal out of range: {self.pairs}")
        if any(l < 2 for l in self.lengths):
            raise BadSpec(f"every path needs at least 2 vertices: {self.lengths}")
        if sum(self.lengths) > n:
            raise BadSpec(f"lengths sum to {sum(self.lengths)} > n={n}")


class _Budget(Exception):
    pass


def _search_paths(d: Digraph, pairs, lengths, budget: int | None):
    """Memoised DFS over (path index, current end, occupied set, steps left)."""
    ends = mask_of(v for p in pairs for v in p)
    t = len(pairs)
    dead: set = set()
    nodes = 0
    interiors_after = [sum(l - 2 for l in lengths[i + 1:]) for i in range(t)]

    def extend(i: int, cur: int, occupied: int, left: int, path: list[int]):
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Budget
        key = (i, cur, occupied, left)
        if key in dead:
            return None
        x, y = pairs[i]
        if left == 1:
            if d.out_rows[cur] >> y & 1:
                rest = start(i + 1, occupied)
                if rest is not None:
                    return [tuple(path) + (y,)] + rest
            dead.add(key)
            return None
        free = d.all_mask & ~occupied
        if free.bit_count() < left - 1 + interiors_after[i]:
            dead.add(key)
            return None
        for v in bits(d.out_rows[cur] & free):
            path.append(v)
            got = extend(i, v, occupied | 1 << v, left - 1, path)
            path.pop()
            if got is not None:
                return got
        dead.add(key)
        return None

    def start(i: int, occupied: int):
        if i == t:
            return []
        return extend(i, pairs[i][0], occupied, lengths[i] - 1, [pairs[i][0]])

    try:
        found = start(0, ends)
    except _Budget:
        return "budget", nodes
    return found, nodes


def linked_paths_with_lengths(d: Digraph, spec: PathLinkSpec, budget: int | None = None) -> SearchResult:
    """Vertex-disjoint ``x_i -> y_i`` paths with exactly ``l_i`` vertices each.

    The search is a memoised DFS over occupied vertex sets.  It is exact for
    ``n <= 12``; beyond that it runs under a node budget and reports
    ``UNKNOWN`` when the budget runs out.
    """
    spec.validate(d.n)
    if len(spec.pairs) == 1 and spec.lengths[0] == d.n:
        x, y = spec.pairs[0]
        return hamiltonian_path(d, x, y, budget)
    if budget is None and d.n > LINKPATH_EXHAUSTIVE_N:
        budget = LINKPATH_NODE_BUDGET
    found, nodes = _search_paths(d, spec.pairs, spec.lengths, budget)
    return _path_result(d, found, nodes)


def hamiltonian_path(d: Digraph, x: int, y: int, budget: int | None = None) -> SearchResult:
    """A Hamiltonian ``x -> y`` path, via the same memoised search."""
    if x == y:
        raise BadSpec("endpoints must differ")
    if budget is None and d.n > LINKPATH_EXHAUSTIVE_N:
        budget = LINKPATH_NODE_BUDGET
    found, nodes = _search_paths(d, ((x, y),), (d.n,), budget)
    return _path_result(d, found, nodes)


def _path_result(d, found, nodes) -> SearchResult:
    if found == "budget":
        return SearchResult(Status.UNKNOWN, nodes=nodes, note="node budget exhausted")
    if found is None:
        return SearchResult(Status.NONE, nodes=nodes)
    system = PathSystem(tuple(found))
    if not system.validate(d):
        raise ConsistencyError("path search produced an invalid path system")
    return SearchResult(Status.FOUND, system, nodes=nodes)
