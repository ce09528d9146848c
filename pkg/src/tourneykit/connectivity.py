"""Exact strong connectivity, Menger certificates, linkage and distances.

All flow computations use the vertex-splitting construction with unit vertex
capacities.  Augmenting paths are found by breadth-first search in the
residual network, scanning neighbours in increasing index order, so every
certificate is deterministic.

Most functions accept ``within``: a vertex bitmask restricting the digraph to
the induced subdigraph on those vertices, which avoids materialising
``D[U]`` for the many subset checks done elsewhere in the package.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Digraph, bits, mask_of
from .errors import DuplicateEndpoints
from .results import SearchResult, Status

TO_SET = "to-set"
FROM_SET = "from-set"

# exhaustive regime of is_k_linked
LINK_MAX_PAIRS = 4
LINK_MAX_N = 16
LINK_NODE_BUDGET = 200_000

_SINK = -2


def _within(d: Digraph, within: int | None) -> int:
    return d.all_mask if within is None else within


# -- reachability and components --------------------------------------------


def reach(rows: Sequence[int], start: int, within: int) -> int:
    """Bitmask of vertices reachable from the bitmask ``start`` using ``rows``."""
    seen = start & within
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def is_strongly_connected(d: Digraph, within: int | None = None) -> bool:
    w = _within(d, within)
    if w == 0:
        return True
    v = (w & -w).bit_length() - 1
    return reach(d.out_rows, 1 << v, w) == w and reach(d.in_rows, 1 << v, w) == w


def strongly_connected_components(d: Digraph, within: int | None = None) -> list[tuple[int, ...]]:
    """Tarjan's algorithm; components come out in reverse topological order
    of the condensation (sink components first)."""
    w = _within(d, within)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[tuple[int, ...]] = []
    counter = 0
    for root in bits(w):
        if root in index:
            continue
        work = [(root, iter(bits(d.out_rows[root] & w)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(bits(d.out_rows[u] & w))))
                    advanced = True
                    break
                if u in on_stack:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == v:
                        break
                out.append(tuple(sorted(comp)))
    return out


def unreachable_pair(d: Digraph, within: int | None = None) -> tuple[int, int] | None:
    """Lowest ordered pair ``(u, v)`` with no ``u -> v`` path, or None."""
    w = _within(d, within)
    for u in bits(w):
        r = reach(d.out_rows, 1 << u, w)
        if r != w:
            missing = w & ~r
            return u, (missing & -missing).bit_length() - 1
    return None


# -- vertex-disjoint path flows ---------------------------------------------


def _disjoint_paths(rows, n, s, limit, within, sink=None, targets=0):
    """Max number (capped at ``limit``) of paths from ``s`` that are disjoint
    apart from ``s`` (and ``sink`` in pair mode).

    Pair mode (``sink`` given): paths end at ``sink``, which has unbounded
    capacity.  Set mode: paths end at distinct vertices of ``targets``.
    Returns ``(value, paths, separator)``; ``separator`` is the vertex side of
    a minimum cut and is only meaningful when ``value < limit``.
    """
    pred = [-1] * n
    succ = [-1] * n
    s_succ: set[int] = set()
    s_bit = 1 << s
    pair_mode = sink is not None
    value = 0
    visited = bytearray(2 * n)
    while value < limit:
        visited = bytearray(2 * n)
        parent = [-1] * (2 * n)
        start = 2 * s + 1
        visited[start] = 1
        queue = deque([start])
        end = None
        terminal = False
        while queue and end is None:
            st = queue.popleft()
            x = st >> 1
            if st & 1:
                # real arcs have unbounded capacity so that minimum cuts
                # consist of vertex arcs only; the direct arc s -> sink is
                # the exception (capacity 1)
                cand = rows[x] & within & ~s_bit
                if x == s and pair_mode and sink in s_succ:
                    cand &= ~(1 << sink)
                for c in bits(cand):
                    nst = 2 * c
                    if visited[nst]:
                        continue
                    visited[nst] = 1
                    parent[nst] = st
                    if pair_mode and c == sink:
                        end = nst
                        break
                    queue.append(nst)
                if end is not None:
                    break
                if x != s:
                    if not pair_mode and targets >> x & 1 and succ[x] != _SINK:
                        end = st
                        terminal = True
                        break
                    if pred[x] != -1 and not visited[2 * x]:
                        visited[2 * x] = 1
                        parent[2 * x] = st
                        queue.append(2 * x)
            else:
                if pred[x] == -1:
                    nst = 2 * x + 1
                else:
                    nst = 2 * pred[x] + 1
                if not visited[nst]:
                    visited[nst] = 1
                    parent[nst] = st
                    queue.append(nst)
        if end is None:
            break
        path = [end]
        while path[-1] != start:
            path.append(parent[path[-1]])
        path.reverse()
        for a, b in zip(path, path[1:]):
            x, y = a >> 1, b >> 1
            if a & 1 and not b & 1:
                if x == y:
                    continue  # reverse of an internal arc
                if x == s:
                    s_succ.add(y)
                else:
                    succ[x] = y
                if not (pair_mode and y == sink):
                    pred[y] = x
            elif not a & 1 and b & 1 and x != y:
                # cancel flow on arc y -> x
                if y == s:
                    s_succ.discard(x)
                elif succ[y] == x:
                    succ[y] = -1
                if pred[x] == y:
                    pred[x] = -1
        if terminal:
            succ[end >> 1] = _SINK
        value += 1
    paths = []
    for c in sorted(s_succ):
        p = [s]
        x = c
        while True:
            p.append(x)
            if pair_mode:
                if x == sink:
                    break
            elif succ[x] == _SINK:
                break
            x = succ[x]
        paths.append(tuple(p))
    separator = ()
    if value < limit:
        separator = tuple(x for x in bits(within)
                          if x != s and x != sink and visited[2 * x] and not visited[2 * x + 1])
    return value, tuple(paths), separator


@dataclass(frozen=True)
class MengerCertificate:
    """Either ``k`` internally disjoint ``u -> v`` paths or a separator of size ``< k``.

    When ``u -> v`` is an arc the pair is ``k``-connected for every ``k``
    (no vertex set avoiding ``u, v`` can cut it); ``paths`` then holds the
    direct arc plus whatever other disjoint paths exist, possibly fewer than ``k``.
    """

    u: int
    v: int
    k: int
    connected: bool
    paths: tuple[tuple[int, ...], ...]
    separator: tuple[int, ...] | None

    @property
    def direct(self) -> bool:
        return (self.u, self.v) in self.paths

    def __bool__(self):
        return self.connected


def pair_k_connected(d: Digraph, u: int, v: int, k: int, within: int | None = None) -> MengerCertificate:
    """Is the ordered pair ``(u, v)`` ``k``-connected in ``D``?"""
    if u == v:
        raise ValueError("pair endpoints must differ")
    w = _within(d, within) | 1 << u | 1 << v
    value, paths, sep = _disjoint_paths(d.out_rows, d.n, u, max(k, 0), w, sink=v)
    if value >= k or d.out_rows[u] >> v & 1:
        return MengerCertificate(u, v, k, True, paths, None)
    return MengerCertificate(u, v, k, False, paths, sep)


def local_connectivity(d: Digraph, u: int, v: int, limit: int | None = None, within: int | None = None) -> int:
    """Maximum number of internally disjoint ``u -> v`` paths (capped at ``limit``)."""
    w = _within(d, within)
    if limit is None:
        limit = d.n
    return _disjoint_paths(d.out_rows, d.n, u, limit, w, sink=v)[0]


@dataclass(frozen=True)
class ConnectivityReport:
    kappa: int
    witness_pair: tuple[int, int] | None
    witness_separator: tuple[int, ...] | None


def _degree_witness(d: Digraph, k: int, w: int):
    """A vertex with fewer than k out- or in-neighbours inside ``w`` gives a cut directly."""
    for x in bits(w):
        outs = d.out_rows[x] & w
        if outs.bit_count() < k:
            rest = w & ~outs & ~(1 << x)
            y = (rest & -rest).bit_length() - 1
            return (x, y), tuple(bits(outs))
        ins = d.in_rows[x] & w
        if ins.bit_count() < k:
            rest = w & ~ins & ~(1 << x)
            y = (rest & -rest).bit_length() - 1
            return (y, x), tuple(bits(ins))
    return None


def weak_pair(d: Digraph, k: int, within: int | None = None):
    """First ordered pair that is not ``k``-connected, as ``((u, v), separator)``.

    Uses pivots: if ``S`` (``|S| < k``) separates ``u`` from ``v``, one of any
    ``k`` fixed vertices, say ``p``, lies outside ``S``; then ``S`` separates
    ``u`` from ``p`` or ``p`` from ``v``.  So only pairs through the first ``k``
    vertices need a flow.  Returns None when every pair is ``k``-connected;
    does not check the ``|V| >= k + 1`` clause.
    """
    w = _within(d, within)
    if k <= 0:
        return None
    if w.bit_count() > k:
        hit = _degree_witness(d, k, w)
        if hit is not None:
            return hit
    if k == 1:
        pair = unreachable_pair(d, w)
        return None if pair is None else (pair, ())
    pivots = list(bits(w))[:k]
    for p in pivots:
        for x in bits(w & ~(1 << p)):
            if not d.out_rows[p] >> x & 1:
                val, _, sep = _disjoint_paths(d.out_rows, d.n, p, k, w, sink=x)
                if val < k:
                    return (p, x), sep
            if not d.out_rows[x] >> p & 1:
                val, _, sep = _disjoint_paths(d.out_rows, d.n, x, k, w, sink=p)
                if val < k:
                    return (x, p), sep
    return None


def is_strongly_k_connected(d: Digraph, k: int, within: int | None = None) -> bool:
    """``|V| >= k + 1`` and every ordered pair is ``k``-connected."""
    w = _within(d, within)
    if w.bit_count() < k + 1:
        return False
    return weak_pair(d, k, w) is None


def connectivity_report(d: Digraph, within: int | None = None) -> ConnectivityReport:
    """Exact vertex connectivity ``kappa`` (largest ``k`` with ``D`` strongly ``k``-connected)."""
    w = _within(d, within)
    size = w.bit_count()
    if size == 0:
        return ConnectivityReport(0, None, None)
    best = size - 1
    witness = None
    for i, p in enumerate(bits(w)):
        if i > best:
            break
        for x in bits(w & ~(1 << p)):
            for a, b in ((p, x), (x, p)):
                if d.out_rows[a] >> b & 1:
                    continue
                # a non-adjacent pair has at most size - 2 disjoint paths,
                # so the witness is always set when kappa < size - 1
                val, _, sep = _disjoint_paths(d.out_rows, d.n, a, best, w, sink=b)
                if val < best:
                    best = val
                    witness = ((a, b), sep)
    if witness is None:
        return ConnectivityReport(best, None, None)
    return ConnectivityReport(best, witness[0], tuple(witness[1]))


def set_k_connected(d: Digraph, v: int, targets: Iterable[int], k: int,
                    direction: str = TO_SET, within: int | None = None) -> bool:
    """``(v, U)`` (``to-set``) or ``(U, v)`` (``from-set``) is ``k``-connected.

    ``U`` may contain vertices outside ``within``; only ``U & within`` counts.
    """
    tmask = mask_of(targets)
    if tmask >> v & 1:
        return True
    if k <= 0:
        return True
    w = _within(d, within) | 1 << v
    tmask &= w
    if tmask.bit_count() < k:
        return False
    if direction == TO_SET:
        rows = d.out_rows
    elif direction == FROM_SET:
        rows = d.in_rows
    else:
        raise ValueError(f"direction must be {TO_SET!r} or {FROM_SET!r}")
    value, _, _ = _disjoint_paths(rows, d.n, v, k, w, targets=tmask)
    return value >= k


def glue_check(d: Digraph, core: Iterable[int], extra: Iterable[int], k: int) -> bool:
    """Gluing predicate for attaching ``extra`` (U) to a strongly ``k``-connected ``core`` (W).

    True iff ``D[W]`` is strongly ``k``-connected and every ``u`` in ``U`` has
    ``(u, W)`` and ``(W, u)`` ``k``-connected in ``D[U | W]``.  A true answer
    is re-verified by a direct check of ``D[U | W]``; disagreement raises
    ConsistencyError.
    """
    from .errors import ConsistencyError

    wmask, umask = mask_of(core), mask_of(extra)
    if wmask & umask:
        raise ValueError("core and extra must be disjoint")
    union = wmask | umask
    if not is_strongly_k_connected(d, k, wmask):
        return False
    core_list = list(bits(wmask))
    for u in bits(umask):
        if not set_k_connected(d, u, core_list, k, TO_SET, union):
            return False
        if not set_k_connected(d, u, core_list, k, FROM_SET, union):
            return False
    if not is_strongly_k_connected(d, k, union):
        raise ConsistencyError("glue predicate holds but the union is not strongly k-connected")
    return True


# -- paths, linkage, distances -----------------------------------------------


@dataclass(frozen=True)
class PathSystem:
    paths: tuple[tuple[int, ...], ...]
    kind: str = "fully-disjoint"  # or "internally-disjoint"

    def validate(self, d: Digraph) -> bool:
        for p in self.paths:
            if len(set(p)) != len(p):
                return False
            if any(not d.has_arc(a, b) for a, b in zip(p, p[1:])):
                return False
        if self.kind == "fully-disjoint":
            allv = [v for p in self.paths for v in p]
            return len(allv) == len(set(allv))
        inner = [v for p in self.paths for v in p[1:-1]]
        ends = {p[0] for p in self.paths} | {p[-1] for p in self.paths}
        return len(inner) == len(set(inner)) and not ends & set(inner)


def is_k_linked(d: Digraph, pairs: Sequence[tuple[int, int]], budget: int | None = None) -> SearchResult:
    """Vertex-disjoint ``x_i -> y_i`` paths for all pairs.

    Exact for ``t <= 4`` pairs and ``n <= 16``: the search only enumerates
    chordless paths (a chord can always be shortcut without hurting the
    remaining pairs) and memoises failures on the set of used vertices.
    Outside that regime the same search runs under a node budget and may
    return ``Status.UNKNOWN``.
    """
    ends = [v for p in pairs for v in p]
    if len(set(ends)) != len(ends):
        raise DuplicateEndpoints(f"endpoints must be distinct: {list(pairs)}")
    exhaustive = len(pairs) <= LINK_MAX_PAIRS and d.n <= LINK_MAX_N
    if budget is None:
        budget = None if exhaustive else LINK_NODE_BUDGET
    terminals = mask_of(ends)
    failed: set[tuple[int, int]] = set()
    nodes = 0

    class _Budget(Exception):
        pass

    def route(i: int, used: int):
        nonlocal nodes
        if i == len(pairs):
            return []
        if (i, used) in failed:
            return None
        x, y = pairs[i]
        blocked = used | (terminals & ~(1 << x | 1 << y))
        path = [x]

        def extend(cur: int, occupied: int, chord: int):
            nonlocal nodes
            nodes += 1
            if budget is not None and nodes > budget:
                raise _Budget
            if d.out_rows[cur] >> y & 1 and not chord >> y & 1:
                path.append(y)
                rest = route(i + 1, used | occupied | 1 << y)
                if rest is not None:
                    return [tuple(path)] + rest
                path.pop()
            cand = d.out_rows[cur] & ~occupied & ~blocked & ~chord & ~(1 << y)
            for c in bits(cand):
                path.append(c)
                got = extend(c, occupied | 1 << c, chord | d.out_rows[cur])
                if got is not None:
                    return got
                path.pop()
            return None

        res = extend(x, 1 << x, 0)
        if res is None:
            failed.add((i, used))
        return res

    try:
        got = route(0, 0)
    except _Budget:
        return SearchResult(Status.UNKNOWN, nodes=nodes, note="node budget exhausted")
    if got is None:
        status = Status.NONE if exhaustive or budget is None else Status.UNKNOWN
        return SearchResult(status, nodes=nodes)
    return SearchResult(Status.FOUND, PathSystem(tuple(got)), nodes=nodes)


def distances_from(d: Digraph, s: int, within: int | None = None) -> dict[int, int]:
    w = _within(d, within)
    dist = {s: 0}
    seen = 1 << s
    frontier = seen
    level = 0
    while frontier:
        level += 1
        nxt = 0
        for v in bits(frontier):
            nxt |= d.out_rows[v]
        frontier = nxt & w & ~seen
        seen |= frontier
        for v in bits(frontier):
            dist[v] = level
    return dist


def diameter(d: Digraph, within: int | None = None) -> float:
    """Largest shortest-path distance over ordered pairs; ``math.inf`` if not strongly connected."""
    w = _within(d, within)
    size = w.bit_count()
    best = 0
    for s in bits(w):
        dist = distances_from(d, s, w)
        if len(dist) < size:
            return math.inf
        best = max(best, max(dist.values()))
    return best


def shortest_path(d: Digraph, s: int, t: int, within: int | None = None) -> tuple[int, ...] | None:
    w = _within(d, within)
    parent = {s: None}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        if v == t:
            out = []
            while v is not None:
                out.append(v)
                v = parent[v]
            return tuple(reversed(out))
        for c in bits(d.out_rows[v] & w):
            if c not in parent:
                parent[c] = v
                queue.append(c)
    return None
