"""Almost dominating paths and sparse linkage sets in near-semicomplete digraphs.

``almost_dominating`` is the greedy path construction: starting from ``x``
it repeatedly appends the out-neighbour of the current end that has the most
in-neighbours among the still uncovered out-neighbours, roughly halving the
uncovered set at every step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .connectivity import FROM_SET, TO_SET, set_k_connected
from .core import Digraph, bits, mask_of
from .errors import ConsistencyError, NotFoundExhaustive, SearchIncomplete

IN_DOMINATING = "A"
OUT_DOMINATING = "B"
SPARSE_EXHAUSTIVE_N = 16


def near_semicomplete_defect(d: Digraph, within: int | None = None) -> int:
    """``ell = |V| - delta(D)`` so that ``delta(D) >= |V| - ell`` holds with equality."""
    w = d.all_mask if within is None else within
    size = w.bit_count()
    if size == 0:
        return 0
    delta = min(((d.out_rows[v] | d.in_rows[v]) & w).bit_count() for v in bits(w))
    return size - delta


def residue_bound(c: int, degree: int, ell: int) -> Fraction:
    """``2^(1-c) * degree + 2 * ell``."""
    return Fraction(2, 2**c) * degree + 2 * ell


@dataclass(frozen=True)
class DominatingStructure:
    kind: str                     # "A": path from x, "B": path into x
    path: tuple[int, ...]
    endpoint: int
    uncovered: tuple[int, ...]
    x: int
    c: int
    ell: int
    bound: Fraction

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self.path)

    def holds(self) -> bool:
        return len(self.path) <= self.c and len(self.uncovered) <= self.bound


def almost_dominating(d: Digraph, x: int, c: int, kind: str = IN_DOMINATING,
                      exclude: Iterable[int] = (), ell: int | None = None) -> DominatingStructure:
    """Greedy almost dominating path of at most ``c`` vertices.

    Kind ``"A"``: a path ``x = v_1 -> ... -> v_r`` such that all but at most
    ``2^(1-c) d+(x) + 2 ell`` vertices are in-neighbours of some ``v_j``.
    Kind ``"B"`` is the mirror image (out-neighbours, ``d-(x)``, path ending at ``x``).

    ``exclude`` removes vertices from ``D`` before the construction; ``ell``
    defaults to ``|V| - delta`` of the remaining digraph and, if given, must
    not be smaller than that.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    if kind not in (IN_DOMINATING, OUT_DOMINATING):
        raise ValueError("kind must be 'A' or 'B'")
    w = d.all_mask & ~mask_of(exclude)
    if not w >> x & 1:
        raise ValueError(f"anchor {x} is excluded or out of range")
    actual = near_semicomplete_defect(d, w)
    if ell is None:
        ell = actual
    elif ell < actual:
        raise ValueError(f"declared ell={ell} but delta(D) = n - {actual}")
    if kind == IN_DOMINATING:
        fwd, back = d.out_rows, d.in_rows
    else:
        fwd, back = d.in_rows, d.out_rows
    degree = (fwd[x] & w).bit_count()

    path = [x]
    uncovered = w & ~back[x]
    while len(path) < c:
        i = len(path)
        if uncovered.bit_count() > Fraction(2, 2**i) * degree + (2 - Fraction(2, 2**i)) * ell:
            raise ConsistencyError(f"step {i}: residue above the halving bound")
        step = uncovered & fwd[path[-1]]          # U \ U'
        if not step:
            break
        size = step.bit_count()
        best, best_deg = -1, -1
        for v in bits(step):
            dv = (back[v] & step).bit_count()
            if dv > best_deg:
                best, best_deg = v, dv
        if 2 * best_deg < size - ell:
            raise ConsistencyError("greedy pick has fewer than (|U \\ U'| - ell)/2 in-neighbours")
        path.append(best)
        uncovered &= ~back[best]
    bound = residue_bound(c, degree, ell)
    out_path = tuple(path) if kind == IN_DOMINATING else tuple(reversed(path))
    ds = DominatingStructure(kind, out_path, path[-1], tuple(bits(uncovered)), x, c, ell, bound)
    if not ds.holds():
        raise ConsistencyError(f"residue {len(ds.uncovered)} exceeds bound {bound}")
    return ds


def residue(d: Digraph, kind: str, members: Iterable[int], within: int | None = None) -> frozenset[int]:
    """Directly recompute ``V \\ U N-(v)`` (kind A) or ``V \\ U N+(v)`` (kind B)."""
    w = d.all_mask if within is None else within
    rows = d.in_rows if kind == IN_DOMINATING else d.out_rows
    covered = 0
    for v in members:
        covered |= rows[v]
    return frozenset(bits(w & ~covered))


def disjoint_dominating_structures(d: Digraph, requests: Sequence[tuple[str, int]], c: int,
                                   exclude: Iterable[int] = ()) -> list[DominatingStructure]:
    """Build structures one after another, each in ``D`` minus everything used so far.

    ``requests`` lists ``(kind, anchor)``; the k-th structure is computed in
    ``D - (exclude | members of structures 1..k-1)``.
    """
    used = set(exclude)
    out = []
    for kind, anchor in requests:
        if anchor in used:
            raise ValueError(f"anchor {anchor} already used")
        ds = almost_dominating(d, anchor, c, kind, exclude=used)
        used |= ds.members
        out.append(ds)
    return out


@dataclass(frozen=True)
class SparseLinkagePair:
    """``A`` reaches every vertex ``k``-robustly, every vertex reaches ``B`` ``k``-robustly."""

    A: tuple[int, ...]
    B: tuple[int, ...]
    k: int
    ell: int

    @property
    def budget(self) -> int:
        return 2 * self.k + self.ell - 2

    def verify(self, d: Digraph) -> bool:
        return _sources_ok(d, self.A, self.k) and _sinks_ok(d, self.B, self.k)


def _sinks_ok(d, b, k):
    return all(set_k_connected(d, w, b, k, TO_SET) for w in range(d.n))


def _sources_ok(d, a, k):
    return all(set_k_connected(d, w, a, k, FROM_SET) for w in range(d.n))


def _iterated_picks(d: Digraph, rows, size: int) -> tuple[int, ...]:
    remaining = d.all_mask
    picked = []
    for _ in range(size):
        best, best_deg = -1, -1
        for v in bits(remaining):
            dv = (rows[v] & remaining).bit_count()
            if dv > best_deg:
                best, best_deg = v, dv
        picked.append(best)
        remaining &= ~(1 << best)
    return tuple(sorted(picked))


def sparse_linkage(d: Digraph, k: int) -> SparseLinkagePair:
    """Sets ``A, B`` of size at most ``2k + ell - 2`` such that ``(A, w)`` and
    ``(w, B)`` are ``k``-connected for every vertex ``w``.

    Greedy candidates (sources by iterated out-degree, sinks by iterated
    in-degree) are verified exactly; on failure, subsets of the full budget
    size are searched exhaustively when ``n <= 16``.  Such sets always
    exist, so an exhaustive miss raises NotFoundExhaustive.
    """
    ell = near_semicomplete_defect(d)
    budget = max(2 * k + ell - 2, 1)
    if budget >= d.n:
        allv = tuple(range(d.n))
        return SparseLinkagePair(allv, allv, k, ell)
    a = _iterated_picks(d, d.out_rows, budget)
    b = _iterated_picks(d, d.in_rows, budget)
    a_ok, b_ok = _sources_ok(d, a, k), _sinks_ok(d, b, k)
    if a_ok and b_ok:
        return SparseLinkagePair(a, b, k, ell)
    if d.n > SPARSE_EXHAUSTIVE_N:
        raise SearchIncomplete(f"greedy candidates failed verification and n={d.n} > {SPARSE_EXHAUSTIVE_N}")
    # adding vertices never hurts, so subsets of exactly the budget size suffice
    if not a_ok:
        a = next((s for s in combinations(range(d.n), budget) if _sources_ok(d, s, k)), None)
    if not b_ok:
        b = next((s for s in combinations(range(d.n), budget) if _sinks_ok(d, s, k)), None)
    if a is None or b is None:
        raise NotFoundExhaustive(f"no sparse linkage pair within size {budget} (k={k}, ell={ell})")
    return SparseLinkagePair(a, b, k, ell)
