"""Digraph and tournament representation, generators and serialization.

Adjacency is stored as one Python integer per vertex used as a bitset:
bit ``v`` of ``out_rows[u]`` is set iff ``u -> v`` is an arc.  Set operations
on neighbourhoods are then single integer operations and ``int.bit_count``
gives the popcount.
"""

from __future__ import annotations

import hashlib
import json
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BadModulus,
    DoublePair,
    MissingPair,
    OutOfRange,
    SelfArc,
    TooLarge,
)

MAX_ENUMERATION_N = 7


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Digraph:
    """Immutable simple digraph on vertices ``0..n-1``.

    Two-cycles are allowed (near-semicomplete digraphs need them); self-arcs
    are not.  ``vertex_map`` records, for an induced subdigraph, the index of
    each vertex in the parent digraph.
    """

    __slots__ = ("n", "out_rows", "in_rows", "labels", "vertex_map", "meta")

    def __init__(
        self,
        n: int,
        arcs: Iterable[tuple[int, int]] = (),
        labels: Sequence[str] | None = None,
        meta: dict | None = None,
    ):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRange(f"arc {(u, v)} outside [0, {n})")
            if u == v:
                raise SelfArc((u, v))
            out[u] |= 1 << v
        self._init_rows(n, out, labels, None, meta)

    def _init_rows(self, n, out, labels, vertex_map, meta):
        self.n = n
        self.out_rows = tuple(out)
        inr = [0] * n
        for u in range(n):
            for v in bits(out[u]):
                inr[v] |= 1 << u
        self.in_rows = tuple(inr)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must have one entry per vertex")
        self.vertex_map = tuple(vertex_map) if vertex_map is not None else None
        self.meta = dict(meta or {})

    @classmethod
    def from_rows(cls, out_rows, labels=None, vertex_map=None, meta=None):
        """Build directly from out-neighbour bitsets (no self-arc check beyond a scan)."""
        obj = cls.__new__(cls)
        n = len(out_rows)
        for v, row in enumerate(out_rows):
            if row >> v & 1:
                raise SelfArc((v, v))
            if row >> n:
                raise OutOfRange(f"row {v} has bits beyond n={n}")
        obj._init_rows(n, list(out_rows), labels, vertex_map, meta)
        return obj

    # -- accessors ---------------------------------------------------------

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_rows[u] >> v & 1)

    def out_neighbors(self, v: int) -> list[int]:
        return list(bits(self.out_rows[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(bits(self.in_rows[v]))

    def out_degree(self, v: int) -> int:
        return self.out_rows[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_rows[v].bit_count()

    def degree(self, v: int) -> int:
        """``|N+(v) | N-(v)|``: number of distinct neighbours."""
        return (self.out_rows[v] | self.in_rows[v]).bit_count()

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def min_out_degree(self) -> int:
        return min((self.out_degree(v) for v in range(self.n)), default=0)

    def min_in_degree(self) -> int:
        return min((self.in_degree(v) for v in range(self.n)), default=0)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.out_rows[u])]

    def num_arcs(self) -> int:
        return sum(r.bit_count() for r in self.out_rows)

    def is_semicomplete(self) -> bool:
        return self.n <= 1 or self.min_degree() == self.n - 1

    def is_tournament(self) -> bool:
        if not self.is_semicomplete():
            return False
        return all(self.out_rows[v] & self.in_rows[v] == 0 for v in range(self.n))

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.arcs():
            a[u, v] = 1
        return a

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out_rows == other.out_rows

    def __hash__(self):
        return hash((self.n, self.out_rows))

    def __repr__(self):
        kind = type(self).__name__
        return f"{kind}(n={self.n}, arcs={self.num_arcs()})"


class Tournament(Digraph):
    """A digraph orienting every unordered vertex pair exactly once."""

    __slots__ = ()

    def __init__(self, n, arcs=(), labels=None, meta=None):
        arcs = list(arcs)
        seen: dict[tuple[int, int], tuple[int, int]] = {}
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRange(f"arc {(u, v)} outside [0, {n})")
            if u == v:
                raise SelfArc((u, v))
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DoublePair(key)
            seen[key] = (u, v)
        if len(seen) != n * (n - 1) // 2:
            for u in range(n):
                for v in range(u + 1, n):
                    if (u, v) not in seen:
                        raise MissingPair((u, v))
        super().__init__(n, arcs, labels=labels, meta=meta)

    @classmethod
    def from_rows(cls, out_rows, labels=None, vertex_map=None, meta=None):
        obj = super().from_rows(out_rows, labels, vertex_map, meta)
        full = obj.all_mask
        for v in range(obj.n):
            o, i = obj.out_rows[v], obj.in_rows[v]
            if o & i:
                u = (o & i & -(o & i)).bit_length() - 1
                raise DoublePair((min(u, v), max(u, v)))
            missing = full & ~(o | i | 1 << v)
            if missing:
                u = (missing & -missing).bit_length() - 1
                raise MissingPair((min(u, v), max(u, v)))
        return obj

    @classmethod
    def from_digraph(cls, d: Digraph) -> "Tournament":
        return cls.from_rows(d.out_rows, d.labels, d.vertex_map, d.meta)

    @classmethod
    def _unchecked(cls, out_rows, meta=None):
        obj = cls.__new__(cls)
        obj._init_rows(len(out_rows), list(out_rows), None, None, meta)
        return obj


# -- constructors and generators -------------------------------------------


def make_tournament(n: int, arcs: Iterable[tuple[int, int]], **kw) -> Tournament:
    """Validate ``arcs`` as a tournament on ``n`` vertices.

    Raises MissingPair, DoublePair or SelfArc naming the offending pair.
    """
    return Tournament(n, arcs, **kw)


def transitive_tournament(n: int) -> Tournament:
    """``u -> v`` iff ``u < v``; vertex 0 is the source, ``n-1`` the sink."""
    rows = [((1 << n) - 1) & ~((1 << (u + 1)) - 1) for u in range(n)]
    return Tournament._unchecked(rows, meta={"generator": "transitive", "n": n})


def cycle_digraph(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)] if n > 1 else [])


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


def paley_tournament(q: int) -> Tournament:
    """Quadratic-residue tournament: ``u -> v`` iff ``v - u`` is a nonzero square mod ``q``."""
    if not _is_prime(q) or q % 4 != 3:
        raise BadModulus(f"q={q} must be a prime congruent to 3 mod 4")
    squares = {(x * x) % q for x in range(1, q)}
    rows = [mask_of((u + r) % q for r in squares) for u in range(q)]
    return Tournament.from_rows(rows, meta={"generator": "paley", "q": q})


def _raw_bits(seed: int, count: int) -> Iterator[int]:
    """Frozen bit stream: 64-bit words of PCG64(seed), each consumed LSB first."""
    words = np.random.PCG64(seed).random_raw((count + 63) // 64) if count else []
    for p in range(count):
        yield int(words[p // 64]) >> (p % 64) & 1


def random_tournament(n: int, seed: int) -> Tournament:
    """Uniform random labeled tournament.

    Pair ``(u, v)``, ``u < v``, at row-major position ``p`` is oriented
    ``u -> v`` iff bit ``p`` of the frozen stream (see ``_raw_bits``) is 1.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = [0] * n
    stream = _raw_bits(seed, comb(n, 2))
    for u in range(n):
        for v in range(u + 1, n):
            if next(stream):
                rows[u] |= 1 << v
            else:
                rows[v] |= 1 << u
    return Tournament._unchecked(rows, meta={"generator": "random", "n": n, "seed": seed})


def random_digraph(n: int, seed: int, p: float = 0.5) -> Digraph:
    """Each ordered pair becomes an arc independently with probability ``p``.

    Ordered pairs are visited row-major, skipping the diagonal; one raw
    64-bit PCG64 word per pair is compared with ``p * 2**64``.
    """
    threshold = int(p * 2**64)
    words = np.random.PCG64(seed).random_raw(n * (n - 1)) if n > 1 else []
    rows = [0] * n
    i = 0
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if int(words[i]) < threshold:
                rows[u] |= 1 << v
            i += 1
    return Digraph.from_rows(rows, meta={"generator": "random_digraph", "n": n, "seed": seed, "p": p})


def _rows_from_code(n: int, code: int, m: int) -> list[int]:
    rows = [0] * n
    p = m - 1
    for u in range(n):
        for v in range(u + 1, n):
            if code >> p & 1:
                rows[u] |= 1 << v
            else:
                rows[v] |= 1 << u
            p -= 1
    return rows


def enumerate_labeled_tournaments(n: int) -> Iterator[Tournament]:
    """Every labeled tournament on ``n`` vertices, lexicographic in the orientation bitstring.

    The bitstring lists pairs ``(u, v)``, ``u < v``, row-major; its first
    character is the most significant, so enumeration order is the integer
    order of the compact encoding.
    """
    if n > MAX_ENUMERATION_N:
        raise TooLarge(f"n={n} > {MAX_ENUMERATION_N}: 2^C(n,2) instances")
    m = comb(n, 2)
    for code in range(1 << m):
        yield Tournament._unchecked(_rows_from_code(n, code, m))


def labeled_tournament(n: int, code: int) -> Tournament:
    """The ``code``-th tournament of ``enumerate_labeled_tournaments(n)``."""
    m = comb(n, 2)
    if not 0 <= code < 1 << m:
        raise OutOfRange(f"code {code} outside [0, 2^{m})")
    return Tournament._unchecked(_rows_from_code(n, code, m))


def count_labeled_tournaments(n: int) -> int:
    return 1 << comb(n, 2)


def induced_subdigraph(d: Digraph, vertices: Iterable[int]) -> Digraph:
    """``D[U]`` relabeled to ``0..|U|-1`` in increasing order of original index."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < d.n:
            raise OutOfRange(f"vertex {v} not in [0, {d.n})")
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(mask_of(pos[w] for w in bits(d.out_rows[v]) if w in pos))
    labels = [d.labels[v] for v in keep] if d.labels is not None else None
    cls = Tournament if isinstance(d, Tournament) else Digraph
    obj = cls.__new__(cls)
    obj._init_rows(len(keep), rows, labels, keep, None)
    return obj


def as_tournament(d: Digraph) -> Tournament:
    return d if isinstance(d, Tournament) else Tournament.from_digraph(d)


# -- serialization ---------------------------------------------------------


def to_dict(d: Digraph) -> dict:
    out = {"n": d.n, "arcs": [list(a) for a in sorted(d.arcs())]}
    meta = dict(d.meta)
    if d.labels is not None:
        meta.setdefault("labels", list(d.labels))
    out["meta"] = meta
    return out


def from_dict(data: dict) -> Digraph:
    """Parse the JSON instance format; returns a Tournament when the arcs form one."""
    n = int(data["n"])
    arcs = [(int(u), int(v)) for u, v in data.get("arcs", [])]
    meta = dict(data.get("meta") or {})
    labels = meta.get("labels")
    d = Digraph(n, arcs, labels=labels, meta=meta)
    if d.is_tournament() and len(arcs) == d.num_arcs():
        return Tournament.from_rows(d.out_rows, labels=labels, meta=meta)
    return d


def dumps(d: Digraph, indent: int | None = None) -> str:
    return json.dumps(to_dict(d), indent=indent, sort_keys=True)


def loads(text: str) -> Digraph:
    return from_dict(json.loads(text))


def save(d: Digraph, path) -> None:
    with open(path, "w") as f:
        f.write(dumps(d, indent=None) + "\n")


def load(path) -> Digraph:
    with open(path) as f:
        return loads(f.read())


def canonical_digest(d: Digraph) -> str:
    """SHA-256 of ``{"arcs": sorted arcs, "n": n}`` serialized without whitespace."""
    body = json.dumps({"arcs": [list(a) for a in sorted(d.arcs())], "n": d.n},
                      separators=(",", ":"), sort_keys=True)
    return hashlib.sha256(body.encode()).hexdigest()


def to_compact(t: Digraph) -> str:
    """``"<n>:<hex>"``; the orientation bitstring is row-major over ``u < v``,
    bit 1 meaning ``u -> v``, zero-padded on the right to a multiple of 4 and
    written most significant nibble first."""
    if not t.is_tournament():
        raise ValueError("compact format needs a tournament")
    n = t.n
    m = comb(n, 2)
    code = 0
    for u in range(n):
        for v in range(u + 1, n):
            code = code << 1 | (t.out_rows[u] >> v & 1)
    width = -(-m // 4)
    if width == 0:
        return f"{n}:"
    return f"{n}:{code << (4 * width - m):0{width}x}"


def from_compact(text: str) -> Tournament:
    head, _, hexpart = text.strip().partition(":")
    n = int(head)
    m = comb(n, 2)
    width = -(-m // 4)
    if len(hexpart) != width:
        raise ValueError(f"expected {width} hex digits for n={n}, got {len(hexpart)}")
    code = int(hexpart, 16) >> (4 * width - m) if width else 0
    return Tournament._unchecked(_rows_from_code(n, code, m))


def to_dot(d: Digraph, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(d.n):
        lines.append(f'  {v} [label="{d.label(v)}"];')
    for u, v in sorted(d.arcs()):
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
