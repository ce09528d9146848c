"""Highly connected tournaments whose strongly k-connected pieces are all large.

The vertices sit in a total order ``x_s < ... < x_1 < w* < Z^1 < ... < Z^m <
w_1 < ... < w_s' < y_1 < ... < y_s`` where each layer ``Z^i`` holds
``z^i_{j,l}`` for ``1 <= l <= j <= s`` in lexicographic order.  Every pair is
oriented forward in this order except the back arcs

    z^1_{j,l} -> x_j,   y_j -> z^m_{j,l},   z^{i+1}_{j,l} -> z^i_{j,l}.

Each layer separates the ``y``'s from the ``x``'s, which forces large
diameter and large strongly k-connected subtournaments.  Vertex index equals
position in the order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .connectivity import connectivity_report, diameter, is_strongly_k_connected, reach
from .core import Tournament, bits, mask_of
from .errors import BadSpec, TooLargeForExhaustive

EXHAUSTIVE_MAX_N = 16


@dataclass(frozen=True)
class ExtremalSpec:
    s: int
    m: int
    s_prime: int

    def __post_init__(self):
        if self.s < 2 or self.m < 2:
            raise BadSpec("need s >= 2 and m >= 2")
        if not 1 <= self.s_prime < self.block:
            raise BadSpec(f"need 1 <= s' < C(s+1,2) = {self.block}, got s'={self.s_prime}")

    @property
    def block(self) -> int:
        return comb(self.s + 1, 2)

    @property
    def n(self) -> int:
        return self.block * self.m + 2 * self.s + 1 + self.s_prime

    @property
    def meets_size_hypothesis(self) -> bool:
        return self.n >= 2 * self.block + 2 * self.s + 2

    @property
    def roles(self) -> tuple[str, ...]:
        s, m = self.s, self.m
        out = [f"x{j}" for j in range(s, 0, -1)] + ["w*"]
        out += [f"z{i}_{j},{l}" for i in range(1, m + 1) for j in range(1, s + 1) for l in range(1, j + 1)]
        out += [f"w{r}" for r in range(1, self.s_prime + 1)]
        out += [f"y{j}" for j in range(1, s + 1)]
        return tuple(out)

    def index(self, role: str) -> int:
        return self.roles.index(role)

    def x(self, j: int) -> int:
        return self.s - j

    def y(self, j: int) -> int:
        return self.n - self.s + j - 1

    def z(self, i: int, j: int, l: int) -> int:
        within = comb(j, 2) + l - 1
        return self.s + 1 + (i - 1) * self.block + within

    @property
    def X(self) -> int:
        return mask_of(self.x(j) for j in range(1, self.s + 1))

    @property
    def Y(self) -> int:
        return mask_of(self.y(j) for j in range(1, self.s + 1))

    def layer(self, i: int) -> int:
        return mask_of(self.z(i, j, l) for j in range(1, self.s + 1) for l in range(1, j + 1))

    def back_arcs(self) -> list[tuple[int, int]]:
        s, m = self.s, self.m
        out = []
        for j in range(1, s + 1):
            for l in range(1, j + 1):
                out.append((self.z(1, j, l), self.x(j)))
                out.append((self.y(j), self.z(m, j, l)))
                for i in range(1, m):
                    out.append((self.z(i + 1, j, l), self.z(i, j, l)))
        return sorted(out)


def extremal_tournament(spec: ExtremalSpec) -> Tournament:
    if not spec.meets_size_hypothesis:
        warnings.warn(f"n={spec.n} below 2*C(s+1,2)+2s+2; the connectivity claims may not apply",
                      stacklevel=2)
    n = spec.n
    back = set(spec.back_arcs())
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if (v, u) in back:
                rows[v] |= 1 << u
            else:
                rows[u] |= 1 << v
    meta = {"generator": "extremal", "s": spec.s, "m": spec.m, "sprime": spec.s_prime}
    return Tournament.from_rows(rows, labels=spec.roles, meta=meta)


def layers_separate(t: Tournament, spec: ExtremalSpec) -> list[bool]:
    """For each layer ``Z^i``: does deleting it leave no ``Y -> X`` path?"""
    out = []
    for i in range(1, spec.m + 1):
        w = t.all_mask & ~spec.layer(i)
        out.append(reach(t.out_rows, spec.Y, w) & spec.X == 0)
    return out


def smallest_strongly_k_connected_subset(t: Tournament, k: int, layers=None, proper: bool = False):
    """Smallest vertex set inducing a strongly ``k``-connected subtournament.

    ``layers`` (bitmasks) enables pruning: a candidate must meet every layer
    in at least ``k`` vertices.  Returns ``(size, mask)`` or ``(None, None)``.
    """
    if t.n > EXHAUSTIVE_MAX_N:
        raise TooLargeForExhaustive(f"n={t.n} > {EXHAUSTIVE_MAX_N}")
    keep = None
    if layers:
        def keep(m):
            return all((m & z).bit_count() >= k for z in layers)
    top = t.n - 1 if proper else t.n
    for size in range(k + 1, top + 1):
        for combo in combinations(range(t.n), size):
            m = mask_of(combo)
            if keep is not None and not keep(m):
                continue
            if is_strongly_k_connected(t, k, m):
                return size, m
    return None, None


@dataclass(frozen=True)
class ExtremalCertificate:
    spec: ExtremalSpec
    k: int
    kappa_exact: int
    kappa_witness: tuple | None
    diameter_exact: float
    diameter_bound: Fraction
    min_k_subtournament: int | None
    min_witness: tuple[int, ...] | None
    size_bound: Fraction
    subtournament_verified: bool
    layers_separate: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        good = (self.kappa_exact >= self.spec.s and self.diameter_exact >= self.diameter_bound
                and all(self.layers_separate))
        if self.subtournament_verified:
            good = good and self.min_k_subtournament is not None and self.min_k_subtournament >= self.size_bound
        return good


def certify_extremal(t: Tournament, spec: ExtremalSpec, k: int, prune: bool = True) -> ExtremalCertificate:
    """Measure connectivity, diameter and the smallest strongly ``k``-connected
    subtournament, next to the bounds ``(n - 2s)/C(s+1,2)`` and
    ``k n / C(s+1,2) - k - 2``.

    The subtournament scan runs only for ``n <= 16``; above that the
    certificate reports it as unverified.
    """
    if not 2 <= k <= spec.s:
        raise ValueError(f"need 2 <= k <= s={spec.s}, got k={k}")
    if t.n != spec.n:
        raise BadSpec(f"tournament has {t.n} vertices, spec expects {spec.n}")
    rep = connectivity_report(t)
    diam = diameter(t)
    block = spec.block
    dbound = Fraction(spec.n - 2 * spec.s, block)
    sbound = Fraction(k * spec.n, block) - k - 2
    size, witness, verified = None, None, False
    if t.n <= EXHAUSTIVE_MAX_N:
        layers = [spec.layer(i) for i in range(1, spec.m + 1)] if prune else None
        size, mask = smallest_strongly_k_connected_subset(t, k, layers)
        witness = tuple(bits(mask)) if mask is not None else None
        verified = True
    kw = (rep.witness_pair, rep.witness_separator) if rep.witness_pair else None
    return ExtremalCertificate(spec, k, rep.kappa, kw, diam, dbound, size, witness, sbound,
                               verified, tuple(layers_separate(t, spec)))


def is_minimally_strongly_k_connected(t: Tournament, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """``(minimal, witness)``: minimal iff ``T`` is strongly ``k``-connected and no
    proper induced subtournament is; ``witness`` is a strongly ``k``-connected
    proper subset when one exists (smallest first)."""
    if t.n > EXHAUSTIVE_MAX_N:
        raise TooLargeForExhaustive(f"n={t.n} > {EXHAUSTIVE_MAX_N}")
    whole = is_strongly_k_connected(t, k)
    size, mask = smallest_strongly_k_connected_subset(t, k, proper=True)
    witness = tuple(bits(mask)) if mask is not None else None
    return whole and witness is None, witness
