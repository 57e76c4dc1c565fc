"""Immutable 2-colourings of complete graphs.

A coloring assigns each unordered pair of distinct vertices in [0, N) one
of two colors.  Black plays the role of "edge" and white of "non-edge",
but every operation is color-symmetric, so either color can be treated as
the edge set.  Storage is one black-adjacency bitmask per vertex; white
adjacency is the complement.  Colorings are immutable after construction
and safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .bitset import bits
from .errors import (
    DuplicatePairError,
    MissingPairError,
    PreconditionViolated,
    SelfPairError,
    VertexRangeError,
)


class Color(Enum):
    BLACK = "black"
    WHITE = "white"

    def swap(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK


BLACK = Color.BLACK
WHITE = Color.WHITE


@lru_cache(maxsize=None)
def all_pairs(N: int) -> tuple[tuple[int, int], ...]:
    """All unordered pairs in canonical row-major upper-triangle order:
    (0,1), (0,2), ..., (0,N-1), (1,2), ..., (N-2,N-1)."""
    return tuple((u, v) for u in range(N) for v in range(u + 1, N))


def pair_index(u: int, v: int, N: int) -> int:
    if u > v:
        u, v = v, u
    return u * N - u * (u + 1) // 2 + (v - u - 1)


class Coloring:
    """A 2-coloring of the complete graph on N vertices."""

    __slots__ = ("N", "_black")

    def __init__(self, N: int, black_adj: tuple[int, ...]):
        if N < 1:
            raise PreconditionViolated(f"need at least one vertex, got N={N}")
        if len(black_adj) != N:
            raise PreconditionViolated("adjacency length does not match N")
        full = (1 << N) - 1
        for v, row in enumerate(black_adj):
            if row & ~full or row >> v & 1:
                raise PreconditionViolated(f"bad adjacency row for vertex {v}")
            for u in bits(row):
                if not black_adj[u] >> v & 1:
                    raise PreconditionViolated(f"asymmetric adjacency {u},{v}")
        self.N = N
        self._black = tuple(black_adj)

    @classmethod
    def _raw(cls, N: int, black_adj: tuple[int, ...]) -> "Coloring":
        """Trusted fast path: caller guarantees a valid symmetric adjacency."""
        self = object.__new__(cls)
        self.N = N
        self._black = black_adj
        return self

    @classmethod
    def from_pair_list(cls, N: int, pairs) -> "Coloring":
        """Build from an explicit (u, v, Color) list covering every pair once."""
        if N < 1:
            raise PreconditionViolated(f"need at least one vertex, got N={N}")
        seen = set()
        adj = [0] * N
        for u, v, color in pairs:
            if u == v:
                raise SelfPairError(f"self-pair ({u},{v})")
            if not (0 <= u < N and 0 <= v < N):
                raise VertexRangeError(f"pair ({u},{v}) out of range for N={N}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicatePairError(f"pair {key} given twice")
            seen.add(key)
            if color is BLACK:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        if len(seen) != N * (N - 1) // 2:
            missing = next(p for p in all_pairs(N) if p not in seen)
            raise MissingPairError(f"pair {missing} missing")
        return cls._raw(N, tuple(adj))

    @classmethod
    def from_pair_bits(cls, N: int, black_bits: int) -> "Coloring":
        """Build from an int whose bit k says pair k (canonical order) is black."""
        npairs = N * (N - 1) // 2
        if black_bits >> npairs:
            raise PreconditionViolated("bit pattern longer than the pair count")
        adj = [0] * N
        for k, (u, v) in enumerate(all_pairs(N)):
            if black_bits >> k & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return cls._raw(N, tuple(adj))

    @classmethod
    def complete(cls, N: int, color: Color) -> "Coloring":
        """All pairs in one color."""
        if N < 1:
            raise PreconditionViolated(f"need at least one vertex, got N={N}")
        if color is BLACK:
            full = (1 << N) - 1
            return cls._raw(N, tuple(full ^ (1 << v) for v in range(N)))
        return cls._raw(N, (0,) * N)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.N) - 1

    def pair_color(self, u: int, v: int) -> Color:
        if u == v:
            raise SelfPairError(f"no color for self-pair ({u},{v})")
        if not (0 <= u < self.N and 0 <= v < self.N):
            raise VertexRangeError(f"pair ({u},{v}) out of range")
        return BLACK if self._black[u] >> v & 1 else WHITE

    def neighborhood(self, v: int, color: Color) -> int:
        """Bitmask of vertices joined to v by a pair of the given color."""
        if not 0 <= v < self.N:
            raise VertexRangeError(f"vertex {v} out of range")
        if color is BLACK:
            return self._black[v]
        return self.vertex_mask & ~self._black[v] & ~(1 << v)

    def degree(self, v: int, color: Color) -> int:
        return self.neighborhood(v, color).bit_count()

    def swap_colors(self) -> "Coloring":
        full = self.vertex_mask
        return Coloring._raw(
            self.N, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self._black))
        )

    def pair_bits(self) -> int:
        """Inverse of from_pair_bits."""
        out = 0
        for k, (u, v) in enumerate(all_pairs(self.N)):
            if self._black[u] >> v & 1:
                out |= 1 << k
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Coloring)
            and self.N == other.N
            and self._black == other._black
        )

    def __hash__(self) -> int:
        return hash((self.N, self._black))

    def __repr__(self) -> str:
        return f"Coloring(N={self.N}, black_pairs={self.pair_bits():#x})"


@dataclass(frozen=True)
class Context:
    """Global degree context for an extraction run.

    d is the largest degree seen in either color; 2d >= N-1 always.  The
    witness is the lowest vertex attaining d, black checked before white.
    """

    n: int
    N: int
    d: int
    d_witness: tuple[int, Color]


def context_of(c: Coloring, n: int) -> Context:
    if n < 1:
        raise PreconditionViolated(f"fan parameter must be >= 1, got {n}")
    best = -1
    witness = (0, BLACK)
    for v in range(c.N):
        for color in (BLACK, WHITE):
            deg = c.degree(v, color)
            if deg > best:
                best = deg
                witness = (v, color)
    return Context(n=n, N=c.N, d=best, d_witness=witness)
