"""Ground truth at desk scale: exhaustive enumeration, known-value checks,
lower-bound constructions, and seeded generators.

Exhaustive enumeration walks colorings by their pair-bit encodings in
ascending order (bit k of the counter is pair k of the canonical order),
so runs are deterministic and the index space can be partitioned across
workers with the start/stop arguments.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .coloring import BLACK, WHITE, Coloring
from .errors import PreconditionViolated
from .io import write_2col
from .rng import SplitMix64
from .structures import find_mono_fan

MAX_EXHAUSTIVE_N = 7


@dataclass
class EnumerationReport:
    N: int
    n: int | None
    total: int
    all_contain: bool
    fan_free_examples: list[Coloring] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "total": self.total,
            "all_contain": self.all_contain,
            "fan_free_examples": [
                write_2col(c).replace("\n", " ").strip()
                for c in self.fan_free_examples
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def enumerate_colorings(
    N: int, visitor, *, start: int = 0, stop: int | None = None
) -> EnumerationReport:
    """Invoke visitor(coloring) once per coloring of K_N.

    Order is ascending pair-bit encoding.  start/stop bound the encoding
    range so callers can split the space across workers; the default
    covers everything.
    """
    if N > MAX_EXHAUSTIVE_N:
        raise PreconditionViolated(
            f"exhaustive enumeration capped at N={MAX_EXHAUSTIVE_N}, got {N}"
        )
    if N < 1:
        raise PreconditionViolated(f"need at least one vertex, got N={N}")
    limit = 1 << (N * (N - 1) // 2)
    stop = limit if stop is None else min(stop, limit)
    count = 0
    for bits_value in range(start, stop):
        visitor(Coloring.from_pair_bits(N, bits_value))
        count += 1
    return EnumerationReport(N=N, n=None, total=count, all_contain=False)


def exhaustive_ramsey_check(N: int, n: int, *, example_cap: int = 10) -> EnumerationReport:
    """Do all colorings of K_N contain a monochromatic fan with n blades?

    Exhaustive over every coloring; collects up to example_cap fan-free
    colorings when the answer is no.
    """
    if n > 2:
        raise PreconditionViolated(f"exhaustive check capped at n=2, got n={n}")
    if n < 1:
        raise PreconditionViolated(f"fan parameter must be >= 1, got {n}")
    report = EnumerationReport(N=N, n=n, total=0, all_contain=True)

    def visit(c: Coloring) -> None:
        report.total += 1
        if find_mono_fan(c, BLACK, n) is None and find_mono_fan(c, WHITE, n) is None:
            report.all_contain = False
            if len(report.fan_free_examples) < example_cap:
                report.fan_free_examples.append(c)

    enumerate_colorings(N, visit)
    return report


def bipartite_lower_bound(n: int) -> Coloring:
    """The 4n-vertex coloring with no monochromatic fan of n blades:
    black across the two halves, white inside them.

    The black graph is bipartite (triangle-free, so no black fan) and the
    white graph splits into two cliques of 2n vertices, one short of the
    2n+1 a fan needs.
    """
    if n < 1:
        raise PreconditionViolated(f"fan parameter must be >= 1, got {n}")
    N = 4 * n
    half = (1 << 2 * n) - 1
    adj = []
    for v in range(N):
        adj.append(half << 2 * n if v < 2 * n else half)
    return Coloring._raw(N, tuple(adj))


def random_coloring(N: int, seed: int, p_black: float) -> Coloring:
    """Independent pair colors, black with probability p_black.

    One SplitMix64 draw per pair in canonical order; fully determined by
    (N, seed, p_black).
    """
    if not 0.0 <= p_black <= 1.0:
        raise PreconditionViolated(f"p_black={p_black} outside [0, 1]")
    if N < 1:
        raise PreconditionViolated(f"need at least one vertex, got N={N}")
    rng = SplitMix64(seed)
    adj = [0] * N
    for u in range(N):
        for v in range(u + 1, N):
            if rng.next_float() < p_black:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Coloring._raw(N, tuple(adj))


ADVERSARIAL_KINDS = ("bipartite_blowup", "pentagon_blowup", "clique_plus_noise")

_BIPARTITE_FLIP = 0.05
_PENTAGON_INSIDE = 0.10
_CLIQUE_NOISE = 0.50


def adversarial_coloring(kind: str, N: int, n: int, seed: int) -> Coloring:
    """Structured stress colorings with seeded perturbation.

    bipartite_blowup: black across two near-equal halves, every pair then
    flipped with probability 0.05.  pentagon_blowup: five near-equal
    parts, black exactly between cyclically adjacent parts, pairs inside
    a part black with probability 0.10.  clique_plus_noise: pairs inside
    the first ceil(7N/12) vertices always black, the rest fair coin.  One
    draw per pair in canonical order regardless of whether the pair is
    forced, so structure never shifts the stream.  n is accepted for a
    uniform signature; the shapes depend only on N and the seed.
    """
    if N < 5:
        raise PreconditionViolated(f"adversarial colorings need N >= 5, got {N}")
    if kind not in ADVERSARIAL_KINDS:
        raise PreconditionViolated(f"unknown adversarial kind {kind!r}")
    rng = SplitMix64(seed)
    adj = [0] * N

    if kind == "bipartite_blowup":
        half = (N + 1) // 2

        def black(u, v, roll):
            base = (u < half) != (v < half)
            return base != (roll < _BIPARTITE_FLIP)

    elif kind == "pentagon_blowup":
        size, extra = divmod(N, 5)
        bounds = []
        acc = 0
        for i in range(5):
            acc += size + (1 if i < extra else 0)
            bounds.append(acc)

        def part(v):
            for i, b in enumerate(bounds):
                if v < b:
                    return i
            raise AssertionError

        def black(u, v, roll):
            pu, pv = part(u), part(v)
            if pu == pv:
                return roll < _PENTAGON_INSIDE
            return (pu - pv) % 5 in (1, 4)

    else:
        planted = -(-7 * N // 12)

        def black(u, v, roll):
            if u < planted and v < planted:
                return True
            return roll < _CLIQUE_NOISE

    for u in range(N):
        for v in range(u + 1, N):
            roll = rng.next_float()
            if black(u, v, roll):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Coloring._raw(N, tuple(adj))
