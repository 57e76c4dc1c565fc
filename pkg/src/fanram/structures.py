"""Fans, cliques, and the guaranteed structure searches built on them.

A fan with n blades is a vertex (the center) plus n vertex-disjoint pairs
(the blades) such that every blade pair and both of its edges to the center
carry one color.  Certificates are self-contained and are re-checked
against the coloring by verify_fan, so third parties can validate them
without trusting the search code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .bitset import bit_list, bits, lowest, mask_of
from .coloring import BLACK, WHITE, Color, Coloring
from .errors import (
    ConstructionFailure,
    PreconditionViolated,
    StructureSearchFailure,
)
from .matching import (
    Matching,
    bipartite_maximum_matching,
    greedy_maximal_matching,
    max_deficiency_certificate,
    maximum_matching_general,
)


@dataclass(frozen=True)
class FanCertificate:
    color: Color
    center: int
    blades: tuple[tuple[int, int], ...]
    n_claimed: int

    def vertex_mask(self) -> int:
        return mask_of(v for blade in self.blades for v in blade) | 1 << self.center

    def to_json_dict(self) -> dict:
        return {
            "color": self.color.value,
            "center": self.center,
            "blades": [list(b) for b in self.blades],
            "n_claimed": self.n_claimed,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "FanCertificate":
        return cls(
            color=Color(d["color"]),
            center=int(d["center"]),
            blades=tuple((int(a), int(b)) for a, b in d["blades"]),
            n_claimed=int(d["n_claimed"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FanCertificate":
        return cls.from_json_dict(json.loads(text))


def fan_violation(c: Coloring, cert: FanCertificate) -> str | None:
    """First violated fan invariant, or None if the certificate is valid."""
    N = c.N
    if not 0 <= cert.center < N:
        return f"center {cert.center} out of range"
    if len(cert.blades) < cert.n_claimed:
        return f"{len(cert.blades)} blades but {cert.n_claimed} claimed"
    seen = 1 << cert.center
    for a, b in cert.blades:
        for v in (a, b):
            if not 0 <= v < N:
                return f"blade vertex {v} out of range"
        if a == b:
            return f"degenerate blade ({a},{b})"
        pair_mask = 1 << a | 1 << b
        if seen & pair_mask:
            return f"vertex reused in blade ({a},{b})"
        seen |= pair_mask
        for u, v in ((cert.center, a), (cert.center, b), (a, b)):
            got = c.pair_color(u, v)
            if got is not cert.color:
                return f"pair ({u},{v}) is {got.value}, expected {cert.color.value}"
    return None


def verify_fan(c: Coloring, cert: FanCertificate) -> bool:
    return fan_violation(c, cert) is None


@dataclass(frozen=True)
class CliqueWitness:
    """A vertex set whose internal pairs all have one color.

    A white clique is an independent set of the black graph and vice
    versa.
    """

    color: Color
    members: int

    @property
    def size(self) -> int:
        return self.members.bit_count()


def clique_violation(c: Coloring, w: CliqueWitness) -> str | None:
    if w.members & ~c.vertex_mask:
        return "clique contains out-of-range vertices"
    verts = bit_list(w.members)
    for i, u in enumerate(verts):
        missing = w.members & ~c.neighborhood(u, w.color) & ~(1 << u)
        missing &= ~mask_of(verts[: i + 1])
        if missing:
            v = lowest(missing)
            return f"pair ({u},{v}) is not {w.color.value}"
    return None


def is_clique(c: Coloring, col: Color, members: int) -> bool:
    return clique_violation(c, CliqueWitness(col, members)) is None


def fan_from_clique(c: Coloring, w: CliqueWitness, n: int) -> FanCertificate:
    """A clique on >= 2n+1 vertices contains a fan: center its lowest
    vertex and pair up the rest."""
    verts = bit_list(w.members)
    if len(verts) < 2 * n + 1:
        raise PreconditionViolated("clique too small to pair into a fan")
    center = verts[0]
    blades = tuple(
        (verts[i], verts[i + 1]) for i in range(1, 2 * n, 2)
    )
    cert = FanCertificate(w.color, center, blades, n)
    _must_verify(c, cert)
    return cert


def _must_verify(c: Coloring, cert: FanCertificate) -> FanCertificate:
    violation = fan_violation(c, cert)
    if violation is not None:
        raise ConstructionFailure(f"built an invalid fan: {violation}")
    return cert


def find_mono_fan(
    c: Coloring, col: Color, n: int, scope: int | None = None
) -> FanCertificate | None:
    """Exact fan detection.

    A fan with n blades centered at v exists inside scope exactly when the
    color-induced graph on v's in-scope neighborhood has a matching of n
    edges, so the test scans centers in ascending order and computes
    matchings with an early stop.  Returns a verified certificate for the
    lowest viable center, or None when no fan exists.
    """
    if n < 1:
        raise PreconditionViolated(f"fan parameter must be >= 1, got {n}")
    if scope is None:
        scope = c.vertex_mask
    for v in bits(scope):
        nb = c.neighborhood(v, col) & scope
        if nb.bit_count() < 2 * n:
            continue
        # a greedy matching settles most centers: reaching n proves the
        # fan, and below n/2 even doubling cannot reach it
        greedy = greedy_maximal_matching(c, col, nb)
        if greedy.size >= n:
            cert = FanCertificate(col, v, greedy.edges[:n], n)
            return _must_verify(c, cert)
        if 2 * greedy.size < n:
            continue
        m = maximum_matching_general(c, col, nb, stop_at=n)
        if m.size >= n:
            cert = FanCertificate(col, v, m.edges[:n], n)
            return _must_verify(c, cert)
    return None


def find_clique(
    c: Coloring, col: Color, size: int, scope: int
) -> CliqueWitness | None:
    """Exact search for a col-clique of at least `size` vertices in scope.

    Branch and bound over a static degree-descending vertex order with a
    counting prune; returns the first clique found (deterministic) or None
    when none of that size exists.
    """
    if size < 1:
        raise PreconditionViolated(f"clique size must be >= 1, got {size}")
    verts = bit_list(scope)
    if len(verts) < size:
        return None
    adj = {v: c.neighborhood(v, col) & scope for v in verts}
    order = sorted(verts, key=lambda v: (-adj[v].bit_count(), v))

    def expand(chosen: list[int], cand: int) -> list[int] | None:
        if len(chosen) >= size:
            return chosen
        for v in order:
            if not cand >> v & 1:
                continue
            if len(chosen) + cand.bit_count() < size:
                return None
            cand &= ~(1 << v)
            found = expand(chosen + [v], cand & adj[v])
            if found is not None:
                return found
        return None

    found = expand([], scope)
    if found is None:
        return None
    w = CliqueWitness(col, mask_of(found))
    violation = clique_violation(c, w)
    if violation is not None:
        raise ConstructionFailure(f"clique search produced a non-clique: {violation}")
    return w


@dataclass(frozen=True)
class StructureWitness:
    """Tagged outcome of find_unavoidable_structure.

    kind is one of "matching" (n disjoint black edges), "complement_fan"
    (a white fan with n blades), "clique" (black, 2n-2cc vertices) or
    "complement_clique" (white, same size).  Black here means the color
    the search was applied in.
    """

    kind: str
    matching: Matching | None = None
    fan: FanCertificate | None = None
    clique: CliqueWitness | None = None


def find_unavoidable_structure(
    c: Coloring, scope: int, n: int, cc: int
) -> StructureWitness:
    """Search a scope of exactly 3n - cc + 4 vertices (0 < cc < 5n/8) for,
    in fixed priority order: a black matching of n edges, a white fan with
    n blades, a black clique on 2n - 2cc vertices, or a white clique on
    2n - 2cc vertices.

    At these sizes at least one of the four always exists, so exhausting
    all four raises StructureSearchFailure, which indicates a bug or a
    violated precondition rather than a legitimate outcome.
    """
    if not (0 < cc < Fraction(5 * n, 8)):
        raise PreconditionViolated(f"cc={cc} outside (0, 5n/8) for n={n}")
    if scope.bit_count() != 3 * n - cc + 4:
        raise PreconditionViolated(
            f"scope has {scope.bit_count()} vertices, need {3 * n - cc + 4}"
        )

    m = maximum_matching_general(c, BLACK, scope, stop_at=n)
    if m.size >= n:
        return StructureWitness("matching", matching=Matching(BLACK, m.edges[:n]))

    fan = find_mono_fan(c, WHITE, n, scope)
    if fan is not None:
        return StructureWitness("complement_fan", fan=fan)

    target = 2 * n - 2 * cc
    clique = find_clique(c, BLACK, target, scope)
    if clique is not None:
        return StructureWitness("clique", clique=clique)

    clique = find_clique(c, WHITE, target, scope)
    if clique is not None:
        return StructureWitness("complement_clique", clique=clique)

    raise StructureSearchFailure(
        f"no structure found in scope of {scope.bit_count()} vertices "
        f"(n={n}, cc={cc}); this should be impossible"
    )


def split_fan_blade_target(k: int) -> int:
    """Guaranteed blade count for split_graph_fan: ceil(3k/4 - 3/2)."""
    return -(-(3 * k - 6) // 4)


def split_graph_fan(c: Coloring, A: int, B: int) -> FanCertificate:
    """Fan extraction from a split pair: A a black clique, B a white
    clique, both of size k >= 3 and disjoint.

    Returns a verified fan with at least ceil(3k/4 - 3/2) blades.  Looks
    at the densest side first: if the heaviest A-to-B vertex z admits a
    low-deficiency matching from its B-neighborhood into A, that matching
    plus leftover pairs of A forms a black fan at z; otherwise the Hall
    violator U gives a white fan centered in U with partners drawn from
    the A-vertices untouched by U and the rest of B.
    """
    k = A.bit_count()
    if k < 3 or B.bit_count() != k:
        raise PreconditionViolated("sides must have equal size k >= 3")
    if A & B:
        raise PreconditionViolated("sides overlap")
    if clique_violation(c, CliqueWitness(BLACK, A)) is not None:
        raise PreconditionViolated("A side is not a black clique")
    if clique_violation(c, CliqueWitness(WHITE, B)) is not None:
        raise PreconditionViolated("B side is not a white clique")

    d_ab = max(( (c.neighborhood(v, BLACK) & B).bit_count(), -v) for v in bits(A))
    d_ba = max(( (c.neighborhood(w, WHITE) & A).bit_count(), -w) for w in bits(B))
    if d_ab[0] < d_ba[0]:
        # run on the complement with the roles exchanged, then map back
        cert = split_graph_fan(c.swap_colors(), B, A)
        return _must_verify(
            c,
            FanCertificate(cert.color.swap(), cert.center, cert.blades, cert.n_claimed),
        )

    z = -d_ab[1]
    target = split_fan_blade_target(k)
    X = c.neighborhood(z, BLACK) & B
    Y = A & ~(1 << z)
    mp = bipartite_maximum_matching(c, BLACK, X, Y)
    blades = list(mp.edges)
    rest = bit_list(Y & ~mp.vertex_mask())
    blades.extend((rest[i], rest[i + 1]) for i in range(0, len(rest) - 1, 2))
    if len(blades) >= target:
        cert = FanCertificate(BLACK, z, tuple(blades), target)
        return _must_verify(c, cert)

    defc = max_deficiency_certificate(c, BLACK, X, Y)
    U = defc.S
    if not U:
        raise ConstructionFailure("matching branch short yet no Hall violator")
    u = lowest(U)
    partners = bit_list(U & ~(1 << u))
    free_a = bit_list(A & ~_black_closure(c, U))
    blades = list(zip(free_a, partners))
    used = mask_of(v for e in blades for v in e) | 1 << u
    rest = bit_list(B & ~used)
    blades.extend((rest[i], rest[i + 1]) for i in range(0, len(rest) - 1, 2))
    if len(blades) < target:
        raise ConstructionFailure(
            f"violator branch yields {len(blades)} < {target} blades"
        )
    cert = FanCertificate(WHITE, u, tuple(blades), target)
    return _must_verify(c, cert)


def _black_closure(c: Coloring, S: int) -> int:
    out = 0
    for v in bits(S):
        out |= c.neighborhood(v, BLACK)
    return out
