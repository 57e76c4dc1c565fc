"""Matchings inside color-induced subgraphs, with deficiency certificates.

All entry points take a coloring, the color whose pairs count as edges, and
bitmask vertex sets.  Tie-breaking is lexicographic everywhere, so results
are reproducible: greedy matchings repeatedly take the smallest available
edge, and search orders are by ascending vertex index.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .bitset import bit_list, bits, lowest, mask_of
from .coloring import Color, Coloring
from .errors import InternalError, PreconditionViolated


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint pairs, all of one color."""

    color: Color
    edges: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertex_mask(self) -> int:
        return mask_of(v for edge in self.edges for v in edge)


def _checked_scope(c: Coloring, scope: int) -> int:
    if scope & ~c.vertex_mask:
        raise PreconditionViolated("scope contains out-of-range vertices")
    return scope


def greedy_maximal_matching(c: Coloring, col: Color, scope: int) -> Matching:
    """Maximal matching by repeatedly taking the smallest available edge."""
    _checked_scope(c, scope)
    edges = []
    avail = scope
    while avail:
        v = lowest(avail)
        avail ^= 1 << v
        cand = c.neighborhood(v, col) & avail
        if cand:
            u = lowest(cand)
            avail ^= 1 << u
            edges.append((v, u))
    return Matching(col, tuple(edges))


def _blossom(adj: list[list[int]], stop_at: int | None) -> list[int]:
    """Maximum matching on a general graph given as adjacency lists.

    Classic augmenting-path search with blossom contraction, O(V^3).
    Returns the match array.  If stop_at is given, stops augmenting once
    the matching reaches that size (the result is then maximum or of size
    stop_at, whichever is smaller).
    """
    n = len(adj)
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break
    size = sum(1 for v in range(n) if match[v] != -1) // 2
    if stop_at is not None and size >= stop_at:
        return match

    p = [-1] * n
    base = list(range(n))
    used = [False] * n

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = p[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_path(root: int) -> bool:
        nonlocal p, base, used
        used = [False] * n
        p = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    curbase = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, curbase, to, blossom)
                    mark_path(to, curbase, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        while to != -1:
                            pv = p[to]
                            ppv = match[pv]
                            match[to] = pv
                            match[pv] = to
                            to = ppv
                        return True
                    used[match[to]] = True
                    q.append(match[to])
        return False

    for v in range(n):
        if stop_at is not None and size >= stop_at:
            break
        if match[v] == -1 and find_path(v):
            size += 1
    return match


def maximum_matching_general(
    c: Coloring, col: Color, scope: int, *, stop_at: int | None = None
) -> Matching:
    """Maximum matching of the color-induced graph on scope.

    With stop_at=k the search ends as soon as k edges are matched; the
    returned matching is then maximum if smaller than k.
    """
    _checked_scope(c, scope)
    verts = bit_list(scope)
    index = {v: i for i, v in enumerate(verts)}
    adj = [
        [index[u] for u in bits(c.neighborhood(v, col) & scope)] for v in verts
    ]
    match = _blossom(adj, stop_at)
    edges = tuple(
        (verts[i], verts[j])
        for i, j in enumerate(match)
        if j != -1 and i < j
    )
    return Matching(col, edges)


def bipartite_maximum_matching(
    c: Coloring, col: Color, X: int, Y: int
) -> Matching:
    """Maximum matching using only col-colored X-Y pairs (Hopcroft-Karp)."""
    _checked_scope(c, X | Y)
    if X & Y:
        raise PreconditionViolated("bipartition sides overlap")
    match_x, _, xs, ys = _hopcroft_karp(c, col, X, Y)
    edges = tuple(
        (xs[i], ys[j]) if xs[i] < ys[j] else (ys[j], xs[i])
        for i, j in enumerate(match_x)
        if j != -1
    )
    return Matching(col, edges)


def _hopcroft_karp(c: Coloring, col: Color, X: int, Y: int):
    xs = bit_list(X)
    ys = bit_list(Y)
    y_index = {v: i for i, v in enumerate(ys)}
    adj = [[y_index[u] for u in bits(c.neighborhood(v, col) & Y)] for v in xs]
    nx = len(xs)
    match_x = [-1] * nx
    match_y = [-1] * len(ys)
    INF = float("inf")
    dist = [INF] * nx

    def bfs() -> bool:
        q = deque()
        for i in range(nx):
            if match_x[i] == -1:
                dist[i] = 0
                q.append(i)
            else:
                dist[i] = INF
        reachable_free = False
        while q:
            i = q.popleft()
            for j in adj[i]:
                i2 = match_y[j]
                if i2 == -1:
                    reachable_free = True
                elif dist[i2] == INF:
                    dist[i2] = dist[i] + 1
                    q.append(i2)
        return reachable_free

    def dfs(i: int) -> bool:
        for j in adj[i]:
            i2 = match_y[j]
            if i2 == -1 or (dist[i2] == dist[i] + 1 and dfs(i2)):
                match_x[i] = j
                match_y[j] = i
                return True
        dist[i] = INF
        return False

    while bfs():
        for i in range(nx):
            if match_x[i] == -1:
                dfs(i)
    return match_x, match_y, xs, ys


@dataclass(frozen=True)
class DeficiencyCertificate:
    """A set S in the X side together with N(S) in the Y side.

    deficiency = |S| - |N(S)|.  For the certificate produced by
    max_deficiency_certificate this equals |X| - (maximum matching size),
    the largest deficiency over all subsets of X.
    """

    S: int
    NS: int
    deficiency: int


def max_deficiency_certificate(
    c: Coloring, col: Color, X: int, Y: int
) -> DeficiencyCertificate:
    """Hall violator of maximum deficiency.

    S is the set of X-vertices reachable by alternating paths from the
    unmatched X-vertices of a maximum matching; S is empty exactly when a
    perfect matching from X exists (deficiency 0).
    """
    _checked_scope(c, X | Y)
    if X & Y:
        raise PreconditionViolated("bipartition sides overlap")
    match_x, match_y, xs, ys = _hopcroft_karp(c, col, X, Y)
    nu = sum(1 for j in match_x if j != -1)

    adj = [c.neighborhood(v, col) & Y for v in xs]
    seen_x = [False] * len(xs)
    seen_y = 0
    q = deque()
    for i in range(len(xs)):
        if match_x[i] == -1:
            seen_x[i] = True
            q.append(i)
    y_pos = {v: j for j, v in enumerate(ys)}
    while q:
        i = q.popleft()
        for y in bits(adj[i] & ~seen_y):
            seen_y |= 1 << y
            i2 = match_y[y_pos[y]]
            if i2 != -1 and not seen_x[i2]:
                seen_x[i2] = True
                q.append(i2)
    S = mask_of(xs[i] for i in range(len(xs)) if seen_x[i])
    deficiency = S.bit_count() - seen_y.bit_count()
    if deficiency != len(xs) - nu:
        raise InternalError("deficiency certificate disagrees with matching size")
    return DeficiencyCertificate(S=S, NS=seen_y, deficiency=deficiency)
