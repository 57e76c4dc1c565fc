import pytest
from hypothesis import given
from hypothesis import strategies as st

from bruteforce import (
    brute_clique_exists,
    brute_fan_exists,
    brute_fan_exists_enumerated,
)
from fanram.bitset import bit_list
from fanram.coloring import BLACK, WHITE, Coloring
from fanram.errors import PreconditionViolated
from fanram.oracle import random_coloring
from fanram.structures import (
    CliqueWitness,
    FanCertificate,
    fan_from_clique,
    fan_violation,
    find_clique,
    find_mono_fan,
    find_unavoidable_structure,
    split_fan_blade_target,
    split_graph_fan,
    verify_fan,
)
from test_coloring import colorings


def _pentagon():
    edges = {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}
    pairs = [
        (u, v, BLACK if (u, v) in edges else WHITE)
        for u in range(5)
        for v in range(u + 1, 5)
    ]
    return Coloring.from_pair_list(5, pairs)


def _bipartite_blowup(half):
    N = 2 * half
    pairs = [
        (u, v, BLACK if (u < half) != (v < half) else WHITE)
        for u in range(N)
        for v in range(u + 1, N)
    ]
    return Coloring.from_pair_list(N, pairs)


def test_verify_fan_valid():
    c = Coloring.complete(5, BLACK)
    cert = FanCertificate(BLACK, 0, ((1, 2), (3, 4)), 2)
    assert verify_fan(c, cert)


def test_verify_fan_reports_recolored_blade():
    pairs = [
        (u, v, WHITE if (u, v) == (1, 2) else BLACK)
        for u in range(5)
        for v in range(u + 1, 5)
    ]
    c = Coloring.from_pair_list(5, pairs)
    cert = FanCertificate(BLACK, 0, ((1, 2), (3, 4)), 2)
    msg = fan_violation(c, cert)
    assert msg is not None and "(1,2)" in msg and "white" in msg


def test_verify_fan_reports_repeated_vertex():
    c = Coloring.complete(6, BLACK)
    cert = FanCertificate(BLACK, 0, ((1, 2), (2, 3)), 2)
    msg = fan_violation(c, cert)
    assert msg is not None and "reused" in msg


def test_verify_fan_range_and_claim_checks():
    c = Coloring.complete(4, BLACK)
    assert fan_violation(c, FanCertificate(BLACK, 9, (), 0)) is not None
    assert fan_violation(c, FanCertificate(BLACK, 0, ((1, 2),), 2)) is not None


def test_certificate_json_roundtrip():
    cert = FanCertificate(WHITE, 3, ((1, 2), (4, 5)), 2)
    assert FanCertificate.from_json(cert.to_json()) == cert


def test_find_mono_fan_complete_graph():
    c = Coloring.complete(7, BLACK)
    cert = find_mono_fan(c, BLACK, 3)
    assert cert is not None and cert.center == 0
    assert len(cert.blades) == 3
    assert verify_fan(c, cert)


def test_find_mono_fan_pentagon_has_no_triangle():
    c = _pentagon()
    assert find_mono_fan(c, BLACK, 1) is None
    assert find_mono_fan(c, WHITE, 1) is None
    # agreement with the literal enumeration oracle
    assert not brute_fan_exists_enumerated(c, BLACK, 1)
    assert not brute_fan_exists_enumerated(c, WHITE, 1)


def test_find_mono_fan_bipartite_lower_bound_pattern():
    c = _bipartite_blowup(4)
    assert find_mono_fan(c, BLACK, 2) is None
    assert find_mono_fan(c, WHITE, 2) is None


@given(colorings(min_n=2, max_n=9), st.integers(1, 3))
def test_find_mono_fan_matches_bruteforce(c, n):
    cert = find_mono_fan(c, BLACK, n)
    assert (cert is not None) == brute_fan_exists(c, BLACK, n)
    if cert is not None:
        assert verify_fan(c, cert)
        assert cert.n_claimed == n


@given(colorings(min_n=2, max_n=8), st.integers(1, 2))
def test_find_mono_fan_color_duality(c, n):
    direct = find_mono_fan(c, WHITE, n)
    swapped = find_mono_fan(c.swap_colors(), BLACK, n)
    assert (direct is None) == (swapped is None)
    if swapped is not None:
        mapped = FanCertificate(WHITE, swapped.center, swapped.blades, n)
        assert verify_fan(c, mapped)


def test_find_clique_complete():
    c = Coloring.complete(6, BLACK)
    w = find_clique(c, BLACK, 6, c.vertex_mask)
    assert w is not None and w.members == 0b111111


def test_find_clique_bipartite_triangle_free():
    c = _bipartite_blowup(4)
    assert find_clique(c, BLACK, 3, c.vertex_mask) is None


@given(colorings(min_n=1, max_n=10), st.integers(1, 5))
def test_find_clique_matches_bruteforce(c, size):
    got = find_clique(c, BLACK, size, c.vertex_mask)
    assert (got is not None) == brute_clique_exists(c, BLACK, size, c.vertex_mask)
    if got is not None:
        assert got.size >= size


def test_find_clique_respects_scope():
    c = Coloring.complete(8, BLACK)
    w = find_clique(c, BLACK, 3, 0b00011101)
    assert w is not None and w.members & ~0b00011101 == 0


def test_fan_from_clique():
    c = Coloring.complete(9, BLACK)
    cert = fan_from_clique(c, CliqueWitness(BLACK, c.vertex_mask), 4)
    assert verify_fan(c, cert) and len(cert.blades) == 4
    with pytest.raises(PreconditionViolated):
        fan_from_clique(c, CliqueWitness(BLACK, 0b1111), 2)


def test_structure_search_all_black():
    scope = (1 << 14) - 1
    w = find_unavoidable_structure(Coloring.complete(14, BLACK), scope, 4, 2)
    assert w.kind == "matching"
    assert w.matching.size == 4


def test_structure_search_all_white():
    c = Coloring.complete(14, WHITE)
    w = find_unavoidable_structure(c, (1 << 14) - 1, 4, 2)
    assert w.kind == "complement_fan"
    assert verify_fan(c, w.fan)
    assert w.fan.color is WHITE


def test_structure_search_preconditions():
    c = Coloring.complete(14, BLACK)
    with pytest.raises(PreconditionViolated):
        find_unavoidable_structure(c, (1 << 14) - 1, 4, 0)
    with pytest.raises(PreconditionViolated):
        find_unavoidable_structure(c, (1 << 13) - 1, 4, 2)
    with pytest.raises(PreconditionViolated):
        find_unavoidable_structure(c, (1 << 14) - 1, 4, 3)


def _verified_structure(c, w, n, cc):
    if w.kind == "matching":
        assert w.matching.size >= n
        for a, b in w.matching.edges:
            assert c.pair_color(a, b) is BLACK
        verts = [v for e in w.matching.edges for v in e]
        assert len(set(verts)) == len(verts)
    elif w.kind == "complement_fan":
        assert w.fan.color is WHITE
        assert verify_fan(c, w.fan)
    else:
        assert w.clique.size >= 2 * n - 2 * cc
        col = BLACK if w.kind == "clique" else WHITE
        assert w.clique.color is col
        verts = bit_list(w.clique.members)
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                assert c.pair_color(u, v) is col


def test_structure_search_randomized():
    for seed in range(60):
        n = 4 + seed % 5
        cc = 1 + seed % max(1, (5 * n) // 8 - 1)
        size = 3 * n - cc + 4
        c = random_coloring(size, seed, (0.15, 0.5, 0.85)[seed % 3])
        w = find_unavoidable_structure(c, c.vertex_mask, n, cc)
        _verified_structure(c, w, n, cc)


def test_split_fan_blade_target_values():
    assert [split_fan_blade_target(k) for k in range(3, 13)] == [
        1, 2, 3, 3, 4, 5, 6, 6, 7, 8,
    ]


def _split_instance(k, cross):
    """A = first k vertices (black clique), B = next k (white clique);
    cross(u, b_index) decides black pairs across."""
    N = 2 * k
    pairs = []
    for u in range(N):
        for v in range(u + 1, N):
            if v < k:
                col = BLACK
            elif u >= k:
                col = WHITE
            else:
                col = BLACK if cross(u, v - k) else WHITE
            pairs.append((u, v, col))
    return Coloring.from_pair_list(N, pairs)


def test_split_graph_fan_all_cross_black():
    c = _split_instance(4, lambda u, b: True)
    cert = split_graph_fan(c, 0b1111, 0b11110000)
    assert verify_fan(c, cert)
    assert cert.color is BLACK
    assert len(cert.blades) >= 2
    assert 0b1111 >> cert.center & 1


def test_split_graph_fan_no_cross_black():
    c = _split_instance(4, lambda u, b: False)
    cert = split_graph_fan(c, 0b1111, 0b11110000)
    assert verify_fan(c, cert)
    assert cert.color is WHITE
    assert len(cert.blades) >= 2


def test_split_graph_fan_k8_random_meets_target():
    hits = 0
    for seed in range(40):
        c = random_coloring(16, seed, 0.5)
        # force the split shape on top of the random cross pattern
        adj = list(c._black)
        for u in range(8):
            for v in range(u + 1, 8):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        for u in range(8, 16):
            for v in range(u + 1, 16):
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)
        c = Coloring(16, tuple(adj))
        cert = split_graph_fan(c, 0xFF, 0xFF00)
        assert verify_fan(c, cert)
        assert len(cert.blades) >= 5
        hits += 1
        # the certificate is consistent with the enumeration oracle
        assert brute_fan_exists(c, cert.color, len(cert.blades))
    assert hits == 40


def test_split_graph_fan_preconditions():
    c = _split_instance(4, lambda u, b: True)
    with pytest.raises(PreconditionViolated):
        split_graph_fan(c, 0b11, 0b1100)  # k < 3
    with pytest.raises(PreconditionViolated):
        split_graph_fan(c, 0b1111, 0b111100000)  # unequal after range
    with pytest.raises(PreconditionViolated):
        split_graph_fan(c, 0b1111, 0b1111)  # overlap
    with pytest.raises(PreconditionViolated):
        split_graph_fan(c, 0b10000111, 0b01111000)  # A not a clique


@given(st.integers(0, 2_000), st.integers(3, 10))
def test_split_graph_fan_random_cross(seed, k):
    rc = random_coloring(2 * k, seed, 0.5)
    adj = list(rc._black)
    for u in range(k):
        for v in range(u + 1, k):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    for u in range(k, 2 * k):
        for v in range(u + 1, 2 * k):
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
    c = Coloring(2 * k, tuple(adj))
    A = (1 << k) - 1
    B = ((1 << k) - 1) << k
    cert = split_graph_fan(c, A, B)
    assert verify_fan(c, cert)
    assert len(cert.blades) >= split_fan_blade_target(k)
