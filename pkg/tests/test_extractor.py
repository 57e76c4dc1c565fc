import json
from dataclasses import replace
from fractions import Fraction

import pytest

from fanram.bitset import bit_list, mask_of
from fanram.coloring import BLACK, WHITE, Coloring, context_of
from fanram.covering import CoverRecord, SCRecord, compute_cover
from fanram.errors import PreconditionViolated, UnreachableBranch
from fanram.extractor import (
    BlockerClique,
    ResidueClique,
    _tail34,
    _t4,
    ExtractionTrace,
    build_C_witness,
    case_big3,
    case_high_d,
    case_mid,
    case_t4,
    case_two_cover,
    extract_fan,
    find_T_witness,
    min_order,
)
from fanram.matching import Matching
from fanram.oracle import adversarial_coloring, random_coloring
from fanram.structures import CliqueWitness, FanCertificate, verify_fan
from gadgets import blocker_fixture, circulant, cover_gadget


def test_min_order_values():
    assert [min_order(n) for n in (1, 3, 6, 12)] == [20, 30, 46, 77]


def test_extract_all_black_fast_mode():
    c = Coloring.complete(46, BLACK)
    cert, trace = extract_fan(c, 6, mode="fast")
    assert cert.center == 0 and cert.color is BLACK
    assert len(cert.blades) == 6
    assert verify_fan(c, cert)
    assert trace.labels() == ["fast"]


def test_extract_all_black_faithful():
    c = Coloring.complete(46, BLACK)
    cert, trace = extract_fan(c, 6, mode="faithful")
    assert verify_fan(c, cert)
    assert "high_d.matching" in trace.labels()


def test_extract_all_white_is_symmetric():
    c = Coloring.complete(46, WHITE)
    cert, _ = extract_fan(c, 6, mode="faithful")
    assert cert.color is WHITE
    assert verify_fan(c, cert)


def test_extract_rejects_small_order():
    c = Coloring.complete(45, BLACK)
    with pytest.raises(PreconditionViolated):
        extract_fan(c, 6)
    with pytest.raises(PreconditionViolated):
        extract_fan(Coloring.complete(46, BLACK), 0)
    with pytest.raises(PreconditionViolated):
        extract_fan(Coloring.complete(46, BLACK), 6, mode="bogus")


def test_extract_seeded_random_corpus():
    for seed in range(30):
        c = random_coloring(46, seed, (0.2, 0.5, 0.8)[seed % 3])
        cert, trace = extract_fan(c, 6, mode="faithful")
        assert verify_fan(c, cert)
        assert len(cert.blades) == 6


def test_extract_perspective_symmetry():
    for seed in range(10):
        c = random_coloring(46, seed, 0.5)
        cert, _ = extract_fan(c, 6, mode="faithful")
        swapped_cert, _ = extract_fan(c.swap_colors(), 6, mode="faithful")
        mapped = FanCertificate(
            swapped_cert.color.swap(),
            swapped_cert.center,
            swapped_cert.blades,
            swapped_cert.n_claimed,
        )
        assert verify_fan(c, cert)
        assert verify_fan(c, mapped)


def test_extract_deterministic():
    for seed in (1, 17):
        c = adversarial_coloring("clique_plus_noise", 46, 6, seed)
        a_cert, a_trace = extract_fan(c, 6, mode="faithful")
        b_cert, b_trace = extract_fan(c, 6, mode="faithful")
        assert a_cert.to_json() == b_cert.to_json()
        assert a_trace.to_json() == b_trace.to_json()


def test_extract_adversarial_families():
    for kind in ("bipartite_blowup", "pentagon_blowup", "clique_plus_noise"):
        for seed in range(6):
            c = adversarial_coloring(kind, 46, 6, seed)
            cert, _ = extract_fan(c, 6, mode="faithful")
            assert verify_fan(c, cert)


def test_fast_and_faithful_agree_on_existence():
    # both modes must always succeed above the guaranteed order, even if
    # the certificates differ
    for kind in ("bipartite_blowup", "pentagon_blowup", "clique_plus_noise"):
        c = adversarial_coloring(kind, 46, 6, seed=11)
        fast_cert, fast_trace = extract_fan(c, 6, mode="fast")
        faithful_cert, _ = extract_fan(c, 6, mode="faithful")
        assert verify_fan(c, fast_cert) and verify_fan(c, faithful_cert)
        assert fast_trace.labels()[0] == "fast"


def test_mid_band_dispatch_on_regular_circulant():
    # all degrees 45/46 on 92 vertices: d = 46 sits inside the mid band
    c = circulant(92, list(range(1, 23)) + [46])
    ctx = context_of(c, 15)
    assert Fraction(8 * 15, 3) + 6 <= ctx.d < Fraction(11 * 15, 4) + 5
    cert, trace = extract_fan(c, 15, mode="faithful")
    assert verify_fan(c, cert)
    assert "mid.search" in trace.labels()
    # the spec-level case entry agrees
    cert2 = case_mid(c, ctx)
    assert verify_fan(c, cert2)


def test_low_band_dispatch_on_regular_circulant():
    c = circulant(97, range(1, 25))
    ctx = context_of(c, 16)
    assert ctx.d < Fraction(8 * 16, 3) + 6
    cert, trace = extract_fan(c, 16, mode="faithful")
    assert verify_fan(c, cert)
    assert "low.search" in trace.labels()
    cert2 = case_two_cover(c, ctx)
    assert verify_fan(c, cert2)


def test_case_wrappers_validate_bands():
    c = Coloring.complete(46, BLACK)
    ctx = context_of(c, 6)  # d = 45, far above every low threshold
    with pytest.raises(PreconditionViolated):
        case_mid(c, ctx)
    with pytest.raises(PreconditionViolated):
        case_two_cover(c, ctx)
    low = circulant(97, range(1, 25))
    with pytest.raises(PreconditionViolated):
        case_high_d(low, context_of(low, 16))


def test_case_high_d_direct():
    c = Coloring.complete(46, BLACK)
    cert = case_high_d(c, context_of(c, 6))
    assert verify_fan(c, cert)


def test_high_d_white_fan_fallback():
    # a black star over an otherwise white graph: the witness has full
    # black degree but its neighborhood is black-matching-free, so the
    # fallback must find the white fan inside the neighborhood
    N = 46
    adj = [0] * N
    adj[0] = ((1 << N) - 1) ^ 1
    for v in range(1, N):
        adj[v] = 1
    c = Coloring(N, tuple(adj))
    cert, trace = extract_fan(c, 6, mode="faithful")
    assert verify_fan(c, cert)
    assert cert.color is WHITE
    assert "high_d.white_fan" in trace.labels()


def test_case_t4_on_cover_gadget():
    c, A = cover_gadget(4, 3, 8, 11)
    cover = compute_cover(c, A, 11)
    assert isinstance(cover, CoverRecord) and cover.t == 4
    ctx = context_of(c, 11)
    cert = case_t4(c, ctx, A, cover)
    assert verify_fan(c, cert)
    assert cert.color is WHITE
    assert cert.center == cover.sequence[-1][0]
    with pytest.raises(PreconditionViolated):
        case_t4(c, ctx, A, CoverRecord(A, 3, cover.sequence[:3]))


def test_case_t4_unreachable_when_shadows_stripped():
    # a gutted cover cannot carry n blades, and the failure is loud
    c, A = cover_gadget(4, 3, 8, 11)
    cover = compute_cover(c, A, 11)
    seq = tuple(
        (v, replace(r, S=mask_of(bit_list(r.S)[:2]))) for v, r in cover.sequence
    )
    gutted = CoverRecord(A, cover.t, seq)
    with pytest.raises(UnreachableBranch) as exc:
        _t4(c, 11, A, gutted, ExtractionTrace(11, c.N, "case"))
    assert exc.value.label == "t4.count"


def _fake_cover(A, s1, s2, c1, c2, c3):
    def rec(v, S, C):
        return (
            v,
            SCRecord(
                v=v,
                clique=A,
                S=S,
                C=C,
                M=Matching(BLACK, ()),
                Mp=Matching(BLACK, ()),
                deg_v=0,
            ),
        )

    return CoverRecord(A=A, t=3, sequence=(rec(0, s1, c1), rec(1, s2, c2), rec(2, 0, c3)))


def test_find_T_witness_returns_blocker():
    c, S1, S2, T = blocker_fixture(6, cross_black=False)
    A = CliqueWitness(BLACK, 0b111)
    cover = _fake_cover(A, S1, S2, 1 << 0, 1 << 1, 1 << 2)
    out = find_T_witness(c, context_of(c, 7), A, cover, Fraction(5 * 7, 12) + 6)
    assert isinstance(out, BlockerClique)
    assert out.members == T
    assert out.boundary == 0
    assert out.members.bit_count() - out.boundary.bit_count() > out.threshold


def test_find_T_witness_returns_fan_when_shadows_are_rich():
    c, S1, S2, _ = blocker_fixture(8, cross_black=False)
    A = CliqueWitness(BLACK, 0b111)
    cover = _fake_cover(A, S1, S2, 1 << 0, 1 << 1, 1 << 2)
    out = find_T_witness(c, context_of(c, 7), A, cover, Fraction(5 * 7, 12) + 6)
    assert isinstance(out, FanCertificate)
    assert out.center == 2 and out.color is WHITE
    assert verify_fan(c, out)


def test_find_T_witness_white_perspective():
    # the same instance seen through swapped colors with a white clique
    # witness must produce the identical blocker
    c, S1, S2, T = blocker_fixture(6, cross_black=False)
    cs = c.swap_colors()
    A = CliqueWitness(WHITE, 0b111)
    cover = _fake_cover(A, S1, S2, 1 << 0, 1 << 1, 1 << 2)
    out = find_T_witness(cs, context_of(cs, 7), A, cover, Fraction(5 * 7, 12) + 6)
    assert isinstance(out, BlockerClique)
    assert out.members == T


def test_find_T_witness_requires_three_cover():
    c, S1, S2, _ = blocker_fixture(6, cross_black=False)
    A = CliqueWitness(BLACK, 0b111)
    cover = _fake_cover(A, S1, S2, 1 << 0, 1 << 1, 1 << 2)
    short = CoverRecord(A, 2, cover.sequence[:2])
    with pytest.raises(PreconditionViolated):
        find_T_witness(c, context_of(c, 7), A, short, Fraction(1))


def test_build_C_witness_residue():
    c, S1, S2, T = blocker_fixture(6, cross_black=False)
    blocker = BlockerClique(members=T, boundary=0, threshold=Fraction(8))
    out = build_C_witness(c, context_of(c, 7), S1, S2, blocker)
    assert isinstance(out, ResidueClique)
    assert out.members == S1 | S2
    assert out.removed_matching == ()


def test_build_C_witness_black_fan_when_carving_fails():
    c, S1, S2, T = blocker_fixture(6, cross_black=True)
    blocker = BlockerClique(members=T, boundary=0, threshold=Fraction(8))
    out = build_C_witness(c, context_of(c, 7), S1, S2, blocker)
    assert isinstance(out, FanCertificate)
    assert out.color is BLACK
    assert T >> out.center & 1
    assert verify_fan(c, out)


def test_tail34_final_construction_end_to_end():
    # s1=5, s2=7, |T|=9 at n=6: the v3 fan misses by one, the blocker and
    # residue land, and the first final construction reaches 6 blades
    c, S1, S2, T = blocker_fixture(5, cross_black=False, s2_size=7, t_size=9)
    A = CliqueWitness(BLACK, 0b111)
    cover = _fake_cover(A, S1, S2, 1 << 0, 1 << 1, 1 << 2)
    trace = ExtractionTrace(6, c.N, "case")
    cert = _tail34(c, 6, A, cover, trace, "big3")
    assert verify_fan(c, cert)
    assert cert.color is WHITE
    assert cert.center == bit_list(S1)[0]
    assert "big3.final1" in trace.labels()
    assert "big3.blocker" in trace.labels()
    assert "big3.residue" in trace.labels()


def test_tail34_residual_fan_when_third_contact_is_marginal():
    # zero third-step marginal at big3 pairs the two shadows directly
    c, S1, S2, T = blocker_fixture(7, cross_black=False, s2_size=7, t_size=9)
    A = CliqueWitness(BLACK, 0b111)
    cover = _fake_cover(A, S1, S2, 1 << 0, 1 << 1, 1 << 0)
    trace = ExtractionTrace(6, c.N, "case")
    cert = _tail34(c, 6, A, cover, trace, "big3")
    assert verify_fan(c, cert)
    assert cert.center == 2
    assert "big3.residual_fan" in trace.labels()


def test_two_cover_carves_and_resolves():
    # a two-step cover at n=12: the carved clique's own shadow
    # construction finds the fan while covering
    from fanram.extractor import _two_cover

    c, A = cover_gadget(2, 7, 4, 12)
    cover = compute_cover(c, A, 12)
    assert isinstance(cover, CoverRecord) and cover.t == 2
    trace = ExtractionTrace(12, c.N, "case")
    cert = _two_cover(c, 12, A, cover, trace)
    assert verify_fan(c, cert)
    assert "two_cover.pair" in trace.labels()
    assert "two_cover.cover_a_fan" in trace.labels()


def test_two_cover_shadow_fan_branch():
    # at n=9 the carve target exceeds 2n+1, so one shadow already holds a
    # whole fan as a white clique
    from fanram.extractor import _two_cover

    c, A = cover_gadget(2, 5, 5, 9)
    cover = compute_cover(c, A, 9)
    assert isinstance(cover, CoverRecord) and cover.t == 2
    trace = ExtractionTrace(9, c.N, "case")
    cert = _two_cover(c, 9, A, cover, trace)
    assert verify_fan(c, cert)
    assert cert.color is WHITE
    assert "two_cover.shadow_fan" in trace.labels()


def test_case_big3_wrapper_validates():
    c = Coloring.complete(46, BLACK)
    ctx = context_of(c, 6)
    with pytest.raises(PreconditionViolated):
        case_big3(c, ctx, CliqueWitness(BLACK, (1 << 13) - 1))


def test_trace_json_shape():
    c = Coloring.complete(46, BLACK)
    cert, trace = extract_fan(c, 6, mode="faithful")
    doc = json.loads(trace.to_json())
    assert doc["mode"] == "faithful"
    assert doc["certificate"] == cert.to_json_dict()
    assert all("case" in step for step in doc["steps"])
    assert doc["steps"][0]["case"] == "context"
