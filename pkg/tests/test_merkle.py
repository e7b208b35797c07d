import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cnozk.challenges import SubsetSpace
from cnozk.errors import EmptyRestriction, InvalidChallenge, ProofFormatError
from cnozk.merkle import (bounded_challenge_space, canonical_order, decode_octopus, encode_octopus, mcommit, mopen,
                          mroot_inverse, octo_set, octo_stats, octo_verify, split, tree_height)
from cnozk.rom import NODE, HashOracle, RecordingOracle


def brute_octo(c, h):
    """Union of authentication paths minus every vertex on an opened path, on bit strings."""
    leaves = [format(i, f"0{h}b") for i in c]
    on_path = {b[:d] for b in leaves for d in range(h + 1)}
    auth = set()
    for b in leaves:
        for d in range(1, h + 1):
            auth.add(b[:d - 1] + ("1" if b[d - 1] == "0" else "0"))
    return {(len(s), int(s, 2)) for s in auth - on_path}


@pytest.mark.parametrize("ell", [2, 4, 8, 16, 32])
def test_octo_matches_brute_force(ell):
    h = tree_height(ell)
    for k in range(1, min(4, ell) + 1):
        for c in combinations(range(ell), k):
            assert octo_set(c, h) == brute_octo(c, h)


def test_octo_examples():
    assert len(octo_set([1], 3)) == 3
    assert octo_set([1], 3) == {(3, 0), (2, 1), (1, 1)}
    assert octo_set(range(8), 3) == set()
    assert len(octo_set([0, 1], 3)) == 2
    assert len(octo_set([2, 10], 4)) == 6
    for ell in (2, 4, 8, 16, 32, 64):
        h = tree_height(ell)
        assert all(len(octo_set([i], h)) == h for i in range(ell))


def test_invalid_inputs():
    with pytest.raises(ValueError):
        tree_height(12)
    with pytest.raises(InvalidChallenge):
        octo_set([], 3)
    with pytest.raises(InvalidChallenge):
        octo_set([8], 3)


def test_mcommit_shapes():
    o = HashOracle(64)
    m = [b"a", b"b"]
    assert mcommit(o, m).root == o.node(o.msg(b"a"), o.msg(b"b"))
    t = mcommit(o, [b"x"] * 4)
    assert t.levels[1][0] == t.levels[1][1]
    r = RecordingOracle(64, seed=1)
    mcommit(r, [bytes((i,)) for i in range(16)])
    assert len(r.db) == 31


def test_mopen_examples():
    o = HashOracle(64)
    msgs = [bytes((i,)) for i in range(8)]
    t = mcommit(o, msgs)
    m_c, octo = mopen(t, [1])
    assert m_c == (b"\x01",) and len(octo) == 3
    m_c, octo = mopen(t, range(8))
    assert list(m_c) == msgs and octo == []
    t16 = mcommit(o, [bytes((i,)) for i in range(16)])
    assert len(mopen(t16, [3, 11])[1]) == 6


@pytest.mark.parametrize("ell", [2, 4, 8, 16])
def test_roundtrip_exhaustive(ell):
    o = HashOracle(64)
    msgs = [random.Random(ell).randbytes(5) for _ in range(ell)]
    t = mcommit(o, msgs)
    h = tree_height(ell)
    kmax = ell if ell <= 8 else 2
    for k in range(1, kmax + 1):
        for c in combinations(range(ell), k):
            m_c, octo = mopen(t, c)
            assert octo_verify(o, c, t.root, m_c, octo, h)


def test_verify_rejects_tampering():
    o = HashOracle(64)
    msgs = [bytes((i,)) * 3 for i in range(8)]
    t = mcommit(o, msgs)
    c = [1, 6]
    m_c, octo = mopen(t, c)
    extra = octo + [((3, 7), t.label((3, 7)))]
    assert not octo_verify(o, c, t.root, m_c, extra, 3)
    assert not octo_verify(o, c, t.root, m_c, octo[:-1], 3)
    for j, (v, lab) in enumerate(octo):
        for bit in range(64):
            bad = bytearray(lab)
            bad[bit // 8] ^= 1 << (bit % 8)
            tampered = list(octo)
            tampered[j] = (v, bytes(bad))
            assert not octo_verify(o, c, t.root, m_c, tampered, 3)
    assert not octo_verify(o, [6, 1], t.root, m_c, octo, 3)


def test_verify_query_budget():
    msgs = [bytes((i,)) for i in range(32)]
    t = mcommit(HashOracle(64), msgs)
    h = 5
    for c in ([0], [3, 17], [1, 2, 30], list(range(0, 32, 4))):
        o = HashOracle(64)
        m_c, octo = mopen(t, c)
        assert octo_verify(o, c, t.root, m_c, octo, h)
        assert o.calls <= len(c) * (h + 1)


def test_split():
    assert split(bytes((NODE,)) + b"a" * 8 + b"b" * 8, 64) == (b"a" * 8, b"b" * 8)
    assert split(bytes((NODE,)) + b"a" * 9, 64) == (None, None)
    assert split(None, 64) == (None, None)


def test_mroot_inverse():
    o = RecordingOracle(64, seed=4)
    fresh = RecordingOracle(64, seed=5)
    assert mroot_inverse(fresh.db, b"\x00" * 8, 3) == [None] * 8
    msgs = [bytes((i,)) * 4 for i in range(8)]
    t = mcommit(o, msgs)
    assert not o.db.has_collision()
    assert mroot_inverse(o.db, t.root, 3) == msgs
    # drop the node entry for the right half at depth 1
    db = o.db.copy()
    node = bytes((NODE,)) + t.label((2, 2)) + t.label((2, 3))
    db.remove(node)
    got = mroot_inverse(db, t.root, 3)
    assert got[:4] == msgs[:4] and got[4:] == [None] * 4


def test_octopus_codec_roundtrip_and_strictness():
    o = HashOracle(64)
    t = mcommit(o, [bytes((i,)) for i in range(16)])
    _, octo = mopen(t, [2, 9, 10])
    data = encode_octopus(octo, 4, 8)
    back, pos = decode_octopus(data, 0, 4, 8)
    assert back == octo and pos == len(data)
    swapped = encode_octopus(octo[::-1], 4, 8)
    with pytest.raises(ProofFormatError):
        decode_octopus(swapped, 0, 4, 8)
    with pytest.raises(ProofFormatError):
        decode_octopus(data[:-1], 0, 4, 8)


def test_canonical_order():
    assert canonical_order([(1, 1), (3, 0), (2, 1), (3, 5)]) == [(3, 0), (3, 5), (2, 1), (1, 1)]


def test_stats_single_leaf_and_pairs():
    s = octo_stats(8, 1)
    assert s["exhaustive"] and s["min"] == s["max"] == 3
    pairs = octo_stats(8, 2)
    brute = {}
    for c in combinations(range(8), 2):
        k = len(brute_octo(c, 3))
        brute[k] = brute.get(k, 0) + 1
    assert pairs["histogram"] == brute
    assert set(brute) == {2, 3, 4}


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2 ** 16))
def test_union_bound_sampled(kappa, seed):
    ell, h = 64, 6
    s = octo_stats(ell, kappa, samples=50, rng=seed, exhaustive=False)
    assert s["max"] <= kappa * h


def test_bounded_space():
    base = SubsetSpace(16, 2)
    full = bounded_challenge_space(base, 2 * 4, 4)
    assert full.count() == base.size
    with pytest.raises(EmptyRestriction):
        bounded_challenge_space(SubsetSpace(16, 1), 3, 4)
    # two sibling leaves share all but the last level, so h - 1 is the floor for pairs
    assert len(bounded_challenge_space(base, 3, 4).members()) == 8
    with pytest.raises(EmptyRestriction):
        bounded_challenge_space(base, 2, 4)
    b6 = bounded_challenge_space(base, 6, 4)
    assert b6.members() == [c for c in base if len(brute_octo(c, 4)) <= 6]
    assert b6.members() == list(base)  # 2h - 2 = 6 is the largest pair octopus
    b5 = bounded_challenge_space(base, 5, 4)
    assert b5.members() == [c for c in base if len(brute_octo(c, 4)) <= 5] != list(base)
