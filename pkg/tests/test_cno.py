import random
from fractions import Fraction

import pytest

from cnozk.cno import commit_ordinary, extract_star, parallel_repeat, verify_ordinary
from cnozk.errors import ChallengeSpaceTooLarge
from cnozk.instances import K3, ColoringProtocol, random_colorable_graph
from cnozk.rom import HashOracle, RecordingOracle
from cnozk.sigma import p_triv, p_triv_exhaustive


def test_commit_single_and_repeated():
    o = HashOracle(64)
    assert commit_ordinary(o, [b"m"]) == [o.msg(b"m")]
    y = commit_ordinary(o, [b"a", b"a"])
    assert y[0] == y[1]


def test_inverse_of_commitments():
    o = RecordingOracle(64, seed=1)
    msgs = [bytes((i,)) * 5 for i in range(10)]
    y = commit_ordinary(o, msgs)
    assert [o.db.inverse(v).payload for v in y] == msgs


def test_verify_honest_flip_and_predicate(k3, rng):
    g, col = k3
    P = ColoringProtocol(g)
    o = HashOracle(64)
    msgs, a0 = P.honest_messages(g, col, rng)
    y = commit_ordinary(o, msgs)
    for k in range(P.space.size):
        m_c = P.opened(k, msgs)
        assert verify_ordinary(o, P, g, y, k, m_c, a0)
        for bit in range(8 * len(m_c[0])):
            flipped = bytearray(m_c[0])
            flipped[bit // 8] ^= 1 << (bit % 8)
            assert not verify_ordinary(o, P, g, y, k, (bytes(flipped), m_c[1]), a0)
    # correct openings of an improper coloring: predicate rejects
    bad = [bytes((0,)) + b"\x00" * 16] * 3
    yb = commit_ordinary(o, bad)
    assert not verify_ordinary(o, P, g, yb, 0, P.opened(0, bad), b"")


def test_completeness_exhaustive(graph12, rng):
    g, col = graph12
    P = ColoringProtocol(g)
    msgs, a0 = P.honest_messages(g, col, rng)
    assert P.space.size <= 100
    assert all(P.accepts_opening(g, k, msgs, a0) for k in range(P.space.size))


def test_parallel_identity_and_sizes():
    P = ColoringProtocol(K3)
    assert parallel_repeat(P, 1) is P
    R = parallel_repeat(P, 4)
    assert R.space.size == 81 and R.ell == 12
    assert p_triv(R.system) == Fraction(2, 3) ** 4
    R2 = parallel_repeat(P, 2)
    assert p_triv_exhaustive(R2.system) == p_triv(P.system) ** 2


def test_extract_star_cases(k3, rng):
    g, col = k3
    P = ColoringProtocol(g)
    msgs, a0 = P.honest_messages(g, col, rng)
    w = extract_star(P, g, msgs, a0)
    assert g.is_proper(w)
    assert extract_star(P, g, msgs, a0) == w
    assert extract_star(P, g, [None] * 3, b"") is None
    # colors 0,0,1: only edge (0,2)... and (1,2) pass -> two of three
    two = [bytes((c,)) + b"\x00" * 16 for c in (0, 0, 1)]
    assert extract_star(P, g, two, b"") is None
    one = [bytes((c,)) + b"\x00" * 16 for c in (0, 1, 1)]
    one[2] = None
    assert extract_star(P, g, one, b"") is None


def test_extract_star_parallel_uses_any_repetition(rng):
    g, col = random_colorable_graph(5, rng)
    P = parallel_repeat(ColoringProtocol(g), 3)
    honest, _ = P.base.honest_messages(g, col, rng)
    junk = [None] * g.V
    msgs = junk + honest + junk
    assert g.is_proper(P.extract_star(g, msgs, b""))
    assert P.extract_star(g, junk * 3, b"") is None


def test_extract_star_gate():
    P = ColoringProtocol(K3)
    R = parallel_repeat(P, 13)
    with pytest.raises(ChallengeSpaceTooLarge):
        R.valid_set(K3, [None] * R.ell, b"")


def test_acceptor_matches_direct_check(rng):
    g, _ = random_colorable_graph(5, rng)
    P = parallel_repeat(ColoringProtocol(g), 3)
    for _ in range(5):
        msgs = [bytes((rng.randrange(4),)) + b"\x00" * 16 if rng.random() < 0.9 else None for _ in range(P.ell)]
        fast = P.acceptor(g, msgs, b"")
        assert all(fast(k) == P.accepts_opening(g, k, msgs, b"") for k in range(P.space.size))
