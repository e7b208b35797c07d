import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cnozk.errors import ChallengeSpaceTooLarge, NotMinimalSet
from cnozk.instances import DlogSigma, dlog_keygen
from cnozk.sigma import ProductSystem, SoundnessSystem, ThresholdSystem, extract_sigma, p_triv, p_triv_exhaustive


def all_subsets(n):
    for k in range(n + 1):
        yield from (frozenset(s) for s in combinations(range(n), k))


def brute_p_triv(contains, n):
    return Fraction(max(len(s) for s in all_subsets(n) if not contains(s)), n)


@pytest.mark.parametrize("m", [2, 3, 5, 12])
def test_threshold_two(m):
    assert p_triv(ThresholdSystem(m, 2)) == Fraction(1, m)


def test_k3_system():
    sys = ThresholdSystem(3, 3)
    assert p_triv_exhaustive(sys) == Fraction(2, 3)
    assert brute_p_triv(lambda s: len(s) >= 3, 3) == Fraction(2, 3)


def test_product_system_tiny():
    # base p_triv = 2/3, as for K3
    prod_sys = ProductSystem(ThresholdSystem(3, 3), 2)
    assert prod_sys.size == 9
    assert p_triv_exhaustive(prod_sys) == Fraction(4, 9)
    assert p_triv(prod_sys, "closed") == Fraction(4, 9)
    assert p_triv_exhaustive(ProductSystem(ThresholdSystem(3, 2), 2)) == Fraction(1, 9)


@pytest.mark.parametrize("size,k", [(m, k) for m in range(1, 13) for k in range(1, m + 1)])
def test_closed_form_matches_scan(size, k):
    sys = ThresholdSystem(size, k)
    assert p_triv(sys, "closed") == p_triv_exhaustive(sys)


@pytest.mark.parametrize("base_size,k,r", [(2, 2, 2), (3, 3, 2), (2, 1, 3), (3, 2, 2)])
def test_product_closed_matches_scan(base_size, k, r):
    sys = ProductSystem(ThresholdSystem(base_size, k), r)
    assert p_triv(sys, "closed") == p_triv_exhaustive(sys)


def test_scan_gated():
    with pytest.raises(ChallengeSpaceTooLarge):
        p_triv_exhaustive(ThresholdSystem(30, 2))


@given(st.sets(st.integers(0, 5)), st.sets(st.integers(0, 5)))
def test_monotone(s, extra):
    sys = ThresholdSystem(6, 3)
    if sys.contains(s):
        assert sys.contains(s | extra)


def test_min_sets_are_minimal():
    for sys in (ThresholdSystem(5, 2), ProductSystem(ThresholdSystem(2, 2), 2)):
        mins = list(sys.min_sets())
        assert mins
        for m in mins:
            assert sys.is_minimal(m)


def test_product_min_sets_cover_brute_force():
    sys = ProductSystem(ThresholdSystem(2, 2), 2)
    brute = {s for s in all_subsets(4) if sys.contains(s) and not any(sys.contains(s - {c}) for c in s)}
    assert set(sys.min_sets()) == brute


def test_find_min_subset_lexicographic():
    sys = ThresholdSystem(5, 2)
    assert sys.find_min_subset({4, 1, 3}) == frozenset({1, 3})
    assert sys.find_min_subset({2}) is None
    generic = SoundnessSystem(5, lambda s: len(s) >= 2, lambda: combinations(range(5), 2))
    assert generic.find_min_subset({4, 1, 3}) == frozenset({1, 3})


@settings(max_examples=50)
@given(st.sets(st.integers(0, 7)))
def test_shrink_budget_and_minimality(s_hat):
    sys = SoundnessSystem(8, lambda s: len(s) >= 3 and 0 in s or len(s) >= 5,
                          lambda: iter(()))
    sys.membership_tests = 0
    out = sys.shrink(s_hat)
    assert sys.membership_tests <= len(s_hat) + 1
    if out is None:
        assert not sys._contains(frozenset(s_hat))
    else:
        assert out <= frozenset(s_hat) and sys.is_minimal(out)


def test_extract_sigma_dlog():
    rng = random.Random(5)
    inst, w = dlog_keygen(rng)
    sigma = DlogSigma()
    a0, state = sigma.first_message(inst, w, rng)
    z = {c: sigma.respond(state, c) for c in (0, 1)}
    got = extract_sigma(sigma, inst, a0, {0, 1}, z)
    assert got == w and pow(inst.g, got, inst.p) == inst.X
    with pytest.raises(NotMinimalSet):
        extract_sigma(sigma, inst, a0, {0}, z)
    bad = dict(z)
    bad[1] = (int.from_bytes(z[1], "big") ^ 1).to_bytes(8, "big")
    assert extract_sigma(sigma, inst, a0, {0, 1}, bad) is None


def test_every_min_set_extracts():
    rng = random.Random(6)
    inst, w = dlog_keygen(rng)
    sigma = DlogSigma()
    a0, state = sigma.first_message(inst, w, rng)
    for s in sigma.system.min_sets():
        z = {c: sigma.respond(state, c) for c in s}
        assert sigma.relation(inst, extract_sigma(sigma, inst, a0, s, z))
