from itertools import combinations, product

import pytest

from cnozk.challenges import ListSpace, ProductSpace, SingletonSpace, SubsetSpace


@pytest.mark.parametrize("ell,kappa", [(1, 1), (4, 2), (8, 3), (10, 10), (12, 1)])
def test_subset_space_matches_combinations(ell, kappa):
    space = SubsetSpace(ell, kappa)
    ref = list(combinations(range(ell), kappa))
    assert space.size == len(ref)
    assert [space.unrank(k) for k in range(space.size)] == ref
    assert all(space.rank(c) == k for k, c in enumerate(ref))


def test_singleton_space():
    s = SingletonSpace(5)
    assert [s.unrank(k) for k in range(5)] == [(i,) for i in range(5)]
    assert s.kappa == 1


def test_list_space_rank_roundtrip():
    members = [(0, 1), (0, 2), (1, 2)]
    s = ListSpace(3, members)
    assert [s.unrank(k) for k in range(3)] == members
    assert s.rank((1, 2)) == 2


def test_product_space_bijection():
    base = ListSpace(3, [(0, 1), (0, 2), (1, 2)])
    p = ProductSpace(base, 4)
    assert p.size == 81
    seen = set()
    for k in range(p.size):
        c = p.unrank(k)
        assert p.rank(c) == k
        assert all(0 <= i < 12 for i in c)
        seen.add(c)
    assert len(seen) == 81
    digits = p.digits(5)
    assert p.from_digits(digits) == 5 and digits[0] == 2


def test_product_space_offsets():
    p = ProductSpace(SingletonSpace(2), 3)
    # repetition j owns indices 2j, 2j+1; repetition 0 is the low digit
    assert p.unrank(0) == (0, 2, 4)
    assert p.unrank(1) == (1, 2, 4)
    assert p.unrank(7) == (1, 3, 5)


def test_kappa_bound():
    for ell, kappa in product([4, 6], [1, 2, 3]):
        s = SubsetSpace(ell, kappa)
        assert all(len(c) <= s.kappa for c in s)
