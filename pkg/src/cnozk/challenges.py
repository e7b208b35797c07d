"""Challenge spaces: finite families of subsets of [ell] addressed by an index.

A challenge is represented as a sorted tuple of 0-based message indices.
``unrank`` is a bijection ``range(size) -> family``.
"""

from itertools import combinations
from math import comb


class ChallengeSpace:
    ell: int
    size: int

    def unrank(self, k: int) -> tuple:
        raise NotImplementedError

    def rank(self, c) -> int:
        c = tuple(sorted(c))
        for k in range(self.size):
            if self.unrank(k) == c:
                return k
        raise ValueError(f"{c} is not a challenge")

    def __contains__(self, c):
        try:
            self.rank(c)
        except ValueError:
            return False
        return True

    def __iter__(self):
        return (self.unrank(k) for k in range(self.size))

    @property
    def kappa(self) -> int:
        return max(len(self.unrank(k)) for k in range(self.size))


class ListSpace(ChallengeSpace):
    """Explicit list of challenge sets (e.g. the edges of a graph)."""

    def __init__(self, ell, members):
        self.ell = ell
        self.members = [tuple(sorted(m)) for m in members]
        if len(set(self.members)) != len(self.members):
            raise ValueError("duplicate challenges")
        for m in self.members:
            if not all(0 <= i < ell for i in m):
                raise ValueError(f"challenge {m} not inside [0, {ell})")
        self.size = len(self.members)
        self._rank = {m: k for k, m in enumerate(self.members)}

    def unrank(self, k):
        return self.members[k]

    def rank(self, c):
        try:
            return self._rank[tuple(sorted(c))]
        except KeyError:
            raise ValueError(f"{c} is not a challenge") from None

    @property
    def kappa(self):
        return max(len(m) for m in self.members)


class SingletonSpace(ChallengeSpace):
    """Challenges {0}, {1}, ..., {ell-1}: exactly one message opened."""

    def __init__(self, ell):
        self.ell = ell
        self.size = ell

    def unrank(self, k):
        if not 0 <= k < self.size:
            raise IndexError(k)
        return (k,)

    def rank(self, c):
        c = tuple(c)
        if len(c) != 1 or not 0 <= c[0] < self.ell:
            raise ValueError(f"{c} is not a challenge")
        return c[0]

    kappa = 1


class SubsetSpace(ChallengeSpace):
    """All kappa-element subsets of [ell], in lexicographic order."""

    def __init__(self, ell, kappa):
        if not 1 <= kappa <= ell:
            raise ValueError("need 1 <= kappa <= ell")
        self.ell = ell
        self._kappa = kappa
        self.size = comb(ell, kappa)

    @property
    def kappa(self):
        return self._kappa

    def unrank(self, k):
        if not 0 <= k < self.size:
            raise IndexError(k)
        out = []
        x = 0
        for remaining in range(self._kappa, 0, -1):
            while True:
                block = comb(self.ell - x - 1, remaining - 1)
                if k < block:
                    break
                k -= block
                x += 1
            out.append(x)
            x += 1
        return tuple(out)

    def rank(self, c):
        c = tuple(sorted(c))
        if len(c) != self._kappa or len(set(c)) != len(c) or not all(0 <= i < self.ell for i in c):
            raise ValueError(f"{c} is not a challenge")
        k = 0
        prev = -1
        for pos, x in enumerate(c):
            remaining = self._kappa - pos
            for skipped in range(prev + 1, x):
                k += comb(self.ell - skipped - 1, remaining - 1)
            prev = x
        return k

    def __iter__(self):
        return combinations(range(self.ell), self._kappa)


class ProductSpace(ChallengeSpace):
    """r-fold product of a base space; repetition j owns indices [j*ell, (j+1)*ell).

    Index k is mixed radix with repetition 0 in the least significant digit.
    """

    def __init__(self, base: ChallengeSpace, r: int):
        if r < 1:
            raise ValueError("r must be positive")
        self.base = base
        self.r = r
        self.ell = base.ell * r
        self.size = base.size ** r

    def digits(self, k):
        b = self.base.size
        out = []
        for _ in range(self.r):
            k, d = divmod(k, b)
            out.append(d)
        return out

    def from_digits(self, digits):
        k = 0
        for d in reversed(digits):
            k = k * self.base.size + d
        return k

    def unrank(self, k):
        if not 0 <= k < self.size:
            raise IndexError(k)
        out = []
        L = self.base.ell
        for j, d in enumerate(self.digits(k)):
            out.extend(j * L + i for i in self.base.unrank(d))
        return tuple(out)

    def rank(self, c):
        L = self.base.ell
        parts = [[] for _ in range(self.r)]
        for i in c:
            if not 0 <= i < self.ell:
                raise ValueError(f"{c} is not a challenge")
            parts[i // L].append(i % L)
        return self.from_digits([self.base.rank(p) for p in parts])

    @property
    def kappa(self):
        return self.r * self.base.kappa
