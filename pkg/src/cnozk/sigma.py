"""Plain sigma protocols and generalized special soundness.

A soundness system is a monotone family of sets of challenge indices: any
member, together with valid responses on each of its challenges, lets the
extractor compute a witness. ``p_triv`` measures the best "prepare answers
for a non-qualifying set" attack.
"""

from fractions import Fraction
from itertools import combinations, product

from .errors import ChallengeSpaceTooLarge, NotMinimalSet

EXHAUSTIVE_LIMIT = 24


def _lex_key(s):
    return tuple(sorted(s))


class SoundnessSystem:
    """A monotone family of subsets of ``range(size)``.

    ``contains`` decides membership, ``min_sets`` yields the minimal
    members in lexicographic order. ``p_triv_closed`` is an optional exact
    value used when the space is too big for a subset scan.
    """

    def __init__(self, size, contains, min_sets, p_triv_closed=None, name="custom"):
        self.size = size
        self._contains = contains
        self._min_sets = min_sets
        self.p_triv_closed = p_triv_closed
        self.name = name
        self.membership_tests = 0

    def contains(self, s) -> bool:
        self.membership_tests += 1
        return self._contains(frozenset(s))

    def min_sets(self):
        return (frozenset(m) for m in self._min_sets())

    def is_minimal(self, s) -> bool:
        s = frozenset(s)
        if not self.contains(s):
            return False
        return not any(self.contains(s - {c}) for c in s)

    def find_min_subset(self, s_hat):
        """Lexicographically first minimal member contained in ``s_hat``, else None."""
        s_hat = frozenset(s_hat)
        if not self.contains(s_hat):
            return None
        for m in self.min_sets():
            if m <= s_hat:
                return m
        return None

    def shrink(self, s_hat):
        """Minimal member inside ``s_hat`` using only membership tests.

        Drops elements from the largest index down, so at most
        ``len(s_hat) + 1`` tests are made.
        """
        s = frozenset(s_hat)
        if not self.contains(s):
            return None
        for c in sorted(s, reverse=True):
            t = s - {c}
            if self.contains(t):
                s = t
        return s

    def __repr__(self):
        return f"SoundnessSystem({self.name}, size={self.size})"


class ThresholdSystem(SoundnessSystem):
    """All sets with at least ``k`` challenges; k=2 is ordinary special soundness."""

    def __init__(self, size, k):
        if not 0 <= k <= size:
            raise ValueError("threshold outside [0, size]")
        self.k = k
        super().__init__(
            size,
            lambda s: len(s) >= k,
            lambda: combinations(range(size), k),
            Fraction(max(k - 1, 0), size) if size else Fraction(0),
            name=f"threshold-{k}",
        )

    def find_min_subset(self, s_hat):
        s = sorted(s_hat)
        self.membership_tests += 1
        if len(s) < self.k:
            return None
        return frozenset(s[: self.k])


class ProductSystem(SoundnessSystem):
    """Soundness of an r-fold parallel repetition: a set of product challenges
    qualifies iff its projection onto some repetition qualifies for the base.

    Product indices are mixed radix with repetition 0 least significant,
    matching :class:`~cnozk.challenges.ProductSpace`.
    """

    def __init__(self, base: SoundnessSystem, r: int):
        self.base = base
        self.r = r
        size = base.size ** r
        closed = base.p_triv_closed ** r if base.p_triv_closed is not None else None
        super().__init__(size, self._member, self._enum_min, closed, name=f"{base.name}^or{r}")

    def digit(self, k, j):
        return (k // self.base.size ** j) % self.base.size

    def project(self, s, j):
        return frozenset(self.digit(k, j) for k in s)

    def _member(self, s):
        return any(self.base._contains(self.project(s, j)) for j in range(self.r))

    def _enum_min(self):
        # only practical for tiny bases; every minimal set maps one product
        # element onto each element of a base-minimal set
        b = self.base.size
        found = set()
        for j in range(self.r):
            for m in self.base.min_sets():
                m = sorted(m)
                others = list(product(range(b), repeat=self.r - 1))
                for choice in product(others, repeat=len(m)):
                    s = set()
                    for c, rest in zip(m, choice):
                        digits = list(rest[:j]) + [c] + list(rest[j:])
                        s.add(sum(d * b ** i for i, d in enumerate(digits)))
                    s = frozenset(s)
                    if s not in found and len(s) == len(m) and self.is_minimal(s):
                        found.add(s)
        return iter(sorted(found, key=_lex_key))

    def find_min_subset(self, s_hat):
        s_hat = frozenset(s_hat)
        for j in range(self.r):
            m = self.base.find_min_subset(self.project(s_hat, j))
            if m is not None:
                pick = []
                for c in sorted(m):
                    pick.append(min(k for k in s_hat if self.digit(k, j) == c))
                return frozenset(pick)
        return None


def p_triv_exhaustive(sys: SoundnessSystem) -> Fraction:
    """Largest non-qualifying set, found by scanning subset sizes downwards."""
    size = sys.size
    if size < 1:
        raise ValueError("empty challenge space")
    if size > EXHAUSTIVE_LIMIT:
        raise ChallengeSpaceTooLarge(f"|C| = {size} too large for a subset scan")
    for k in range(size, -1, -1):
        for s in combinations(range(size), k):
            if not sys._contains(frozenset(s)):
                return Fraction(k, size)
    return Fraction(0)


def p_triv(sys: SoundnessSystem, method="auto") -> Fraction:
    """(1/|C|) times the size of the largest challenge set outside the system."""
    if method == "closed" or (method == "auto" and sys.p_triv_closed is not None):
        if sys.p_triv_closed is None:
            raise ChallengeSpaceTooLarge("no closed form available")
        return Fraction(sys.p_triv_closed)
    return p_triv_exhaustive(sys)


class SigmaProtocol:
    """Interface for a 3-round public-coin protocol with challenges ``range(challenge_count)``.

    Responses are byte strings so that they can be committed to directly.
    Subclasses provide the prover, verifier, relation and extractor.
    """

    challenge_count: int
    system: SoundnessSystem

    def first_message(self, inst, witness, rng):
        """Return ``(a0, state)``; ``state`` feeds :meth:`respond`."""
        raise NotImplementedError

    def respond(self, state, c: int) -> bytes:
        raise NotImplementedError

    def verify(self, inst, a0: bytes, c: int, z: bytes) -> bool:
        raise NotImplementedError

    def extract(self, inst, a0: bytes, s, responses: dict):
        raise NotImplementedError

    def relation(self, inst, witness) -> bool:
        raise NotImplementedError

    def encode_instance(self, inst) -> bytes:
        raise NotImplementedError

    def decode_instance(self, data: bytes):
        raise NotImplementedError

    a0_len: int = 0


def extract_sigma(sigma: SigmaProtocol, inst, a0, s, responses, assume_minimal=False):
    """Witness from valid responses on a minimal qualifying set, or None.

    Raises NotMinimalSet when ``s`` is not a minimal member of the system.
    Callers that found ``s`` by shrinking can skip that gate.
    """
    s = frozenset(s)
    if not assume_minimal and not sigma.system.is_minimal(s):
        raise NotMinimalSet(f"{sorted(s)} is not a minimal qualifying set")
    for c in s:
        z = responses.get(c)
        if z is None or not sigma.verify(inst, a0, c, z):
            return None
    w = sigma.extract(inst, a0, s, responses)
    if w is None or not sigma.relation(inst, w):
        return None
    return w
