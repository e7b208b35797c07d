"""Commit-and-open protocols with ordinary hash commitments.

The prover commits to ``ell`` messages with ``y_i = H(MSG(m_i))``; a
challenge selects a subset of indices to open and a public predicate checks
the opened messages.
"""

from .challenges import ProductSpace
from .errors import ChallengeSpaceTooLarge
from .sigma import ProductSystem

EXTRACT_STAR_LIMIT = 1 << 20
ACCEPTOR_TABLE_LIMIT = 1 << 12


class CnOProtocol:
    """Descriptor of a commit-and-open protocol.

    Subclasses set ``ell``, ``space`` (challenge space over ``range(ell)``),
    ``system`` (soundness system over challenge indices) and ``a0_len``
    (bytes of extra first-message data), and implement the hooks below.
    """

    ell: int
    space = None
    system = None
    a0_len: int = 0

    @property
    def kappa(self):
        return self.space.kappa

    def predicate(self, inst, k: int, m_c: tuple, a0: bytes) -> bool:
        """Check the opened messages ``m_c`` (sorted index order) for challenge index ``k``."""
        raise NotImplementedError

    def extract(self, inst, a0, s, messages):
        """Witness from messages valid on every challenge in the minimal set ``s``."""
        raise NotImplementedError

    def relation(self, inst, witness) -> bool:
        raise NotImplementedError

    def honest_messages(self, inst, witness, rng):
        """Return ``(messages, a0)`` for an honest prover."""
        raise NotImplementedError

    def encode_instance(self, inst) -> bytes:
        raise NotImplementedError

    def decode_instance(self, data: bytes):
        raise NotImplementedError

    def opened(self, k, messages):
        c = self.space.unrank(k)
        return tuple(messages[i] for i in c)

    def accepts_opening(self, inst, k, messages, a0) -> bool:
        """Whether the full message vector (None = unknown) answers challenge ``k``."""
        m_c = self.opened(k, messages)
        if any(m is None for m in m_c):
            return False
        return bool(self.predicate(inst, k, m_c, a0))

    def acceptor(self, inst, messages, a0):
        """``accepts_opening`` with the message vector fixed, for repeated queries."""
        return lambda k: self.accepts_opening(inst, k, messages, a0)

    def valid_set(self, inst, messages, a0):
        """Indices of challenges whose openings are all present and verify."""
        size = self.space.size
        if size > EXTRACT_STAR_LIMIT:
            raise ChallengeSpaceTooLarge(f"|C| = {size} too large to enumerate")
        out = set()
        for k in range(size):
            m_c = self.opened(k, messages)
            if any(m is None for m in m_c):
                continue
            if self.predicate(inst, k, m_c, a0):
                out.add(k)
        return frozenset(out)

    def extract_star(self, inst, messages, a0):
        s_hat = self.valid_set(inst, messages, a0)
        s = self.system.find_min_subset(s_hat)
        if s is None:
            return None
        w = self.extract(inst, a0, s, messages)
        if w is None or not self.relation(inst, w):
            return None
        return w


def commit_ordinary(oracle, messages):
    """y_i = H(MSG(m_i)), queried in index order."""
    return [oracle.msg(m) for m in messages]


def verify_ordinary(oracle, protocol: CnOProtocol, inst, y, k, m_c, a0) -> bool:
    try:
        c = protocol.space.unrank(k)
    except (IndexError, ValueError):
        return False
    if len(m_c) != len(c) or len(y) != protocol.ell:
        return False
    for i, m in zip(c, m_c):
        if not isinstance(m, (bytes, bytearray)) or oracle.msg(m) != y[i]:
            return False
    return bool(protocol.predicate(inst, k, tuple(m_c), a0))


class ParallelRepetition(CnOProtocol):
    """r independent copies run side by side; all must verify.

    Messages of repetition j occupy indices ``[j*ell, (j+1)*ell)`` and its
    extra first-message data the slice ``[j*a0_len, (j+1)*a0_len)``.
    Extraction succeeds as soon as one repetition alone yields a witness.
    """

    def __init__(self, base: CnOProtocol, r: int):
        if r < 1:
            raise ValueError("r must be positive")
        self.base = base
        self.r = r
        self.ell = base.ell * r
        self.space = ProductSpace(base.space, r)
        self.system = ProductSystem(base.system, r)
        self.a0_len = base.a0_len * r

    def split_messages(self, messages, j):
        L = self.base.ell
        return messages[j * L:(j + 1) * L]

    def split_a0(self, a0, j):
        n = self.base.a0_len
        return a0[j * n:(j + 1) * n]

    def predicate(self, inst, k, m_c, a0):
        pos = 0
        for j, d in enumerate(self.space.digits(k)):
            width = len(self.base.space.unrank(d))
            if not self.base.predicate(inst, d, tuple(m_c[pos:pos + width]), self.split_a0(a0, j)):
                return False
            pos += width
        return True

    def accepts_opening(self, inst, k, messages, a0):
        # digit by digit so a failing repetition stops the scan early
        base = self.base
        b, L = base.space.size, base.ell
        for j in range(self.r):
            k, d = divmod(k, b)
            sub = messages[j * L:(j + 1) * L]
            if not base.accepts_opening(inst, d, sub, self.split_a0(a0, j)):
                return False
        return True

    def acceptor(self, inst, messages, a0):
        base = self.base
        b = base.space.size
        if b > ACCEPTOR_TABLE_LIMIT:
            return super().acceptor(inst, messages, a0)
        # answerable digits of each repetition, computed once
        tables = []
        for j in range(self.r):
            ok = base.acceptor(inst, self.split_messages(messages, j), self.split_a0(a0, j))
            tables.append(frozenset(d for d in range(b) if ok(d)))

        def accepts(k):
            for table in tables:
                k, d = divmod(k, b)
                if d not in table:
                    return False
            return True
        return accepts

    def extract(self, inst, a0, s, messages):
        for j in range(self.r):
            proj = self.system.project(s, j)
            if self.base.system.contains(proj):
                sub = self.base.system.find_min_subset(proj)
                w = self.base.extract(inst, self.split_a0(a0, j), sub, self.split_messages(messages, j))
                if w is not None:
                    return w
        return None

    def extract_star(self, inst, messages, a0):
        # brute force inside each repetition; the product space is never enumerated
        for j in range(self.r):
            w = self.base.extract_star(inst, self.split_messages(messages, j), self.split_a0(a0, j))
            if w is not None:
                return w
        return None

    def relation(self, inst, witness):
        return self.base.relation(inst, witness)

    def honest_messages(self, inst, witness, rng):
        messages, a0 = [], b""
        for _ in range(self.r):
            m, a = self.base.honest_messages(inst, witness, rng)
            messages.extend(m)
            a0 += a
        return messages, a0

    def encode_instance(self, inst):
        return self.base.encode_instance(inst)

    def decode_instance(self, data):
        return self.base.decode_instance(data)


def parallel_repeat(protocol: CnOProtocol, r: int) -> CnOProtocol:
    if r == 1:
        return protocol
    return ParallelRepetition(protocol, r)


def extract_star(protocol: CnOProtocol, inst, messages, a0=b""):
    return protocol.extract_star(inst, messages, a0)
