"""Merkle-tree collective commitments with octopus openings.

Tree vertices are ``(depth, value)`` pairs: the root is ``(0, 0)``, the
children of ``(d, v)`` are ``(d+1, 2v)`` and ``(d+1, 2v+1)``, and leaf ``i``
of a height-``h`` tree is ``(h, i)``. Reading ``value`` as a ``depth``-bit
big-endian string gives the usual bit-string naming of tree vertices.
"""

import random
from dataclasses import dataclass, field

import numpy as np

from .challenges import ChallengeSpace, SubsetSpace
from .errors import EmptyRestriction, InvalidChallenge, ProofFormatError
from .rom import MSG, NODE

EXHAUSTIVE_STATS_LIMIT = 1 << 16


def tree_height(ell: int) -> int:
    if ell < 1 or ell & (ell - 1):
        raise ValueError(f"number of leaves must be a power of two, got {ell}")
    return ell.bit_length() - 1


def next_pow2(n: int) -> int:
    return 1 << max(n - 1, 0).bit_length()


def sibling(v):
    d, x = v
    return (d, x ^ 1)


def parent(v):
    d, x = v
    return (d - 1, x >> 1)


def vertex_bits(v) -> str:
    d, x = v
    return format(x, f"0{d}b") if d else ""


def canonical_order(vertices):
    """Depth descending, then left to right."""
    return sorted(vertices, key=lambda v: (-v[0], v[1]))


def _check_challenge(c, h):
    ell = 1 << h
    c = sorted(set(c))
    if not c:
        raise InvalidChallenge("empty challenge")
    if c[0] < 0 or c[-1] >= ell:
        raise InvalidChallenge(f"challenge {c} not inside [0, {ell})")
    return c


def ancestors(c, h):
    anc = set()
    for i in c:
        v = (h, i)
        while True:
            if v in anc:
                break
            anc.add(v)
            if v[0] == 0:
                break
            v = parent(v)
    return anc


def octo_set(c, h) -> set:
    """Off-path vertices whose labels are needed to recompute the root from leaves ``c``."""
    c = _check_challenge(c, h)
    anc = ancestors(c, h)
    return {sibling(v) for v in anc if v[0] > 0 and sibling(v) not in anc}


@dataclass
class MerkleCommitment:
    root: bytes
    h: int
    messages: list
    levels: list = field(repr=False)

    @property
    def ell(self):
        return 1 << self.h

    def label(self, v):
        d, x = v
        return self.levels[d][x]


def mcommit(oracle, messages) -> MerkleCommitment:
    """Leaves hashed in index order, then internal levels bottom-up, left to right."""
    h = tree_height(len(messages))
    levels = [None] * (h + 1)
    levels[h] = [oracle.msg(m) for m in messages]
    for d in range(h - 1, -1, -1):
        below = levels[d + 1]
        levels[d] = [oracle.node(below[2 * x], below[2 * x + 1]) for x in range(1 << d)]
    return MerkleCommitment(levels[0][0], h, list(messages), levels)


def mopen(commitment: MerkleCommitment, c):
    c = _check_challenge(c, commitment.h)
    octo = [(v, commitment.label(v)) for v in canonical_order(octo_set(c, commitment.h))]
    return tuple(commitment.messages[i] for i in c), octo


def octo_verify(oracle, c, y, m_c, octopus, h) -> bool:
    """Recompute the root from the opened messages and the octopus labels."""
    try:
        c_sorted = _check_challenge(c, h)
    except InvalidChallenge:
        return False
    if list(c) != c_sorted or len(m_c) != len(c_sorted):
        return False
    vertices = [v for v, _ in octopus]
    if len(set(vertices)) != len(vertices) or set(vertices) != octo_set(c_sorted, h):
        return False
    known = {}
    for v, lab in octopus:
        if len(lab) != oracle.nbytes:
            return False
        known[v] = lab
    frontier = []
    for i, m in zip(c_sorted, m_c):
        v = (h, i)
        known[v] = oracle.msg(m)
        frontier.append(v)
    for d in range(h, 0, -1):
        nxt = []
        for v in frontier:
            p = parent(v)
            if p in known:
                continue
            left, right = (d, p[1] * 2), (d, p[1] * 2 + 1)
            if left not in known or right not in known:
                return False
            known[p] = oracle.node(known[left], known[right])
            nxt.append(p)
        frontier = nxt
    return known.get((0, 0)) == y


def split(encoded, n):
    """Child labels from a NODE preimage of exactly 2n bits, else (None, None)."""
    nb = n // 8
    if encoded is None or encoded[0] != NODE or len(encoded) != 1 + 2 * nb:
        return None, None
    return encoded[1:1 + nb], encoded[1 + nb:]


def mroot_inverse(db, y, h):
    """Reverse-engineer the committed leaves below root ``y`` from the database."""
    labels = [y]
    for _ in range(h):
        nxt = []
        for lab in labels:
            if lab is None:
                nxt.extend((None, None))
            else:
                nxt.extend(split(db.inverse_encoded(lab), db.n))
        labels = nxt
    out = []
    for lab in labels:
        enc = None if lab is None else db.inverse_encoded(lab)
        out.append(enc[1:] if enc is not None and enc[0] == MSG else None)
    return out


def encode_octopus(octopus, h, nbytes) -> bytes:
    vb = (h + 7) // 8
    out = bytearray(len(octopus).to_bytes(2, "big"))
    for (d, x), lab in octopus:
        out.append(d)
        out += x.to_bytes(vb, "big")
        out += lab
    return bytes(out)


def decode_octopus(data, pos, h, nbytes):
    """Parse an octopus block at ``data[pos:]``; returns (octopus, new_pos)."""
    vb = (h + 7) // 8
    if pos + 2 > len(data):
        raise ProofFormatError("truncated octopus count")
    count = int.from_bytes(data[pos:pos + 2], "big")
    pos += 2
    octo = []
    for _ in range(count):
        if pos + 1 + vb + nbytes > len(data):
            raise ProofFormatError("truncated octopus entry")
        d = data[pos]
        x = int.from_bytes(data[pos + 1:pos + 1 + vb], "big")
        if d > h or x >> d:
            raise ProofFormatError("non-canonical octopus vertex")
        pos += 1 + vb
        octo.append(((d, x), bytes(data[pos:pos + nbytes])))
        pos += nbytes
    if [v for v, _ in octo] != canonical_order(v for v, _ in octo):
        raise ProofFormatError("octopus entries out of canonical order")
    return octo, pos


def octo_stats(ell, space, samples=10000, rng=None, exhaustive=None):
    """Distribution of octopus sizes over a challenge space.

    ``space`` is a :class:`ChallengeSpace` or an int kappa (all kappa-subsets).
    Exhaustive when the space has at most 2^16 members, else Monte Carlo.
    """
    h = tree_height(ell)
    if isinstance(space, int):
        space = SubsetSpace(ell, space)
    if exhaustive is None:
        exhaustive = space.size <= EXHAUSTIVE_STATS_LIMIT
    if exhaustive:
        challenges = iter(space)
        count = space.size
    else:
        rng = rng if isinstance(rng, random.Random) else random.Random(rng)
        challenges = (space.unrank(rng.randrange(space.size)) for _ in range(samples))
        count = samples
    sizes = np.fromiter((len(octo_set(c, h)) for c in challenges), dtype=np.int64, count=count)
    hist = np.bincount(sizes)
    return {
        "min": int(sizes.min()),
        "mean": float(sizes.mean()),
        "max": int(sizes.max()),
        "histogram": {s: int(n) for s, n in enumerate(hist) if n},
        "samples": int(count),
        "exhaustive": bool(exhaustive),
    }


class BoundedSpace(ChallengeSpace):
    """Challenges of ``base`` whose octopus has at most ``bound`` vertices.

    Indexing is inherited from ``base``; non-members are rejected rather than
    renumbered, and challenge derivation resamples until it hits a member.
    """

    def __init__(self, base: ChallengeSpace, bound: int, h=None):
        self.base = base
        self.bound = bound
        self.h = h if h is not None else tree_height(next_pow2(base.ell))
        self.ell = base.ell
        self.size = base.size
        self._count = None

    def accepts_index(self, k) -> bool:
        return self.accepts(self.base.unrank(k))

    def accepts(self, c) -> bool:
        return len(octo_set(c, self.h)) <= self.bound

    def unrank(self, k):
        return self.base.unrank(k)

    def rank(self, c):
        k = self.base.rank(c)
        if not self.accepts(c):
            raise ValueError(f"{c} exceeds the octopus bound")
        return k

    def members(self):
        return [c for c in self.base if self.accepts(c)]

    def count(self):
        if self._count is None:
            self._count = sum(1 for c in self.base if self.accepts(c))
        return self._count

    @property
    def kappa(self):
        return self.base.kappa


def bounded_challenge_space(space, bound, h=None, scan_limit=1 << 20):
    bs = BoundedSpace(space, bound, h)
    if bound < 0:
        raise EmptyRestriction("negative bound")
    if space.size <= scan_limit:
        if bs.count() == 0:
            raise EmptyRestriction(f"no challenge has an octopus of at most {bound} vertices")
    return bs
