"""Fiat-Shamir transformation of commit-and-open protocols.

The challenge is ``gamma(H(CHAL(inst, commitment, a0[, msg])))``. Two
commitment modes are supported: one digest per message ("ordinary") and a
single Merkle root opened with an octopus ("merkle").

Wire format of a proof (all integers big-endian)::

    "CNOF" | version 01 | mode (00 ordinary, 01 merkle) | ell u32
    | count u16 | count x (index u32, len u32, message)
    | ell digests (ordinary) or root digest (merkle)
    | octopus block (merkle only)
    | len u32, a0
"""

import hashlib
import struct
from dataclasses import dataclass, field

from .challenges import ChallengeSpace
from .cno import CnOProtocol, commit_ordinary
from .errors import BiasBudgetViolated, ProofFormatError
from .merkle import (BoundedSpace, bounded_challenge_space, decode_octopus, encode_octopus, mcommit, mopen,
                     next_pow2, octo_verify, tree_height)

MAGIC = b"CNOF"
VERSION = 1
ORDINARY = "ordinary"
MERKLE = "merkle"
MODE_BYTES = {ORDINARY: 0, MERKLE: 1}
MODE_NAMES = {v: k for k, v in MODE_BYTES.items()}

BIAS_BITS = 64
PAD_MESSAGE = b"\x00"
MAX_RESAMPLE = 1 << 20
_UNSET = object()


def _expand(h: bytes, j: int, nbytes: int) -> bytes:
    return hashlib.shake_256(b"\x02gamma" + h + j.to_bytes(4, "big")).digest(nbytes)


def gamma(h: bytes, space: ChallengeSpace, policy="strict") -> int:
    """Map a digest to a challenge index.

    The digest is read as a big-endian integer and reduced modulo |C|. When
    the digest is too short to keep the modular bias below 2^-64 the
    ``policy`` decides: "strict" raises, "expand" stretches the digest with
    SHAKE-256 first, "allow" reduces anyway. Octopus-bounded spaces always
    resample from a counter expansion until the challenge is admissible.
    """
    if isinstance(space, BoundedSpace):
        base = space.base
        need = (base.size.bit_length() + BIAS_BITS + 7) // 8
        for j in range(MAX_RESAMPLE):
            k = int.from_bytes(_expand(h, j, need), "big") % base.size
            if space.accepts_index(k):
                return k
        raise RuntimeError("no admissible challenge found")
    size = space.size
    if size == 1:
        return 0
    need_bits = BIAS_BITS + (size - 1).bit_length()
    if 8 * len(h) < need_bits:
        if policy == "strict":
            raise BiasBudgetViolated(
                f"{8 * len(h)}-bit digest cannot index {size} challenges with bias below 2^-{BIAS_BITS}")
        if policy == "expand":
            h = _expand(h, 0, (need_bits + 7) // 8)
        elif policy != "allow":
            raise ValueError(f"unknown policy {policy!r}")
    return int.from_bytes(h, "big") % size


def encode_chal(inst_bytes, mode, ell, commitment_bytes, a0, msg=None) -> bytes:
    out = [struct.pack(">I", len(inst_bytes)), inst_bytes,
           bytes((MODE_BYTES[mode],)), struct.pack(">I", ell), commitment_bytes,
           struct.pack(">I", len(a0)), a0]
    if msg is None:
        out.append(b"\x00")
    else:
        out += [b"\x01", struct.pack(">I", len(msg)), msg]
    return b"".join(out)


@dataclass
class ChalRecord:
    inst_bytes: bytes
    mode: str
    ell: int
    commitment_bytes: bytes
    nbytes: int
    a0: bytes
    msg: bytes = None

    @property
    def commitment(self):
        nb = self.nbytes
        return [self.commitment_bytes[i:i + nb] for i in range(0, len(self.commitment_bytes), nb)]


def decode_chal(payload: bytes, nbytes: int):
    """Inverse of :func:`encode_chal`; None if the payload is not well formed."""
    try:
        pos = 0
        (li,) = struct.unpack_from(">I", payload, pos)
        pos += 4
        inst = payload[pos:pos + li]
        pos += li
        mode = MODE_NAMES[payload[pos]]
        pos += 1
        (ell,) = struct.unpack_from(">I", payload, pos)
        pos += 4
        count = ell if mode == ORDINARY else 1
        commitment = payload[pos:pos + count * nbytes]
        pos += count * nbytes
        (la,) = struct.unpack_from(">I", payload, pos)
        pos += 4
        a0 = payload[pos:pos + la]
        pos += la
        flag = payload[pos]
        pos += 1
        msg = None
        if flag == 1:
            (lm,) = struct.unpack_from(">I", payload, pos)
            pos += 4
            msg = payload[pos:pos + lm]
            pos += lm
        elif flag != 0:
            return None
        if pos != len(payload) or len(inst) != li or len(a0) != la:
            return None
        return ChalRecord(inst, mode, ell, commitment, nbytes, a0, msg)
    except (struct.error, IndexError, KeyError):
        return None


@dataclass
class NizkProof:
    mode: str
    ell: int
    opened: list
    commitment: list
    octopus: list = field(default_factory=list)
    a0: bytes = b""

    def to_bytes(self, h=None) -> bytes:
        out = bytearray(MAGIC)
        out.append(VERSION)
        out.append(MODE_BYTES[self.mode])
        out += struct.pack(">IH", self.ell, len(self.opened))
        for i, m in self.opened:
            out += struct.pack(">II", i, len(m))
            out += m
        for y in self.commitment:
            out += y
        if self.mode == MERKLE:
            if h is None:
                h = tree_height(next_pow2(self.ell))
            nbytes = len(self.commitment[0])
            out += encode_octopus(self.octopus, h, nbytes)
        out += struct.pack(">I", len(self.a0))
        out += self.a0
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes, nbytes: int) -> "NizkProof":
        data = bytes(data)
        if len(data) < 12 or data[:4] != MAGIC:
            raise ProofFormatError("bad magic")
        if data[4] != VERSION:
            raise ProofFormatError(f"unsupported version {data[4]}")
        if data[5] not in MODE_NAMES:
            raise ProofFormatError("unknown mode")
        mode = MODE_NAMES[data[5]]
        ell, count = struct.unpack_from(">IH", data, 6)
        pos = 12
        opened = []
        for _ in range(count):
            if pos + 8 > len(data):
                raise ProofFormatError("truncated opening")
            i, lm = struct.unpack_from(">II", data, pos)
            pos += 8
            if pos + lm > len(data):
                raise ProofFormatError("truncated message")
            opened.append((i, data[pos:pos + lm]))
            pos += lm
        ndig = ell if mode == ORDINARY else 1
        if pos + ndig * nbytes > len(data):
            raise ProofFormatError("truncated commitment")
        commitment = [data[pos + k * nbytes:pos + (k + 1) * nbytes] for k in range(ndig)]
        pos += ndig * nbytes
        octopus = []
        if mode == MERKLE:
            octopus, pos = decode_octopus(data, pos, tree_height(next_pow2(max(ell, 1))), nbytes)
        if pos + 4 > len(data):
            raise ProofFormatError("truncated a0 length")
        (la,) = struct.unpack_from(">I", data, pos)
        pos += 4
        if pos + la != len(data):
            raise ProofFormatError("a0 length does not match the remaining bytes")
        return cls(mode, ell, opened, commitment, octopus, data[pos:])


class FiatShamir:
    """Non-interactive version of a commit-and-open protocol.

    ``octopus_bound`` (merkle mode only) restricts challenges to those whose
    octopus has at most that many vertices. ``gamma_policy`` is passed to
    :func:`gamma` for unbounded spaces.
    """

    def __init__(self, protocol: CnOProtocol, mode=ORDINARY, octopus_bound=None, gamma_policy="expand"):
        if mode not in MODE_BYTES:
            raise ValueError(f"unknown mode {mode!r}")
        if octopus_bound is not None and mode != MERKLE:
            raise ValueError("an octopus bound only makes sense in merkle mode")
        self.protocol = protocol
        self.mode = mode
        self.gamma_policy = gamma_policy
        self.leaves = next_pow2(protocol.ell)
        self.h = tree_height(self.leaves)
        self.space = protocol.space
        self._last_inst, self._last_inst_bytes = _UNSET, None
        if octopus_bound is not None:
            self.space = bounded_challenge_space(protocol.space, octopus_bound, self.h)

    def _inst_bytes(self, inst):
        if inst is self._last_inst:
            return self._last_inst_bytes
        data = self.protocol.encode_instance(inst)
        self._last_inst, self._last_inst_bytes = inst, data
        return data

    # prover side, split into steps so attackers can reuse a commitment

    def commit(self, oracle, messages):
        if len(messages) != self.protocol.ell:
            raise ValueError(f"expected {self.protocol.ell} messages")
        if self.mode == ORDINARY:
            return commit_ordinary(oracle, messages)
        padded = list(messages) + [PAD_MESSAGE] * (self.leaves - len(messages))
        return mcommit(oracle, padded)

    def commitment_digests(self, state):
        return list(state) if self.mode == ORDINARY else [state.root]

    def challenge(self, oracle, inst, digests, a0, msg=None):
        payload = encode_chal(self._inst_bytes(inst), self.mode, self.protocol.ell,
                              b"".join(digests), a0, msg)
        return gamma(oracle.chal(payload), self.space, self.gamma_policy)

    def open(self, state, messages, k, a0):
        c = self.space.unrank(k)
        if self.mode == ORDINARY:
            return NizkProof(ORDINARY, self.protocol.ell, [(i, messages[i]) for i in c], list(state), [], a0)
        m_c, octo = mopen(state, c)
        return NizkProof(MERKLE, self.protocol.ell, list(zip(c, m_c)), [state.root], octo, a0)

    def prove_messages(self, oracle, inst, messages, a0, msg=None):
        state = self.commit(oracle, messages)
        k = self.challenge(oracle, inst, self.commitment_digests(state), a0, msg)
        return self.open(state, messages, k, a0)

    def prove(self, oracle, inst, witness, rng, msg=None, salt=b""):
        messages, a0 = self.protocol.honest_messages(inst, witness, rng)
        return self.prove_messages(oracle, inst, messages, a0 + salt, msg)

    # verifier side

    def parse(self, data, nbytes):
        if isinstance(data, NizkProof):
            return data
        return NizkProof.from_bytes(data, nbytes)

    def verify(self, oracle, inst, proof, msg=None) -> bool:
        try:
            return self._verify(oracle, inst, self.parse(proof, oracle.nbytes), msg)
        except (ProofFormatError, ValueError, IndexError, TypeError):
            return False

    def _verify(self, oracle, inst, proof: NizkProof, msg) -> bool:
        P = self.protocol
        if proof.mode != self.mode or proof.ell != P.ell or len(proof.a0) < P.a0_len:
            return False
        if any(len(y) != oracle.nbytes for y in proof.commitment):
            return False
        k = self.challenge(oracle, inst, proof.commitment, proof.a0, msg)
        c = self.space.unrank(k)
        if [i for i, _ in proof.opened] != list(c):
            return False
        m_c = tuple(m for _, m in proof.opened)
        if self.mode == ORDINARY:
            y = proof.commitment
            if any(oracle.msg(m) != y[i] for i, m in proof.opened):
                return False
        elif not octo_verify(oracle, c, proof.commitment[0], m_c, proof.octopus, self.h):
            return False
        return bool(P.predicate(inst, k, m_c, proof.a0[:P.a0_len]))


def fs_prove(oracle, protocol, inst, witness, rng, mode=ORDINARY, a0_salt=b"", **kw) -> NizkProof:
    return FiatShamir(protocol, mode, **kw).prove(oracle, inst, witness, rng, salt=a0_salt)


def fs_verify(oracle, protocol, inst, proof, mode=ORDINARY, **kw) -> bool:
    return FiatShamir(protocol, mode, **kw).verify(oracle, inst, proof)


def sign(oracle, protocol, inst, witness, msg: bytes, rng, mode=ORDINARY, **kw) -> NizkProof:
    return FiatShamir(protocol, mode, **kw).prove(oracle, inst, witness, rng, msg=msg)


def sig_verify(oracle, protocol, inst, msg: bytes, proof, mode=ORDINARY, **kw) -> bool:
    return FiatShamir(protocol, mode, **kw).verify(oracle, inst, proof, msg=msg)
