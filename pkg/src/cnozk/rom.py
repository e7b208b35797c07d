"""Random oracles: a stateless hash instantiation and a recording lazy sampler.

Every oracle input carries a one-byte domain tag so that message
commitments, Merkle node compressions and challenge derivations can never
be confused with one another.
"""

import hashlib
import random
from typing import NamedTuple

from .errors import InputTooLong

MSG = 0x00
NODE = 0x01
CHAL = 0x02

TAG_NAMES = {MSG: "MSG", NODE: "NODE", CHAL: "CHAL"}

DEFAULT_MAX_INPUT = 1 << 16


class OracleInput(NamedTuple):
    tag: int
    payload: bytes

    def encode(self) -> bytes:
        return bytes((self.tag,)) + self.payload

    @classmethod
    def decode(cls, data: bytes) -> "OracleInput":
        return cls(data[0], bytes(data[1:]))


def order_key(encoded: bytes):
    """Sort key for the "smallest input" rule: length first, then bytes."""
    return (len(encoded), encoded)


def shake_hash(encoded: bytes, nbytes: int, key: bytes = b"") -> bytes:
    return hashlib.shake_256(key + encoded).digest(nbytes)


class Database:
    """Lazy-sampling record: encoded oracle input -> digest.

    Keeps a reverse index so that inverse lookups are O(1); the index
    always holds the smallest preimage for each digest.
    """

    def __init__(self, n: int):
        self.n = n
        self.entries: dict[bytes, bytes] = {}
        self.query_count = 0
        self._reverse: dict[bytes, bytes] = {}
        self._collision = False

    def __len__(self):
        return len(self.entries)

    def __contains__(self, encoded):
        return encoded in self.entries

    def get(self, encoded):
        return self.entries.get(encoded)

    def insert(self, encoded: bytes, digest: bytes):
        self.entries[encoded] = digest
        prev = self._reverse.get(digest)
        if prev is None:
            self._reverse[digest] = encoded
        else:
            self._collision = True
            if order_key(encoded) < order_key(prev):
                self._reverse[digest] = encoded

    def remove(self, encoded: bytes):
        """Drop one entry (used to build damaged databases in tests)."""
        digest = self.entries.pop(encoded)
        if self._reverse.get(digest) == encoded:
            del self._reverse[digest]
            rest = [k for k, v in self.entries.items() if v == digest]
            if rest:
                self._reverse[digest] = min(rest, key=order_key)
        vals = list(self.entries.values())
        self._collision = len(set(vals)) != len(vals)

    def inverse(self, digest):
        """Smallest recorded input mapping to ``digest`` as an OracleInput, or None."""
        enc = self._reverse.get(digest)
        return None if enc is None else OracleInput.decode(enc)

    def inverse_encoded(self, digest):
        return self._reverse.get(digest)

    def has_collision(self) -> bool:
        return self._collision

    def chal_entries(self):
        for enc, digest in self.entries.items():
            if enc and enc[0] == CHAL:
                yield enc[1:], digest

    def dump_lines(self):
        for enc in sorted(self.entries, key=order_key):
            yield f"{enc.hex()} {self.entries[enc].hex()}"

    def dump(self, fh):
        for line in self.dump_lines():
            fh.write(line + "\n")

    def copy(self):
        other = Database(self.n)
        other.entries = dict(self.entries)
        other.query_count = self.query_count
        other._reverse = dict(self._reverse)
        other._collision = self._collision
        return other


class Oracle:
    """Shared interface: ``n``-bit digests over tagged inputs of at most ``max_input`` bytes."""

    def __init__(self, n: int, max_input: int = DEFAULT_MAX_INPUT):
        if n <= 0 or n % 8:
            raise ValueError("digest length must be a positive multiple of 8")
        self.n = n
        self.nbytes = n // 8
        self.max_input = max_input
        self.calls = 0

    def _lookup(self, encoded: bytes) -> bytes:
        raise NotImplementedError

    def query_encoded(self, encoded: bytes) -> bytes:
        if len(encoded) > self.max_input:
            raise InputTooLong(f"oracle input of {len(encoded)} bytes exceeds {self.max_input}")
        self.calls += 1
        return self._lookup(encoded)

    def query(self, x: OracleInput) -> bytes:
        return self.query_encoded(x.encode())

    def msg(self, m: bytes) -> bytes:
        return self.query_encoded(b"\x00" + m)

    def node(self, left: bytes, right: bytes) -> bytes:
        return self.query_encoded(b"\x01" + left + right)

    def chal(self, payload: bytes) -> bytes:
        return self.query_encoded(b"\x02" + payload)


class HashOracle(Oracle):
    """Production mode: SHAKE-256 truncated to n bits, no state."""

    def __init__(self, n: int, max_input: int = DEFAULT_MAX_INPUT, key: bytes = b""):
        super().__init__(n, max_input)
        self.key = key

    def function(self, encoded: bytes) -> bytes:
        return shake_hash(encoded, self.nbytes, self.key)

    def _lookup(self, encoded):
        return hashlib.shake_256(self.key + encoded).digest(self.nbytes)


class RecordingOracle(Oracle):
    """Classical lazy sampling with an inspectable database.

    Fresh digests come from a seeded generator, or from ``function`` when
    one is given (so a recording run can replay a fixed hash exactly).
    """

    def __init__(self, n: int, seed=None, max_input: int = DEFAULT_MAX_INPUT, function=None):
        super().__init__(n, max_input)
        self.db = Database(n)
        self.rng = random.Random(seed)
        self.function = function

    def _lookup(self, encoded):
        db = self.db
        db.query_count += 1
        digest = db.entries.get(encoded)
        if digest is not None:
            return digest
        if self.function is not None:
            digest = self.function(encoded)
        else:
            digest = self.rng.getrandbits(self.n).to_bytes(self.nbytes, "big")
        db.insert(encoded, digest)
        return digest


def query(db_or_oracle, x: OracleInput) -> bytes:
    return db_or_oracle.query(x)


def inverse(db: Database, y: bytes):
    return db.inverse(y)


def has_collision(db: Database) -> bool:
    return db.has_collision()
