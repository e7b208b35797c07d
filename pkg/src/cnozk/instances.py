"""Concrete protocols: graph 3-coloring (commit-and-open) and a toy
binary-challenge discrete-log sigma protocol.

Neither is meant to be cryptographically hard; they exist to drive the
generic machinery end to end.
"""

import random
from dataclasses import dataclass
from itertools import product

from .challenges import ListSpace
from .cno import CnOProtocol
from .errors import NotColorable
from .sigma import SigmaProtocol, ThresholdSystem

COLORS = 3
BLIND_BYTES = 16
COLOR_MSG_LEN = 1 + BLIND_BYTES
MAX_VERTICES = 64


@dataclass(frozen=True)
class Graph:
    V: int
    edges: tuple

    def __post_init__(self):
        if not 1 <= self.V <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in [1, {MAX_VERTICES}]")
        clean = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.V and 0 <= v < self.V):
                raise ValueError(f"bad edge ({u}, {v})")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    def is_proper(self, coloring) -> bool:
        if coloring is None or len(coloring) != self.V:
            return False
        if any(not (isinstance(x, int) and 0 <= x < COLORS) for x in coloring):
            return False
        return all(coloring[u] != coloring[v] for u, v in self.edges)

    def proper_edges(self, coloring):
        return [k for k, (u, v) in enumerate(self.edges) if coloring[u] != coloring[v]]

    def to_bytes(self) -> bytes:
        out = bytearray((self.V,))
        out += len(self.edges).to_bytes(2, "big")
        for u, v in self.edges:
            out += bytes((u, v))
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Graph":
        V = data[0]
        E = int.from_bytes(data[1:3], "big")
        if len(data) != 3 + 2 * E:
            raise ValueError("bad graph encoding")
        edges = [(data[3 + 2 * k], data[4 + 2 * k]) for k in range(E)]
        g = cls(V, tuple(edges))
        if len(g.edges) != E or g.to_bytes() != bytes(data):
            raise ValueError("non-canonical graph encoding")
        return g

    def dumps(self) -> str:
        lines = [f"{self.V} {len(self.edges)}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Graph":
        rows = [line.split() for line in text.splitlines() if line.strip()]
        V, E = map(int, rows[0])
        if len(rows) - 1 != E:
            raise ValueError(f"header says {E} edges, found {len(rows) - 1}")
        return cls(V, tuple((int(u), int(v)) for u, v in rows[1:]))


def complete_graph(V):
    return Graph(V, tuple((u, v) for u in range(V) for v in range(u + 1, V)))


K3 = complete_graph(3)


def dumps_coloring(coloring) -> str:
    return " ".join(map(str, coloring)) + "\n"


def loads_coloring(text: str):
    return tuple(int(x) for x in text.split())


def random_colorable_graph(V, rng, density=0.5):
    """A random graph together with a proper 3-coloring of it (at least one edge)."""
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    while True:
        coloring = tuple(rng.randrange(COLORS) for _ in range(V))
        edges = [(u, v) for u in range(V) for v in range(u + 1, V)
                 if coloring[u] != coloring[v] and rng.random() < density]
        if edges:
            return Graph(V, tuple(edges)), coloring


def near_coloring(graph, limit=12):
    """A coloring that is proper on all edges but one, by exhaustive search."""
    if graph.V > limit:
        raise ValueError("exhaustive search limited to small graphs")
    target = len(graph.edges) - 1
    for col in product(range(COLORS), repeat=graph.V):
        if len(graph.proper_edges(col)) == target:
            return col
    return None


class ColoringProtocol(CnOProtocol):
    """Commit to a randomly permuted coloring, open the two ends of one edge.

    Message i is ``color byte || 16 random bytes``. Only the full edge set
    qualifies for extraction, so the trivial attack wins with
    probability (|E|-1)/|E|.
    """

    def __init__(self, graph: Graph):
        if not graph.edges:
            raise ValueError("graph has no edges")
        self.graph = graph
        self.ell = graph.V
        self.space = ListSpace(graph.V, graph.edges)
        E = len(graph.edges)
        self.system = ThresholdSystem(E, E)
        self.a0_len = 0

    @staticmethod
    def _color(m):
        if m is None or len(m) != COLOR_MSG_LEN or m[0] >= COLORS:
            return None
        return m[0]

    def predicate(self, inst, k, m_c, a0):
        if len(m_c) != 2:
            return False
        a, b = self._color(m_c[0]), self._color(m_c[1])
        return a is not None and b is not None and a != b

    def extract(self, inst, a0, s, messages):
        if len(s) != len(self.graph.edges):
            return None
        return tuple(self._color(m) or 0 for m in messages)

    def relation(self, inst, witness):
        return inst.is_proper(witness)

    def encode_messages(self, coloring, rng):
        perm = rng.sample(range(COLORS), COLORS)
        return [bytes((perm[x],)) + rng.randbytes(BLIND_BYTES) for x in coloring]

    def honest_messages(self, inst, witness, rng):
        if not inst.is_proper(witness):
            raise NotColorable("witness is not a proper 3-coloring")
        return self.encode_messages(witness, rng), b""

    def attack_messages(self, inst, rng, coloring=None):
        """Messages for an improper coloring, the challenge indices they answer, and a0."""
        if coloring is None:
            coloring = near_coloring(inst)
        return self.encode_messages(coloring, rng), frozenset(inst.proper_edges(coloring)), b""

    def encode_instance(self, inst):
        return inst.to_bytes()

    def decode_instance(self, data):
        return Graph.from_bytes(data)


def coloring_cno(graph: Graph) -> ColoringProtocol:
    return ColoringProtocol(graph)


# toy discrete-log group: p = 2q + 1 safe prime, g = 4 generates the order-q subgroup
DLOG_P = 4611686018427377339
DLOG_Q = 2305843009213688669
DLOG_G = 4
SCALAR_BYTES = 8


@dataclass(frozen=True)
class DlogInstance:
    p: int
    g: int
    q: int
    X: int

    def check(self):
        return (pow(self.g, self.q, self.p) == 1 and self.g % self.p != 1
                and pow(self.X, self.q, self.p) == 1)

    def to_bytes(self):
        return b"".join(x.to_bytes(SCALAR_BYTES, "big") for x in (self.p, self.g, self.q, self.X))

    @classmethod
    def from_bytes(cls, data):
        if len(data) != 4 * SCALAR_BYTES:
            raise ValueError("bad dlog instance encoding")
        return cls(*(int.from_bytes(data[i:i + SCALAR_BYTES], "big") for i in range(0, 32, SCALAR_BYTES)))

    def dumps(self):
        return f"{self.p:x} {self.g:x} {self.q:x} {self.X:x}\n"

    @classmethod
    def loads(cls, text):
        p, g, q, X = (int(x, 16) for x in text.split())
        return cls(p, g, q, X)


def dlog_keygen(rng, p=DLOG_P, q=DLOG_Q, g=DLOG_G):
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    w = rng.randrange(1, q)
    return DlogInstance(p, g, q, pow(g, w, p)), w


def _scalar(data, bound):
    if data is None or len(data) != SCALAR_BYTES:
        return None
    x = int.from_bytes(data, "big")
    return x if x < bound else None


class DlogSigma(SigmaProtocol):
    """Schnorr identification with challenges {0, 1}: 2-special sound."""

    challenge_count = 2
    a0_len = SCALAR_BYTES

    def __init__(self):
        self.system = ThresholdSystem(2, 2)

    def first_message(self, inst, witness, rng):
        k = rng.randrange(inst.q)
        return pow(inst.g, k, inst.p).to_bytes(SCALAR_BYTES, "big"), (k, witness, inst.q)

    def respond(self, state, c):
        k, w, q = state
        return ((k + c * w) % q).to_bytes(SCALAR_BYTES, "big")

    def verify(self, inst, a0, c, z):
        a = _scalar(a0, inst.p)
        zz = _scalar(z, inst.q)
        if a is None or zz is None or a == 0 or c not in (0, 1):
            return False
        return pow(inst.g, zz, inst.p) == a * pow(inst.X, c, inst.p) % inst.p

    def extract(self, inst, a0, s, responses):
        if set(s) != {0, 1}:
            return None
        z0, z1 = (_scalar(responses[c], inst.q) for c in (0, 1))
        return (z1 - z0) % inst.q

    def relation(self, inst, witness):
        return isinstance(witness, int) and pow(inst.g, witness, inst.p) == inst.X

    def forge(self, inst, c, rng):
        """(a0, z) accepted on challenge ``c`` only, made without the witness."""
        z = rng.randrange(inst.q)
        a = pow(inst.g, z, inst.p) * pow(inst.X, -c, inst.p) % inst.p
        return a.to_bytes(SCALAR_BYTES, "big"), z.to_bytes(SCALAR_BYTES, "big")

    def encode_instance(self, inst):
        return inst.to_bytes()

    def decode_instance(self, data):
        return DlogInstance.from_bytes(data)


def dlog_sigma(instance=None) -> DlogSigma:
    return DlogSigma()
