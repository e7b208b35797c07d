"""Online extraction against a recording random oracle.

The prover runs against a lazily sampled oracle; afterwards the extractor
reads the recorded database, inverts the commitments found in the proof,
and hands the recovered messages to the protocol's extractor. No rewinding
is involved, and the simulation of the oracle is exact.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import prod

from .cno import ParallelRepetition, parallel_repeat
from .errors import ProofFormatError, ProverMisbehaved
from .fs import MERKLE, ORDINARY, FiatShamir, NizkProof, decode_chal, gamma
from .instances import BLIND_BYTES, COLORS, ColoringProtocol, DlogInstance, DlogSigma, Graph
from .merkle import mroot_inverse
from .rom import MSG, RecordingOracle
from .unruh import pre_unruh


@dataclass
class ExtractionOutcome:
    inst: object
    proof: bytes
    v: bool
    witness: object
    relation_ok: bool
    suc: bool
    cl: bool
    db_size: int
    q_used: int
    extra: dict = field(default_factory=dict)

    @property
    def extracted(self):
        return self.witness is not None

    def record(self, trial_id):
        return (f"{trial_id},{'accept' if self.v else 'reject'},{int(self.extracted)},"
                f"{int(self.suc)},{int(self.cl)},{self.db_size},{self.q_used}")


REPORT_HEADER = "trial_id,v,extracted,suc,cl,db_size,q_used"


class OracleHandle:
    """The only door the prover gets to the oracle; closed once the prover returns."""

    def __init__(self, oracle):
        self._oracle = oracle
        self.n = oracle.n
        self.nbytes = oracle.nbytes
        self.max_input = oracle.max_input
        self.closed = False

    def _live(self):
        if self.closed:
            raise ProverMisbehaved("oracle handle used after the prover returned")
        return self._oracle

    def query(self, x):
        return self._live().query(x)

    def query_encoded(self, encoded):
        return self._live().query_encoded(encoded)

    def msg(self, m):
        return self._live().msg(m)

    def node(self, left, right):
        return self._live().node(left, right)

    def chal(self, payload):
        return self._live().chal(payload)


def recover_messages(db, scheme: FiatShamir, commitment):
    """Committed messages read back from the database (None where unknown)."""
    ell = scheme.protocol.ell
    if scheme.mode == ORDINARY:
        out = []
        for y in commitment:
            enc = db.inverse_encoded(y)
            out.append(enc[1:] if enc is not None and enc[0] == MSG else None)
        return out
    return mroot_inverse(db, commitment[0], scheme.h)[:ell]


def suc_check(db, scheme: FiatShamir, msg=None) -> bool:
    """True iff some recorded challenge query yields a verifying transcript
    on the database-recovered messages while extraction from them fails."""
    P = scheme.protocol
    nbytes = db.n // 8
    insts, recovered, acceptors = {}, {}, {}
    for payload, digest in db.chal_entries():
        rec = decode_chal(payload, nbytes)
        if rec is None or rec.mode != scheme.mode or rec.ell != P.ell or rec.msg != msg:
            continue
        if len(rec.a0) < P.a0_len:
            continue
        if rec.inst_bytes not in insts:
            try:
                insts[rec.inst_bytes] = P.decode_instance(rec.inst_bytes)
            except (ValueError, IndexError):
                insts[rec.inst_bytes] = None
        inst = insts[rec.inst_bytes]
        if inst is None:
            continue
        key = rec.commitment_bytes
        if key not in recovered:
            recovered[key] = recover_messages(db, scheme, rec.commitment)
        m = recovered[key]
        a0 = rec.a0[:P.a0_len]
        akey = (rec.inst_bytes, key, a0)
        if akey not in acceptors:
            # extraction depends only on (inst, messages, a0), so it is decided once
            acceptors[akey] = (P.acceptor(inst, m, a0), P.extract_star(inst, m, a0) is None)
        accepts, fails = acceptors[akey]
        if fails and accepts(gamma(digest, scheme.space, scheme.gamma_policy)):
            return True
    return False


def online_extract(prover, scheme: FiatShamir, n, seed=None, msg=None, oracle=None, check_suc=True):
    """Run ``prover(oracle) -> (inst, proof)`` against a recording oracle, verify, extract."""
    oracle = oracle if oracle is not None else RecordingOracle(n, seed)
    handle = OracleHandle(oracle)
    out = prover(handle)
    handle.closed = True
    if not (isinstance(out, tuple) and len(out) == 2):
        raise ProverMisbehaved("prover must return (inst, proof)")
    inst, proof = out
    if isinstance(proof, NizkProof):
        proof = proof.to_bytes()
    if not isinstance(proof, (bytes, bytearray)):
        raise ProverMisbehaved("proof must be bytes")
    db = oracle.db
    q_used = db.query_count
    v = scheme.verify(oracle, inst, proof, msg=msg)
    P = scheme.protocol
    witness = None
    try:
        parsed = NizkProof.from_bytes(proof, oracle.nbytes)
        if parsed.ell == P.ell and parsed.mode == scheme.mode and len(parsed.a0) >= P.a0_len:
            m = recover_messages(db, scheme, parsed.commitment)
            witness = P.extract_star(inst, m, parsed.a0[:P.a0_len])
    except ProofFormatError:
        pass
    relation_ok = witness is not None and P.relation(inst, witness)
    if witness is not None and not relation_ok:
        witness = None
    suc = suc_check(db, scheme, msg) if check_suc else False
    return ExtractionOutcome(inst, bytes(proof), v, witness, relation_ok, suc,
                             db.has_collision(), len(db), q_used)


def honest_prover(scheme: FiatShamir, inst, witness, rng, msg=None):
    def prover(oracle):
        return inst, scheme.prove(oracle, inst, witness, rng, msg=msg).to_bytes()
    return prover


def attack_plan(protocol, inst, rng, **kw):
    """Messages valid only on a non-qualifying challenge set.

    Returns ``(messages, a0, accepts, rate)`` where ``accepts(k)`` tells
    whether challenge index ``k`` can be answered and ``rate`` is the
    fraction of such challenges.
    """
    if isinstance(protocol, ParallelRepetition):
        base = protocol.base
        parts = [base.attack_messages(inst, rng, **kw) for _ in range(protocol.r)]
        messages = [m for part in parts for m in part[0]]
        sets = [part[1] for part in parts]
        a0 = b"".join(part[2] for part in parts)
        b = base.space.size

        def accepts(k):
            for s in sets:
                k, d = divmod(k, b)
                if d not in s:
                    return False
            return True

        rate = prod(len(s) / base.space.size for s in sets)
        return messages, a0, accepts, rate
    messages, s_hat, a0 = protocol.attack_messages(inst, rng, **kw)
    return messages, a0, s_hat.__contains__, len(s_hat) / protocol.space.size


def adversary_grind(scheme: FiatShamir, inst, budget, rng, **kw):
    """Commit once to a trivial-attack vector, then vary a nonce appended to a0
    until the derived challenge is one the vector can answer."""
    stats = {"attempts": 0, "found": False}

    def prover(oracle):
        messages, a0, accepts, _ = attack_plan(scheme.protocol, inst, rng, **kw)
        if budget <= 0:
            return inst, b""
        state = scheme.commit(oracle, messages)
        digests = scheme.commitment_digests(state)
        for j in range(budget):
            a0j = a0 + j.to_bytes(8, "big")
            k = scheme.challenge(oracle, inst, digests, a0j)
            stats["attempts"] = j + 1
            if accepts(k):
                stats["found"] = True
                break
        return inst, scheme.open(state, messages, k, a0j).to_bytes()

    prover.stats = stats
    return prover


def _ambiguous_colorings(graph, t):
    """For each color pair (a, b) at vertex t, a coloring of the other vertices that
    lets every edge be answered when t may open as either a or b."""
    if graph.V > 10:
        raise ValueError("collision adversary supports graphs with at most 10 vertices")
    others = [u for u in range(graph.V) if u != t]
    plans = {}
    for a, b in product(range(COLORS), repeat=2):
        for cols in product(range(COLORS), repeat=len(others)):
            col = dict(zip(others, cols))
            ok = True
            for u, v in graph.edges:
                if t in (u, v):
                    w = col[v if u == t else u]
                    ok = a != w or b != w
                else:
                    ok = col[u] != col[v]
                if not ok:
                    break
            if ok:
                plans[(a, b)] = col
                break
    return plans


def adversary_collide(scheme: FiatShamir, inst, budget, rng):
    """Birthday search for two messages with equal digests, then commit to the
    shared digest and open whichever message the challenge needs."""
    P = scheme.protocol
    if not isinstance(P, ColoringProtocol) or scheme.mode != ORDINARY:
        raise ValueError("collision adversary targets the ordinary 3-coloring protocol")
    t = inst.V - 1
    plans = _ambiguous_colorings(inst, t)
    stats = {"found": False, "queries": 0}

    def prover(oracle):
        seen = {}
        pair = None
        for i in range(budget):
            m = bytes((rng.randrange(COLORS),)) + rng.randbytes(BLIND_BYTES)
            y = oracle.msg(m)
            stats["queries"] = i + 1
            prev = seen.get(y)
            if prev is not None and prev != m:
                pair = (prev, m)
                break
            seen[y] = m
        if pair is None:
            return inst, b""
        stats["found"] = True
        ma, mb = pair
        col = plans.get((ma[0], mb[0]))
        if col is None:
            return inst, b""
        messages = [None] * inst.V
        for u, x in col.items():
            messages[u] = bytes((x,)) + rng.randbytes(BLIND_BYTES)
        messages[t] = ma
        y = [oracle.msg(m) for m in messages]
        k = scheme.challenge(oracle, inst, y, b"")
        u, v = P.space.unrank(k)
        if t in (u, v):
            other = messages[v if u == t else u][0]
            messages[t] = ma if ma[0] != other else mb
        return inst, scheme.open(y, messages, k, b"").to_bytes()

    prover.stats = stats
    return prover


def garbage_prover(inst, rng, size=64):
    def prover(oracle):
        return inst, rng.randbytes(size)
    return prover


# batched trials; everything is rebuilt from plain data inside each worker

SCHEMES = {"cno": ("coloring", ORDINARY), "merkle": ("coloring", MERKLE),
           "unruh": ("dlog", ORDINARY), "mppu": ("dlog", MERKLE)}


def build_scheme(name, inst, reps, gamma_policy="expand"):
    kind, mode = SCHEMES[name]
    if kind == "coloring":
        if not isinstance(inst, Graph):
            raise TypeError(f"scheme {name} needs a graph instance")
        base = ColoringProtocol(inst)
    else:
        if not isinstance(inst, DlogInstance):
            raise TypeError(f"scheme {name} needs a dlog instance")
        base = pre_unruh(DlogSigma())
    return FiatShamir(parallel_repeat(base, reps), mode, gamma_policy=gamma_policy)


@dataclass(frozen=True)
class TrialConfig:
    scheme: str
    inst: object
    witness: object
    reps: int
    n: int
    adversary: str = "honest"
    budget: int = 0
    seed: int = 0


def run_trial(config: TrialConfig, trial_id: int, keep_db=False):
    scheme = build_scheme(config.scheme, config.inst, config.reps)
    rng = random.Random(f"{config.seed}:prover:{trial_id}")
    if config.adversary == "honest":
        prover = honest_prover(scheme, config.inst, config.witness, rng)
    elif config.adversary == "grind":
        prover = adversary_grind(scheme, config.inst, config.budget, rng)
    elif config.adversary == "collide":
        prover = adversary_collide(scheme, config.inst, config.budget, rng)
    elif config.adversary == "garbage":
        prover = garbage_prover(config.inst, rng)
    else:
        raise ValueError(f"unknown adversary {config.adversary!r}")
    oracle = RecordingOracle(config.n, f"{config.seed}:oracle:{trial_id}")
    out = online_extract(prover, scheme, config.n, oracle=oracle)
    out.proof = b""
    out.extra = dict(getattr(prover, "stats", {}))
    if keep_db:
        out.extra["db"] = oracle.db
    return out


def _run_chunk(args):
    config, ids = args
    return [run_trial(config, i) for i in ids]


def run_trials(config: TrialConfig, trials: int, workers=1):
    """Outcomes of ``trials`` independent runs, in trial order."""
    if workers <= 1:
        return [run_trial(config, i) for i in range(trials)]
    chunks = [(config, range(i, min(i + 256, trials))) for i in range(0, trials, 256)]
    with ProcessPoolExecutor(workers) as ex:
        return [o for chunk in ex.map(_run_chunk, chunks) for o in chunk]


def summarize(outcomes):
    N = len(outcomes)
    acc = [o for o in outcomes if o.v]
    return {
        "trials": N,
        "accept_rate": len(acc) / N if N else 0.0,
        "extract_rate": sum(o.extracted for o in outcomes) / N if N else 0.0,
        "accepted_but_not_extracted": sum(1 for o in acc if not o.extracted),
        "suc_on_failures": sum(1 for o in acc if not o.extracted and o.suc),
        "cl_rate": sum(o.cl for o in outcomes) / N if N else 0.0,
        "mean_db_size": sum(o.db_size for o in outcomes) / N if N else 0.0,
    }
