# Non-interactive proofs for 3-coloring and a toy Schnorr key, plus a signature
import random

from cnozk.extract import build_scheme
from cnozk.instances import dlog_keygen, random_colorable_graph
from cnozk.rom import HashOracle

oracle = HashOracle(256)
rng = random.Random(2)

graph, coloring = random_colorable_graph(12, rng)
print(f"graph with {graph.V} vertices and {len(graph.edges)} edges")

for name in ("cno", "merkle"):
    scheme = build_scheme(name, graph, 17)  # (2/3)^17 is about 2^-10 per proof
    proof = scheme.prove(oracle, graph, coloring, rng).to_bytes()
    print(f"{name:7s} {len(proof):5d} bytes, accepts: {scheme.verify(oracle, graph, proof)}")

key, secret = dlog_keygen(rng)
for name in ("unruh", "mppu"):
    scheme = build_scheme(name, key, 20)
    proof = scheme.prove(oracle, key, secret, rng).to_bytes()
    print(f"{name:7s} {len(proof):5d} bytes, accepts: {scheme.verify(oracle, key, proof)}")

# signing binds the message into the challenge
scheme = build_scheme("mppu", key, 64)
sig = scheme.prove(oracle, key, secret, rng, msg=b"transfer 10").to_bytes()
print("signature ok:      ", scheme.verify(oracle, key, sig, msg=b"transfer 10"))
print("other message ok:  ", scheme.verify(oracle, key, sig, msg=b"transfer 99"))
