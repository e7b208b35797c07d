# Merkle openings: how many sibling labels does a verifier need?
import numpy as np

from cnozk.merkle import mcommit, mopen, octo_set, octo_stats, octo_verify
from cnozk.rom import HashOracle

oracle = HashOracle(256)
messages = [f"leaf {i}".encode() for i in range(8)]
tree = mcommit(oracle, messages)
print("root", tree.root.hex()[:16], "...")

# one leaf: a full authentication path, one label per level
m_c, octo = mopen(tree, [1])
print("open {1}:", [v for v, _ in octo])
print("verifies:", octo_verify(oracle, [1], tree.root, m_c, octo, 3))

# neighbouring leaves share most of the path
print("open {0,1}:", sorted(octo_set([0, 1], 3)))
print("open {2,6}:", sorted(octo_set([2, 6], 3)))

# size distribution over every 4-subset of 64 leaves (sampled)
stats = octo_stats(64, 4, samples=20000, rng=1)
sizes = np.array(list(stats["histogram"].keys()))
weights = np.array(list(stats["histogram"].values()))
print("kappa=4, l=64: sizes", sizes.tolist(), "mean", round(stats["mean"], 2))

# bytes at n=256: 64 digests vs root plus octopus
per_vertex = 1 + 1 + 32
print("ordinary commitment bytes:", 64 * 32)
print("merkle worst case bytes:  ", 32 + 2 + per_vertex * int(sizes.max()))
