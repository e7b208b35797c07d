# The extractor only reads the oracle's query log, it never rewinds the prover
from fractions import Fraction
from math import prod

from cnozk.extract import TrialConfig, run_trials, summarize
from cnozk.instances import K3

# honest prover: every proof yields the coloring
honest = run_trials(TrialConfig("cno", K3, (0, 1, 2), 17, 64, seed=1), 200)
print("honest:", summarize(honest))

# grinding: commit to a coloring that is wrong on one edge, retry the nonce
trials, budget, reps = 500, 1024, 17
outs = run_trials(TrialConfig("cno", K3, None, reps, 64, "grind", budget, seed=2), trials)
s = summarize(outs)
p = float(1 - (1 - Fraction(2, 3) ** reps) ** budget)
print(f"grind: forged {s['accept_rate']:.3f} (predicted {p:.3f}),",
      f"extracted {s['extract_rate']:.3f}, flagged SUC on {s['suc_on_failures']}/{s['accepted_but_not_extracted']}")

# collisions at a tiny digest size let the prover equivocate at one vertex
outs = run_trials(TrialConfig("cno", K3, None, 1, 16, "collide", 1024, seed=3), 200)
found = sum(o.extra["found"] for o in outs)
print(f"collide: found {found}/200, birthday predicts {1 - prod(1 - i / 65536 for i in range(1024)):.4f};",
      f"CL flagged on {sum(o.cl for o in outs)}")
