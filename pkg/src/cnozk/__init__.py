"""Commit-and-open proofs, Fiat-Shamir and Unruh transforms, and online
extraction against a recording random oracle."""

from .challenges import ListSpace, ProductSpace, SingletonSpace, SubsetSpace
from .cno import CnOProtocol, ParallelRepetition, extract_star, parallel_repeat
from .errors import *  # noqa: F401,F403
from .extract import (ExtractionOutcome, TrialConfig, adversary_collide, adversary_grind, build_scheme,
                      honest_prover, online_extract, run_trials, suc_check, summarize)
from .fs import MERKLE, ORDINARY, FiatShamir, NizkProof, fs_prove, fs_verify, gamma, sig_verify, sign
from .instances import K3, ColoringProtocol, DlogInstance, DlogSigma, Graph, coloring_cno, dlog_keygen, dlog_sigma
from .merkle import mcommit, mopen, mroot_inverse, octo_set, octo_stats, octo_verify
from .params import (capacity_bound, eps_ex_merkle, eps_ex_ordinary, eps_mppu, eps_unruh, parse_prob,
                     table1_compare)
from .rom import CHAL, MSG, NODE, Database, HashOracle, OracleInput, RecordingOracle
from .sigma import ProductSystem, SigmaProtocol, SoundnessSystem, ThresholdSystem, p_triv
from .unruh import pre_unruh, unruh_prove, unruh_scheme, unruh_verify

__version__ = "0.1.0"
