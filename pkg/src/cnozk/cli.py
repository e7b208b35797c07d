"""Command-line front end.

Exit codes: 0 success (or proof accepted), 1 proof rejected, 2 usage
error, 3 file error.
"""

import argparse
import random
import sys

from . import params as P
from .errors import CnoError
from .extract import REPORT_HEADER, SCHEMES, TrialConfig, build_scheme, run_trial, run_trials, summarize
from .fs import MERKLE, NizkProof
from .instances import K3, DlogInstance, Graph, dlog_keygen, loads_coloring
from .merkle import octo_stats, tree_height
from .rom import HashOracle

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_FILE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class FileError(Exception):
    pass


def _read(path, mode="r"):
    try:
        with open(path, mode) as fh:
            return fh.read()
    except OSError as e:
        raise FileError(f"{path}: {e.strerror or e}") from e


def _write(path, data):
    try:
        with open(path, "wb" if isinstance(data, bytes) else "w") as fh:
            fh.write(data)
    except OSError as e:
        raise FileError(f"{path}: {e.strerror or e}") from e


def _is_coloring(scheme):
    return SCHEMES[scheme][0] == "coloring"


def load_instance(scheme, path):
    text = _read(path)
    try:
        return Graph.loads(text) if _is_coloring(scheme) else DlogInstance.loads(text)
    except (ValueError, IndexError) as e:
        raise FileError(f"{path}: malformed instance ({e})") from e


def load_witness(scheme, path):
    text = _read(path)
    try:
        return loads_coloring(text) if _is_coloring(scheme) else int(text.strip(), 16)
    except ValueError as e:
        raise FileError(f"{path}: malformed witness ({e})") from e


def _int(text):
    """Integers, also in 2^k form."""
    x = P.parse_prob(text)
    if x.denominator != 1:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    return int(x)


def _prob(text):
    try:
        return P.parse_prob(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"bad probability {text!r}") from e


def _scheme_args(p, proof_in=False):
    p.add_argument("--scheme", choices=sorted(SCHEMES), required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--n", type=int, default=256, help="digest length in bits")
    if proof_in:
        p.add_argument("--proof", required=True)
    else:
        p.add_argument("--witness", required=True)
        p.add_argument("--seed", default="0")
        p.add_argument("--out", required=True)


def _scheme(args, inst):
    if args.reps < 1:
        raise UsageError("--reps must be positive")
    if args.n < 8 or args.n % 8:
        raise UsageError("--n must be a positive multiple of 8")
    return build_scheme(args.scheme, inst, args.reps)


def cmd_prove(args, msg=None):
    inst = load_instance(args.scheme, args.instance)
    witness = load_witness(args.scheme, args.witness)
    scheme = _scheme(args, inst)
    proof = scheme.prove(HashOracle(args.n), inst, witness, random.Random(args.seed), msg=msg)
    data = proof.to_bytes()
    _write(args.out, data)
    print(f"wrote {len(data)} bytes to {args.out}")
    return EXIT_OK


def cmd_verify(args, msg=None):
    inst = load_instance(args.scheme, args.instance)
    data = _read(args.proof, "rb")
    scheme = _scheme(args, inst)
    ok = scheme.verify(HashOracle(args.n), inst, data, msg=msg)
    print("accept" if ok else "reject")
    return EXIT_OK if ok else EXIT_REJECT


def cmd_sign(args):
    return cmd_prove(args, msg=_read(args.msg, "rb"))


def cmd_sig_verify(args):
    return cmd_verify(args, msg=_read(args.msg, "rb"))


def cmd_extract(args):
    witness = None
    if args.instance:
        inst = load_instance(args.scheme, args.instance)
    elif _is_coloring(args.scheme):
        inst, witness = K3, (0, 1, 2)
    else:
        inst, witness = dlog_keygen(random.Random(f"{args.seed}:instance"))
    if args.witness:
        witness = load_witness(args.scheme, args.witness)
    if args.adversary == "honest" and witness is None:
        raise UsageError("the honest prover needs --witness")
    if args.adversary == "collide" and args.scheme != "cno":
        raise UsageError("the collision adversary targets --scheme cno")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    _scheme(args, inst)
    config = TrialConfig(args.scheme, inst, witness, args.reps, args.n, args.adversary, args.budget, args.seed)
    outcomes = run_trials(config, args.trials, workers=args.workers)
    records = [REPORT_HEADER] + [o.record(i) for i, o in enumerate(outcomes)]
    if args.csv:
        _write(args.csv, "\n".join(records) + "\n")
    else:
        print("\n".join(records))
    if args.dump_db:
        # trials are deterministic, so trial 0 is rerun to capture its database
        db = run_trial(config, 0, keep_db=True).extra["db"]
        _write(args.dump_db, "\n".join(db.dump_lines()) + "\n")
    stats = summarize(outcomes)
    width = max(map(len, stats))
    for key, value in stats.items():
        shown = f"{value:.4f}" if isinstance(value, float) else str(value)
        print(f"{key:<{width}}  {shown}", file=sys.stderr if not args.csv else sys.stdout)
    return EXIT_OK


def _fmt(x):
    return P.mpmath.nstr(x, 15)


def _log2(x):
    return f"{float(P.mpmath.log(x, 2)):.4f}" if x > 0 else "-inf"


def cmd_params(args):
    inputs = dict(l=args.l, q=args.q, n=args.n, ptriv=args.ptriv, r=args.r, l0=args.l0,
                  kappa=args.kappa, eps=args.eps, C=args.C)
    used = {
        "thm3": "l q n ptriv kappa", "thm4": "l q n ptriv kappa", "cor2": "l0 r q n ptriv",
        "cor3": "l0 r q n ptriv", "lemma3": "l q n ptriv", "lemma4": "l q n ptriv",
        "table1": "eps q r n C",
    }[args.formula].split()
    shown = " ".join(f"{k}={inputs[k]}" for k in used)
    result = P.evaluate(args.formula, **inputs)
    rows = []
    if args.formula == "table1":
        for row in result:
            rows.append((row.name + (" [asymptotic]" if row.asymptotic else ""), row.value, row.vacuous))
    else:
        # an error bound carries no information once it reaches 1
        label = args.formula if result.unsimplified is None else f"{args.formula} simplified"
        rows.append((label, result.simplified, result.simplified >= 1))
        if result.unsimplified is not None:
            rows.append((f"{args.formula} unsimplified", result.unsimplified, result.unsimplified >= 1))
    if args.csv:
        print("formula,inputs,value,log2,vacuous")
        for name, value, vac in rows:
            print(f"{name},{shown},{_fmt(value)},{_log2(value)},{int(vac)}")
    else:
        width = max(len(r[0]) for r in rows)
        print(f"inputs: {shown}")
        for name, value, vac in rows:
            print(f"{name:<{width}}  {_fmt(value):>24}  log2 {_log2(value):>10}  {'VACUOUS' if vac else ''}")
        if args.formula != "table1":
            if result.exact is not None:
                print(f"exact simplified: {result.exact}")
            if result.unsimplified is not None:
                print(f"simplified >= unsimplified: {result.simplified_dominates}")
    return EXIT_OK


def _octo_bytes(size, h, nbytes):
    return 2 + size * (1 + (h + 7) // 8 + nbytes)


def cmd_bench(args):
    ell, kappa = args.l, args.kappa
    try:
        h = tree_height(ell)
    except ValueError as e:
        raise UsageError(str(e)) from e
    if not 1 <= kappa <= ell:
        raise UsageError("--kappa must lie in [1, --l]")
    nbytes = args.n // 8
    stats = octo_stats(ell, kappa, samples=args.samples, rng=args.seed,
                       exhaustive=True if args.exhaustive else None)
    mode = "exhaustive" if stats["exhaustive"] else f"{stats['samples']} samples"
    print(f"octopus sizes, l={ell} kappa={kappa} ({mode})")
    total = stats["samples"]
    for size, count in stats["histogram"].items():
        print(f"  size {size:>3}: {count:>8}  ({count / total:.4f})")
    print(f"  min {stats['min']}  mean {stats['mean']:.3f}  max {stats['max']}")
    print()
    print(f"commitment bytes at n={args.n}: ordinary l*n/8 vs merkle root + octopus block")
    print(f"{'kappa':>6} {'ordinary':>9} {'merkle mean':>12} {'merkle max':>11}  smaller")
    ks = sorted({k for k in (1 << i for i in range(h + 1)) if k <= ell} | {kappa})
    ordinary = ell * nbytes
    for k in ks:
        s = octo_stats(ell, k, samples=min(args.samples, 2000), rng=args.seed)
        mean = nbytes + _octo_bytes(s["mean"], h, nbytes)
        worst = nbytes + _octo_bytes(s["max"], h, nbytes)
        print(f"{k:>6} {ordinary:>9} {mean:>12.1f} {worst:>11}  {'merkle' if worst < ordinary else 'ordinary'}")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="cnozk", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="write a non-interactive proof")
    _scheme_args(p)
    p.set_defaults(func=cmd_prove)
    p = sub.add_parser("verify", help="check a proof (exit 0 accept, 1 reject)")
    _scheme_args(p, proof_in=True)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("sign", help="sign the contents of --msg")
    _scheme_args(p)
    p.add_argument("--msg", required=True)
    p.set_defaults(func=cmd_sign)
    p = sub.add_parser("sig-verify", help="check a signature on --msg")
    _scheme_args(p, proof_in=True)
    p.add_argument("--msg", required=True)
    p.set_defaults(func=cmd_sig_verify)

    p = sub.add_parser("extract", help="run provers against a recording oracle and extract")
    p.add_argument("--scheme", choices=sorted(SCHEMES), required=True)
    p.add_argument("--instance", help="default: K3, or a fresh toy dlog key")
    p.add_argument("--witness")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--trials", type=_int, default=100)
    p.add_argument("--adversary", choices=["honest", "grind", "collide"], default="honest")
    p.add_argument("--budget", type=_int, default=1024)
    p.add_argument("--seed", default="0")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dump-db", help="write the database of trial 0")
    p.add_argument("--csv", help="write per-trial records here instead of stdout")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("params", help="evaluate an extraction-error bound")
    p.add_argument("--formula", choices=P.FORMULAS, required=True)
    p.add_argument("--l", type=_int, default=64)
    p.add_argument("--q", type=_int, default=0)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--ptriv", type=_prob, default=P.Fraction(1, 2))
    p.add_argument("--r", type=_int, default=1)
    p.add_argument("--l0", type=_int, default=2)
    p.add_argument("--kappa", type=_int, default=1)
    p.add_argument("--eps", type=_prob, default=P.Fraction(1))
    p.add_argument("--C", type=_int, default=2, help="challenges per repetition (table1)")
    p.add_argument("--csv", action="store_true", help="comma-separated output")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("bench", help="benchmarks")
    bsub = p.add_subparsers(dest="bench", required=True)
    b = bsub.add_parser("octopus", help="octopus size distribution and proof-size crossover")
    b.add_argument("--l", type=_int, required=True)
    b.add_argument("--kappa", type=_int, required=True)
    b.add_argument("--n", type=int, default=256)
    b.add_argument("--samples", type=int, default=10000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--exhaustive", action="store_true")
    b.set_defaults(func=cmd_bench)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except FileError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FILE
    except (UsageError, CnoError, TypeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())
