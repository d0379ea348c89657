"""Command-line front end: generate sets, construct/search lattices, verify,
run the reconstruction demo, and sweep benchmarks to CSV.

Exit codes: 0 success, 2 search failure (or a failed verification), 1
usage/IO errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import freqset, lattice
from .heuristic import heuristic_search
from .kernels import MODE_INTEGRATION, MODE_RECONSTRUCTION, MODES
from .primes import is_prime
from .search import CbcConfig, cbc_construct

FAMILIES = ("cube", "axiscross", "anova2", "whc")

BENCH_COLUMNS = ("experiment", "family", "d", "N", "threshold", "gamma", "mode",
                 "K", "T", "seed", "rep", "card", "M", "status", "verified", "seconds")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; 2 means "search failed" here,
    # so route usage problems through our own error path instead.
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunRecord:
    experiment: str
    family: str
    d: object
    N: object
    threshold: object
    gamma: str
    mode: str
    K: int
    T: int
    seed: object
    rep: object
    card: object
    M: object
    status: str
    verified: object
    seconds: object

    def row(self):
        return ["" if getattr(self, c) is None else str(getattr(self, c)) for c in BENCH_COLUMNS]


def _parse_gamma(text: str) -> freqset.WeightSpec:
    if text.strip() == "j^-2":
        return freqset.WeightSpec.inverse_square()
    try:
        gammas = [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --gamma {text!r}: use 'j^-2' or a comma list of rationals")
    return freqset.WeightSpec.explicit(gammas)


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse {flag} {text!r}: expected comma-separated integers")


def _generate(family: str, d: int | None, N: int | None, threshold: int | None,
              gamma: freqset.WeightSpec, dmax: int | None) -> freqset.FrequencySet:
    if family == "cube":
        if d is None or N is None:
            raise UsageError("cube needs --d and --N")
        return freqset.gen_cube(d, N)
    if family == "axiscross":
        if d is None or N is None:
            raise UsageError("axiscross needs --d and --N")
        return freqset.gen_axis_cross(d, N)
    if family == "anova2":
        if d is None or N is None:
            raise UsageError("anova2 needs --d and --N")
        return freqset.gen_superposition2(d, N)
    if family == "whc":
        if threshold is None:
            raise UsageError("whc needs --threshold")
        if dmax is None:
            if gamma.kind != freqset.WeightSpec.INVERSE_SQUARE:
                raise UsageError("explicit --gamma weights need --dmax")
            dmax = max(1, isqrt(threshold))
        return freqset.gen_weighted_hyperbolic(gamma, threshold, dmax)
    raise UsageError(f"unknown family {family!r}")


def _verifier(mode: str):
    return lattice.verify_integration if mode == MODE_INTEGRATION else lattice.verify_reconstruction


def _verified(I: freqset.FrequencySet, M, z, mode: str) -> bool:
    return _verifier(mode)(lattice.Rank1Lattice(M, tuple(z)), I)


def _result_json(I, mode, seed, status, M, z, trail, seconds) -> dict:
    ok = status == "success" and _verified(I, M, z, mode)
    return {
        "status": status,
        "d": I.d,
        "M": M if status == "success" else None,
        "z": list(z) if status == "success" else None,
        "mode": mode,
        "seed": seed,
        "verified": ok,
        "trail": [{"Mtilde": t[0], "attempts": t[1], "ok": t[2]} for t in trail],
        "seconds": seconds,
    }


def _emit(obj: dict, out: str | None, fmt: str) -> None:
    if fmt == "json":
        text = json.dumps(obj, indent=2) + "\n"
    else:
        flat = {k: v for k, v in obj.items() if k != "trail"}
        flat["z"] = "" if flat.get("z") is None else " ".join(str(v) for v in flat["z"])
        buf = []
        buf.append(",".join(flat.keys()))
        buf.append(",".join("" if v is None else str(v) for v in flat.values()))
        text = "\n".join(buf) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed_or_entropy(seed: int | None) -> int:
    if seed is None:
        # No seed given: draw one and echo it, so the run stays reproducible.
        return random.SystemRandom().getrandbits(63)
    if not 0 <= seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    return seed


def cmd_gen(args) -> int:
    I = _generate(args.set, args.d, args.N, args.threshold, _parse_gamma(args.gamma), args.dmax)
    if args.out:
        freqset.write_set(I, args.out)
        print(len(I))
    else:
        for row in I.array:
            sys.stdout.write(" ".join(str(int(v)) for v in row) + "\n")
        print(len(I), file=sys.stderr)
    return 0


def cmd_construct(args) -> int:
    I = freqset.read_set(args.setfile)
    if not is_prime(args.M):
        print(f"warning: M = {args.M} is not prime; proceeding anyway", file=sys.stderr)
    seed = _seed_or_entropy(args.seed)
    cfg = CbcConfig(M=args.M, T=min(args.T, args.M), mode=args.mode, seed=seed)
    started = time.perf_counter()
    result = cbc_construct(I, cfg)
    seconds = time.perf_counter() - started
    trail = [(args.M, 1, result.success)]
    obj = _result_json(I, args.mode, seed, result.status, result.M, result.z, trail, seconds)
    _emit(obj, args.out, args.format)
    return 0 if result.success else 2


def cmd_search(args) -> int:
    I = freqset.read_set(args.setfile)
    seed = _seed_or_entropy(args.seed)
    started = time.perf_counter()
    outcome = heuristic_search(I, args.mode, K=args.K, T=args.T, rng=random.Random(seed))
    seconds = time.perf_counter() - started
    trail = [(e.M_tilde, e.attempts, e.ok) for e in outcome.trail]
    obj = _result_json(I, args.mode, seed, outcome.status, outcome.M, outcome.z, trail, seconds)
    _emit(obj, args.out, args.format)
    return 0 if outcome.success else 2


def cmd_verify(args) -> int:
    I = freqset.read_set(args.setfile)
    with open(args.latticefile, "r", encoding="utf-8") as fh:
        lat = lattice.Rank1Lattice.from_dict(json.load(fh))
    ok = _verifier(args.mode)(lat, I)
    print("true" if ok else "false")
    return 0 if ok else 2


def cmd_reconstruct_demo(args) -> int:
    I = freqset.read_set(args.setfile)
    seed = _seed_or_entropy(args.seed)
    rng = random.Random(seed)
    started = time.perf_counter()
    outcome = heuristic_search(I, MODE_RECONSTRUCTION, K=args.K, T=args.T, rng=rng)
    if not outcome.success:
        obj = {"status": "failed", "d": I.d, "M": None, "z": None,
               "mode": MODE_RECONSTRUCTION, "seed": seed, "verified": False,
               "trail": [{"Mtilde": e.M_tilde, "attempts": e.attempts, "ok": e.ok}
                         for e in outcome.trail],
               "seconds": time.perf_counter() - started}
        _emit(obj, args.out, args.format)
        return 2
    lat = lattice.Rank1Lattice(outcome.M, outcome.z)
    coeffs = np.asarray([complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(len(I))])
    p = lattice.TrigPolynomial(I, coeffs)
    samples = lattice.eval_on_lattice(p, lat)
    recovered = lattice.reconstruct_coeffs(lat, I, samples)
    max_err = float(np.max(np.abs(recovered - coeffs)))
    norm1 = float(np.sum(np.abs(coeffs)))
    obj = {
        "status": "success",
        "d": I.d,
        "M": outcome.M,
        "z": list(outcome.z),
        "mode": MODE_RECONSTRUCTION,
        "seed": seed,
        "verified": _verified(I, outcome.M, outcome.z, MODE_RECONSTRUCTION),
        "coefficients": len(I),
        "max_abs_error": max_err,
        "rel_error": max_err / norm1 if norm1 else 0.0,
        "seconds": time.perf_counter() - started,
    }
    _emit(obj, args.out, args.format)
    return 0


def cmd_bench(args) -> int:
    gamma = _parse_gamma(args.gamma)
    seed0 = _seed_or_entropy(args.seed)
    jobs = []
    if args.set == "whc":
        for thr in _parse_int_list(args.threshold, "--threshold") if args.threshold else []:
            dmax = args.dmax or max(1, isqrt(thr))
            jobs.append((f"whc-t{thr}", dict(family="whc", d=dmax, N=None, threshold=thr)))
        if not jobs:
            raise UsageError("whc bench needs --threshold")
    else:
        if args.d is None or args.N is None:
            raise UsageError(f"{args.set} bench needs --d and --N")
        for d in _parse_int_list(args.d, "--d"):
            jobs.append((f"{args.set}-d{d}-N{args.N}", dict(family=args.set, d=d, N=args.N, threshold=None)))

    records: list[RunRecord] = []
    for exp_id, params in sorted(jobs, key=lambda job: job[0]):
        I = _generate(params["family"], params["d"], params["N"], params["threshold"], gamma, args.dmax)
        reps = []
        for rep in range(args.reps):
            rep_seed = seed0 + rep
            started = time.perf_counter()
            outcome = heuristic_search(I, args.mode, K=args.K, T=args.T,
                                       rng=random.Random(rep_seed))
            seconds = time.perf_counter() - started
            ok = outcome.success and _verified(I, outcome.M, outcome.z, args.mode)
            rec = RunRecord(exp_id, params["family"], params["d"], params["N"],
                            params["threshold"], args.gamma, args.mode, args.K, args.T,
                            rep_seed, rep, len(I), outcome.M if outcome.success else None,
                            outcome.status, ok, f"{seconds:.6f}")
            reps.append(rec)
        records.extend(sorted(reps, key=lambda r: r.rep))
        if not reps:
            continue
        sizes = [r.M for r in reps if r.M is not None]
        times = [float(r.seconds) for r in reps]
        for name, agg_m, agg_t in (
            ("mean", (sum(sizes) / len(sizes)) if sizes else None,
             (sum(times) / len(times)) if times else None),
            ("min", min(sizes) if sizes else None, min(times) if times else None),
            ("max", max(sizes) if sizes else None, max(times) if times else None),
        ):
            records.append(RunRecord(exp_id, params["family"], params["d"], params["N"],
                                     params["threshold"], args.gamma, args.mode, args.K,
                                     args.T, None, name, len(I), agg_m, "", "",
                                     None if agg_t is None else f"{agg_t:.6f}"))

    if args.format == "json":
        payload = [dict(zip(BENCH_COLUMNS, rec.row())) for rec in records]
        text = json.dumps(payload, indent=2) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0

    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(BENCH_COLUMNS)
        for rec in records:
            writer.writerow(rec.row())
    finally:
        if args.out:
            fh.close()
    return 0


def build_parser() -> Parser:
    parser = Parser(prog="cbclat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_k=True):
        if with_k:
            p.add_argument("--K", type=int, default=5, help="retries per lattice size (default 5)")
        p.add_argument("--T", type=int, default=100, help="candidate budget per step (default 100)")
        p.add_argument("--mode", choices=list(MODES), default=MODE_RECONSTRUCTION)
        p.add_argument("--seed", type=int, default=None, help="64-bit RNG seed; drawn and echoed if omitted")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("gen", help="generate a frequency-set file")
    p.add_argument("--set", choices=list(FAMILIES), required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--threshold", type=int, default=None)
    p.add_argument("--gamma", default="j^-2")
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("construct", help="single bounded CBC construction at a fixed M")
    p.add_argument("setfile")
    p.add_argument("--M", type=int, required=True)
    add_common(p, with_k=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="halving search for a small lattice size")
    p.add_argument("setfile")
    add_common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check a lattice JSON against a set file")
    p.add_argument("setfile")
    p.add_argument("latticefile")
    p.add_argument("--mode", choices=list(MODES), default=MODE_RECONSTRUCTION)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reconstruct-demo", help="sample a random polynomial and reconstruct it")
    p.add_argument("setfile")
    add_common(p)
    p.set_defaults(func=cmd_reconstruct_demo)

    p = sub.add_parser("bench", help="repeated searches over a family sweep, CSV output")
    p.add_argument("--set", choices=list(FAMILIES), required=True)
    p.add_argument("--d", default=None, help="comma-separated dimensions")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--threshold", default=None, help="comma-separated thresholds (whc)")
    p.add_argument("--gamma", default="j^-2")
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--reps", type=int, default=10)
    add_common(p)
    p.set_defaults(func=cmd_bench, format="csv")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
