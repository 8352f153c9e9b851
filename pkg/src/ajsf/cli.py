"""Command-line front end.

Every subcommand is a thin adapter over the library; when an artifact file
is written, a JSON run manifest is written next to it so the run can be
reproduced.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict, dataclass, field

from . import __version__
from .digitset import digit_set
from .errors import BudgetExceeded, NonConvergence
from .expansion import (ajsf, ajsf_weight, expansion_from_json,
                        hamming_weight, validate_ajsf)
from .automata import (ajsf_transducer, ajsf_transducer_1d, export_dot,
                       reset_check, transducer_to_json)
from .oracle import MemoTable, min_weight_bruteforce
from .polynomial import bp_format
from .spectral import adjacency, char_poly, dominant_constants
from .stats import (DEFAULT_BUDGET, empirical_stats, exact_moments,
                    fluctuation_table, normality_check)
from .wnaf_roots import find_roots


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    outputs: list[str] = field(default_factory=list)
    seeds: list[int] = field(default_factory=list)
    version: str = __version__

    def write_for(self, artifact_path: str):
        path = artifact_path + ".manifest.json"
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=1)
            fh.write("\n")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _manifest(args, outputs) -> RunManifest:
    params = {k: v for k, v in vars(args).items() if k != "func"}
    return RunManifest(args.subcommand, params, outputs=list(outputs))


def _digit_set_args(parser):
    parser.add_argument("--l", type=int, required=True, help="lower digit bound (<= 0)")
    parser.add_argument("--u", type=int, required=True, help="upper digit bound (>= 1)")


def _build_transducer(ds, d: int):
    return ajsf_transducer_1d(ds) if d == 1 else ajsf_transducer(ds, d)


def cmd_expand(args) -> int:
    ds = digit_set(args.l, args.u)
    e = ajsf(tuple(args.n), ds)
    print(e.format())
    print(f"weight {hamming_weight(e)}")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(e.to_json() + "\n")
        _manifest(args, [args.json]).write_for(args.json)
    return 0


def cmd_weight(args) -> int:
    ds = digit_set(args.l, args.u)
    print(ajsf_weight(tuple(args.n), ds))
    return 0


def cmd_validate(args) -> int:
    if args.file:
        text = sys.stdin.read() if args.file == "-" else open(args.file).read()
        e = expansion_from_json(text)
    else:
        rows = [[int(tok) for tok in row.split()]
                for row in args.rows.split(";")]
        payload = json.dumps({"l": args.l, "u": args.u, "d": len(rows),
                              "rows": rows})
        e = expansion_from_json(payload)
    ok = validate_ajsf(e)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_minweight(args) -> int:
    ds = digit_set(args.l, args.u)
    memo = MemoTable(ds, args.d)
    mismatches = []
    if args.d == 1:
        space = ((n,) for n in range(args.nmax))
    elif args.d == 2:
        space = ((a, b) for a in range(args.nmax) for b in range(args.nmax))
    else:
        raise ValueError("minweight sweep supports --d 1 or 2")
    for vec in space:
        expect = min_weight_bruteforce(vec, ds, memo)
        got = ajsf_weight(vec, ds)
        if expect != got:
            mismatches.append((vec, expect, got))
    if mismatches:
        for vec, expect, got in mismatches[:20]:
            print(f"MISMATCH {vec}: optimal {expect}, recoded {got}")
        print(f"{len(mismatches)} mismatches")
        return 1
    print(f"no mismatches for {args.nmax ** args.d} inputs "
          f"(D({ds.l},{ds.u}), d={args.d})")
    return 0


def cmd_transducer(args) -> int:
    ds = digit_set(args.l, args.u)
    tr = _build_transducer(ds, args.d)
    bound = 4 * tr.w - 2 if args.d == 1 else (1 << (3 * args.d)) * tr.w
    print(f"states {tr.n_states} (bound {bound}), reset word 0^{tr.reset_len}, "
          f"reset_check {'pass' if reset_check(tr) else 'FAIL'}")
    outputs = []
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(export_dot(tr) + "\n")
        outputs.append(args.dot)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(transducer_to_json(tr) + "\n")
        outputs.append(args.json)
    for path in outputs:
        _manifest(args, outputs).write_for(path)
    return 0


def cmd_constants(args) -> int:
    ds = digit_set(args.l, args.u)
    tr = _build_transducer(ds, args.d)
    p = char_poly(adjacency(tr))
    res = dominant_constants(p, args.d)
    print(f"e = {res.e}")
    print(f"v = {res.v}")
    print(f"beta0 = {_fmt(res.beta0)}")
    print(f"delta = {_fmt(res.delta)}")
    if args.charpoly:
        print(f"charpoly = {bp_format(p.coeffs)}")
    return 0


def cmd_moments(args) -> int:
    ds = digit_set(args.l, args.u)
    rep = exact_moments(ds, args.d, args.n)
    print(f"mean = {rep.mean}")
    print(f"variance = {rep.variance}")
    if args.empirical:
        emp = empirical_stats(ds, args.d, args.n, budget=args.budget)
        agree = emp.mean == rep.mean and emp.variance == rep.variance
        print(f"empirical mean = {emp.mean}")
        print(f"empirical variance = {emp.variance}")
        print("agreement " + ("exact" if agree else "FAILED"))
        if not agree:
            return 1
    return 0


def _fluctuation_samples(args) -> list[int]:
    if args.n:
        return list(args.n)
    if not args.grid:
        raise ValueError("give sample sizes as positional N values or --grid")
    kmin, kmax, per = (int(tok) for tok in args.grid.split(":"))
    samples = set()
    for k in range(kmin, kmax + 1):
        for i in range(per):
            samples.add(round(2 ** (k + i / per)))
    return sorted(samples)


def cmd_fluctuation(args) -> int:
    ds = digit_set(args.l, args.u)
    rows = fluctuation_table(ds, args.d, _fluctuation_samples(args))
    header = ("N", "log2N_frac", "psi1_residual")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for n_value, fracpart, residual in rows:
                writer.writerow([n_value, f"{fracpart:.12g}", f"{residual:.12g}"])
        _manifest(args, [args.csv]).write_for(args.csv)
        print(f"wrote {len(rows)} rows to {args.csv}")
    else:
        print(",".join(header))
        for n_value, fracpart, residual in rows:
            print(f"{n_value},{fracpart:.12g},{residual:.12g}")
    return 0


def cmd_normality(args) -> int:
    ds = digit_set(args.l, args.u)
    ks = normality_check(ds, args.d, args.n, budget=args.budget, jobs=args.jobs)
    print(f"ks_distance = {_fmt(ks)}")
    return 0


def cmd_wnaf_roots(args) -> int:
    rep = find_roots(args.w)
    rows = [(k, z.real, z.imag, abs(z), abs(rep.eigenvalues[k]))
            for k, z in enumerate(rep.roots)]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("k", "re_z", "im_z", "abs_z", "abs_x"))
            for row in rows:
                writer.writerow([row[0]] + [f"{x:.12g}" for x in row[1:]])
        _manifest(args, [args.csv]).write_for(args.csv)
        print(f"wrote {len(rows)} roots to {args.csv}")
    else:
        print("k,re_z,im_z,abs_z,abs_x")
        for k, re, im, az, ax in rows:
            print(f"{k},{re:.12g},{im:.12g},{az:.12g},{ax:.12g}")
    print(f"beta0 = {_fmt(rep.beta0)}")
    print(f"delta = {_fmt(rep.delta)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ajsf",
        description="Optimal-weight joint digit expansions: recoding, weight "
                    "transducers, exact distribution constants.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("expand", help="print the optimal expansion of a vector")
    _digit_set_args(p)
    p.add_argument("--json", help="also write the expansion as JSON")
    p.add_argument("n", type=int, nargs="+", help="vector components")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("weight", help="print the optimal weight of a vector")
    _digit_set_args(p)
    p.add_argument("n", type=int, nargs="+")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("validate", help="check expansion syntax")
    _digit_set_args(p)
    p.add_argument("--file", help="expansion JSON file ('-' for stdin)")
    p.add_argument("--rows", help="row-major digits, rows ';'-separated")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("minweight", help="sweep recoded weight vs brute force")
    _digit_set_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--nmax", type=int, required=True, help="inputs in [0, nmax)")
    p.set_defaults(func=cmd_minweight)

    p = sub.add_parser("transducer", help="build the weight transducer")
    _digit_set_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--dot", help="write DOT to this path")
    p.add_argument("--json", help="write the transition table to this path")
    p.set_defaults(func=cmd_transducer)

    p = sub.add_parser("constants", help="exact mean/variance growth constants")
    _digit_set_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--charpoly", action="store_true",
                   help="also print the characteristic polynomial")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("moments", help="exact moments over {0..N-1}^d")
    _digit_set_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--empirical", action="store_true",
                   help="cross-check against full enumeration")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("fluctuation", help="periodic residual table")
    _digit_set_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--csv", help="write CSV to this path")
    p.add_argument("--grid", help="kmin:kmax:per_octave sample grid")
    p.add_argument("n", type=int, nargs="*", help="explicit sample sizes")
    p.set_defaults(func=cmd_fluctuation)

    p = sub.add_parser("normality", help="KS distance of standardized weights")
    _digit_set_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("wnaf-roots", help="sector roots and gap exponent")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--csv", help="write CSV to this path")
    p.set_defaults(func=cmd_wnaf_roots)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceeded, NonConvergence) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
