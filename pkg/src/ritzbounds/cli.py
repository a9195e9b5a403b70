"""Command-line harness.

Subcommands:

* ``verify``     batch-verify every applicable bound on random instances
* ``example``    evaluate one worked example at one angle
* ``sweep``      tabulate a worked example across an angle grid
* ``check-file`` run the bound battery on matrices loaded from JSON files

Exit codes: 0 all must-hold bounds pass, 1 at least one violation,
2 invalid input or specification.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import bounds as bnd
from . import harness, matio
from .errors import ParseError, RitzBoundsError
from .subspaces import as_basis


def _parse_spectrum(text):
    parts = text.split(":")
    if parts[0] == "uniform" and len(parts) == 3:
        return ("uniform", float(parts[1]), float(parts[2]))
    if parts[0] == "clustered" and len(parts) == 2:
        return ("clustered", float(parts[1]))
    raise argparse.ArgumentTypeError(
        "spectrum must be uniform:LO:HI or clustered:GAP"
    )


def _parse_grid(text):
    if ":" in text:
        lo, hi, num = text.split(":")
        return np.linspace(float(lo), float(hi), int(num)).tolist()
    return [float(v) for v in text.split(",") if v.strip()]


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ritzbounds",
        description="Empirical verification of Ritz-value perturbation bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="batch-verify bounds on random instances")
    p.add_argument("--d", type=int, default=8, help="ambient dimension")
    p.add_argument("--k", type=int, default=3, help="subspace dimension")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None,
                   help="verdict slack (default: scaled per bound)")
    p.add_argument("--mode", choices=["random_pair", "invariant_plus_perturbation"],
                   default="random_pair")
    p.add_argument("--eps", type=float, default=1e-1,
                   help="perturbation size for the invariant mode")
    p.add_argument("--spectrum", type=_parse_spectrum, default=("uniform", -1.0, 1.0),
                   metavar="uniform:LO:HI|clustered:GAP")
    p.add_argument("--invariant-choice", default="top",
                   help="'top', 'random', or comma-separated indices")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--json", dest="json_out", metavar="PATH",
                   help="write the full report to PATH")

    p = sub.add_parser("example", help="evaluate a worked example")
    p.add_argument("--name", choices=["exa1", "exa2"], required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--params", default="0,1,2,3",
                   help="comma-separated a,b,c,d with a < b < c < d")

    p = sub.add_parser("sweep", help="tabulate a worked example over a grid")
    p.add_argument("--name", choices=["exa1", "exa2"], required=True)
    p.add_argument("--grid", required=True, metavar="LO:HI:N|t1,t2,...")
    p.add_argument("--params", default="0,1,2,3")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    p = sub.add_parser("check-file", help="run the bound battery on stored matrices")
    p.add_argument("--matrix", required=True, help="JSON file with the Hermitian matrix")
    p.add_argument("--x", required=True, help="JSON file with the first basis")
    p.add_argument("--y", required=True, help="JSON file with the second basis")
    p.add_argument("--tol", type=float, default=None)
    return parser


def _cmd_verify(args):
    choice = args.invariant_choice
    if choice not in ("top", "random"):
        choice = tuple(int(v) for v in choice.split(","))
    mode = (args.mode,) if args.mode == "random_pair" else (args.mode, args.eps)
    spec = harness.InstanceSpec(
        d=args.d, k=args.k, spectrum=args.spectrum, subspace_mode=mode,
        seed=args.seed, invariant_choice=choice,
    )
    report = harness.verify_all(spec, args.trials, tol=args.tol, threads=args.threads)
    doc = report.to_dict()
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    for tid, entry in doc["theorems"].items():
        skip_note = f" skips={entry['skips']}" if entry["skips"] else ""
        print(f"{tid}: pass {entry['passes']} fail {entry['failures']}{skip_note}")
    for tid, entry in doc["experimental"].items():
        print(f"{tid} (experimental): holds {entry['holds']}/{entry['evaluated']}"
              f" worst_margin {entry['worst_margin']}")
    print(f"instances {doc['instances']} failures {doc['failures']}"
          f" elapsed {doc['elapsed_s']:.2f}s")
    return 0 if report.total_failures == 0 else 1


def _params(text):
    vals = [float(v) for v in text.split(",")]
    if len(vals) != 4:
        raise RitzBoundsError("params must be four comma-separated numbers")
    return vals


def _cmd_example(args):
    a, b, c, d = _params(args.params)
    doc = harness.example_report(args.name, args.theta, a, b, c, d)
    print(json.dumps(doc, indent=2))
    return 0 if doc["holds"] else 1


_SWEEP_COLUMNS = {
    "exa1": ["theta", "lhs_1", "cos_rhs_1", "tan_rhs_1", "cos_margin", "tan_margin",
             "holds"],
    "exa2": ["theta", "delta", "delta_prime", "classical_ratio", "improved_ratio",
             "quadratic_spectral_lhs", "quadratic_spectral_rhs", "holds"],
}


def _cmd_sweep(args):
    a, b, c, d = _params(args.params)
    rows = harness.sweep_theta(args.name, _parse_grid(args.grid), a, b, c, d)
    columns = _SWEEP_COLUMNS[args.name]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        if args.format == "json":
            json.dump(rows, out, indent=2)
            out.write("\n")
        else:
            writer = csv.writer(out)
            writer.writerow(columns)
            for row in rows:
                writer.writerow(["" if row[c] is None else row[c] for c in columns])
    finally:
        if args.out:
            out.close()
    return 0 if all(row["holds"] for row in rows) else 1


def _cmd_check_file(args):
    A = matio.load_matrix(args.matrix)
    if A.shape[0] != A.shape[1]:
        raise ParseError(f"matrix must be square, got {A.shape}", location=args.matrix)
    herm_dev = float(np.max(np.abs(A - A.conj().T)))
    if herm_dev > 1e-8 * max(1.0, float(np.max(np.abs(A)))):
        raise ParseError(f"matrix is not Hermitian (deviation {herm_dev:.3e})",
                         location=args.matrix)
    X = as_basis(matio.load_matrix(args.x), "X")
    Y = as_basis(matio.load_matrix(args.y), "Y")
    reports, skips = harness.evaluate_instance(A, X, Y, tol=args.tol)
    failures = 0
    for rep in reports:
        status = "pass" if rep.verdict.holds else "FAIL"
        if rep.metadata.get("experimental"):
            status += " (experimental)"
        elif not rep.verdict.holds:
            failures += 1
        print(f"{rep.theorem_id}: {status} worst_margin {rep.verdict.worst_margin:.3e}")
    for tid, reason in sorted(skips.items()):
        print(f"{tid}: skipped ({reason})")
    return 0 if failures == 0 else 1


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "verify": _cmd_verify,
        "example": _cmd_example,
        "sweep": _cmd_sweep,
        "check-file": _cmd_check_file,
    }
    try:
        return handlers[args.command](args)
    except RitzBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
