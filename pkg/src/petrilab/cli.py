"""Command-line entry point.

Every command prints one sorted JSON document carrying the tool version, the
seed and sha256 digests of its input files.  Exit codes: 0 ok, 2 input error,
3 a verified inequality failed, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bounds import BoundQuery
from .curve import canonical_divisor
from .errors import BudgetExceeded, PetriLabError
from .hopf import (
    DEFAULT_BUDGET,
    brute_count_rank_le,
    count_rank_le,
    hopf_witness_search,
    image_span_dim,
    injective_on_factors,
)
from .petri import inequality_chain, petri_report, remove_base_points, restricted_kernel_dim
from .riemann_roch import clifford_index_divisor, h0, is_special, rr_check, rr_space
from .serialize import InputError, curve_from_json, divisor_from_json, dumps, load_json, tensor_from_json
from .suites import DEFAULT_SAMPLES, SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_BUDGET = 0, 2, 3, 4


class Run:
    """Inputs loaded for one invocation plus the digests that go in the report."""

    def __init__(self, args):
        self.args = args
        self.digests: dict[str, str] = {}

    def load(self, role: str, path):
        if path is None:
            raise InputError(f"missing --{'divisor' if role == 'divisor' else 'input'} file for the {role}")
        doc, digest = load_json(path)
        self.digests[role] = digest
        return doc

    def curve(self):
        return curve_from_json(self.load("curve", self.args.input))

    def curve_and_divisor(self):
        C = self.curve()
        return C, divisor_from_json(self.load("divisor", self.args.divisor), C)


def cmd_curve_info(run: Run):
    C = run.curve()
    return {
        "genus": C.genus,
        "K": str(canonical_divisor(C)),
        "field": C.field.to_json(),
        "equation": str(C),
        "curve_id": C.digest(),
    }, EXIT_OK


def cmd_rr(run: Run):
    C, D = run.curve_and_divisor()
    V = rr_space(C, D)
    return {
        "divisor": str(D),
        "degree": D.degree,
        "genus": C.genus,
        "h0": V.dim,
        "h0_KmD": h0(C, canonical_divisor(C) - D),
        "basis": [str(fn) for fn in V.basis],
        "rr_identity": rr_check(C, D),
        "special": is_special(C, D),
        "clifford_index": clifford_index_divisor(C, D),
    }, EXIT_OK


def cmd_petri(run: Run):
    C, D = run.curve_and_divisor()
    R = petri_report(C, D, run.args.seed)
    return R.to_json(), EXIT_OK if R.ok else EXIT_VIOLATION


def cmd_bpf(run: Run):
    C, D = run.curve_and_divisor()
    Dp, removed = remove_base_points(C, D)
    kernel = restricted_kernel_dim(C, Dp, 2, run.args.seed)
    want = h0(C, canonical_divisor(C) - 2 * Dp)
    ok = kernel == want
    return {
        "divisor": str(D),
        "base_points": [str(P) for P in removed],
        "bpf_divisor": str(Dp),
        "restricted_kernel_dim": kernel,
        "h0_Km2D": want,
        "ok": ok,
    }, EXIT_OK if ok else EXIT_VIOLATION


def cmd_chain(run: Run):
    C, D = run.curve_and_divisor()
    R = inequality_chain(C, D, run.args.seed)
    return R.to_json(), EXIT_OK if R.ok else EXIT_VIOLATION


def cmd_hopf_test(run: Run):
    T = tensor_from_json(run.load("tensor", run.args.input))
    a, b, c = T.dims
    budget = run.args.budget or DEFAULT_BUDGET
    image = image_span_dim(T)
    out = {
        "dims": [a, b, c],
        "field": T.field.to_json(),
        "injective_on_factors": injective_on_factors(T, budget),
        "image_dim": image,
        "bound": a + b - 1,
        "bound_holds": image >= a + b - 1,
    }
    out["witness"] = hopf_witness_search(T, run.args.max_ext, budget).to_json()
    return out, EXIT_OK


def cmd_detvar_count(run: Run):
    a = run.args
    P = count_rank_le(a.m, a.n, a.rank)
    out = {"polynomial": P.to_json(), "expected_codimension": (a.m - a.rank) * (a.n - a.rank)}
    if a.q is not None:
        out["q"] = a.q
        out["count"] = P(a.q)
        if a.brute:
            out["brute_force"] = brute_count_rank_le(a.m, a.n, a.rank, a.q, a.budget or (1 << 24))
    ok = P.codimension == out["expected_codimension"] and out.get("brute_force", out.get("count")) == out.get("count")
    return out, EXIT_OK if ok else EXIT_VIOLATION


def cmd_bounds(run: Run):
    a = run.args
    try:
        q = BoundQuery(a.genus, a.degree, a.rank, a.cliff, a.observed_dim)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return q.evaluate(), EXIT_OK


def cmd_suite(run: Run):
    a = run.args
    cfg = SuiteConfig(seed=a.seed, samples=a.samples, jobs=a.jobs, budget=a.budget or (1 << 16), max_ext=a.max_ext)
    res = run_suite(a.name, cfg)
    print(f"{a.name}: {res.cases} cases in {res.wall_time:.2f}s", file=sys.stderr)
    return res.to_json(), EXIT_OK if res.ok else EXIT_VIOLATION


COMMANDS = {
    "curve-info": cmd_curve_info,
    "rr": cmd_rr,
    "petri": cmd_petri,
    "bpf": cmd_bpf,
    "chain": cmd_chain,
    "hopf-test": cmd_hopf_test,
    "detvar-count": cmd_detvar_count,
    "bounds": cmd_bounds,
    "suite": cmd_suite,
}


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", type=Path, help="curve or tensor JSON file")
    common.add_argument("-d", "--divisor", type=Path, help="divisor JSON file")
    common.add_argument("--seed", type=int, default=0, help="seed for pencil choice and sampling")
    common.add_argument("--max-ext", type=_positive, default=2, help="largest extension degree searched")
    common.add_argument("--budget", type=_positive, default=None, help="enumeration budget")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="petrilab", description="Petri maps and dimension bounds on hyperelliptic curves.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("curve-info", "rr", "petri", "bpf", "chain", "hopf-test"):
        sub.add_parser(name, parents=[common])

    p = sub.add_parser("detvar-count", parents=[common])
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--rank", "-r", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--brute", action="store_true", help="also enumerate all matrices")

    p = sub.add_parser("bounds", parents=[common])
    p.add_argument("--genus", "-g", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--rank", "-r", type=int, required=True)
    p.add_argument("--cliff", "-c", type=int, default=0, help="Clifford index of the curve")
    p.add_argument("--observed-dim", type=int)

    p = sub.add_parser("suite", parents=[common])
    p.add_argument("name", choices=SUITES)
    p.add_argument("--samples", type=int, help=f"sample count (defaults: {DEFAULT_SAMPLES})")
    p.add_argument("--jobs", type=_positive, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    run = Run(args)
    try:
        result, code = COMMANDS[args.command](run)
    except BudgetExceeded as exc:
        print(f"error: BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PetriLabError, InputError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {
        "tool": "petrilab",
        "version": __version__,
        "command": args.command,
        "seed": args.seed,
        "inputs": dict(sorted(run.digests.items())),
        "result": result,
    }
    text = dumps(report)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
