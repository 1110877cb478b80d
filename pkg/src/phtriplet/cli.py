"""Command-line front end.

Usage:
    pht check FILE [--k-max K] [--out REPORT]
    pht triplet FILE [--rtol R] [--out REPORT]
    pht classify FILE [--out REPORT]
    pht green FILE [--samples K] [--seed S] [--degree D] [--out REPORT]
    pht coercivity FILE [--k-max K] [--out REPORT]
    pht example {dzektser,wave,rod} [--out SPEC]

Exit codes: 0 success, 1 parse error, 2 assumption violation,
3 computational precondition failure.
"""

import argparse
import os
import sys
from pathlib import Path

from . import pipeline
from .config import DEFAULT_SAMPLES, DEFAULT_SEED
from .errors import AssumptionViolated, ParseError, PHTripletError
from .fixtures import FIXTURE_NAMES, fixture
from .problem import ProblemSpec, dumps, load_problem, problem_to_dict

SEED_ENV = "PHT_SEED"


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; that code is taken, so use 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ParseError.exit_code, f"{self.prog}: error: {message}\n")


def resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise ParseError(f"{SEED_ENV} must be an integer, got {env!r}") from exc


def example_problem(name, **params):
    fx = fixture(name, **params)
    parameters = {}
    if name == "rod":
        defaults = {"mu": 1.0, "tension": 1.0, "kappa": 1.0, "rho_area": 1.0}
        parameters = {**defaults, **params}
    return ProblemSpec(
        pair=fx.pair,
        skew=fx.skew,
        boundary_conditions=fx.boundary_conditions,
        name=name,
        parameters=parameters,
    )


def expected_report(problem):
    """What ``check``, ``triplet`` and (if conditions are given) ``classify`` produce."""
    out = {"check": pipeline.check_report(problem), "triplet": pipeline.triplet_report(problem)}
    if problem.boundary_conditions:
        out["classify"] = pipeline.classify_report(problem)
    if problem.name in FIXTURE_NAMES:
        out["notes"] = list(fixture(problem.name, **problem.parameters).notes)
    return out


def expected_path(spec_path):
    p = Path(spec_path)
    return p.with_name(p.stem + ".expected.json")


# -- text summaries ----------------------------------------------------------


def _fmt_bool(b):
    return "yes" if b else "no"


def _summary_check(r):
    lines = []
    for name, c in r["structural"].items():
        extra = f" (defect {c['defect']:.3e}, tol {c['tolerance']:.3e})" if "defect" in c else ""
        lines.append(f"{name:<18} {'pass' if c['passed'] else 'FAIL'}{extra}")
    d = r["defect_dimensions"]
    if "error" in d:
        lines.append(f"defect dimensions  {d['error']}: {d['message']}")
    else:
        lines.append(f"defect dimensions  ({d['d_plus']}, {d['d_minus']}), triplet exists: "
                     f"{_fmt_bool(d['triplet_exists'])}")
    lines.extend(_summary_coercivity(r))
    return lines


def _summary_coercivity(r):
    c = r["coercivity"]
    tail = f"tail certified at k={c['tail_k']}" if c["certified"] else "tail uncertified"
    return [f"coercivity         c^2 = {c['c_squared_min']:.6g} at k={c['argmin_k']} "
            f"(k <= {c['k_max_scanned']}), {tail} [{c['label']}]"]


def _summary_triplet(r):
    rng = r["range"]
    lines = [f"range triplet      mode {rng['mode']}, g = {rng['boundary_space_dim']}"]
    lines.append("A =")
    lines.extend("  " + " ".join(_fmt_entry(z) for z in row) for row in rng["A"])
    if "skew" in r:
        sk = r["skew"]
        lines.append(f"skew triplet       g_Q = {sk['boundary_space_dim']}")
        lines.append("Q =")
        lines.extend("  " + " ".join(_fmt_entry(z) for z in row) for row in sk["Q"])
    return lines


def _fmt_entry(z):
    re, im = z
    if abs(im) < 1e-14:
        return f"{re:8.4g}"
    return f"{re:.4g}{im:+.4g}i"


def _summary_classify(r):
    rel = r["relation"]
    v = rel["verdicts"]
    lines = [
        f"relation (K, L)    self-adjoint: {_fmt_bool(v['self_adjoint'])}, "
        f"maximally dissipative: {_fmt_bool(v['maximally_dissipative'])}",
        f"                   ||KL^H - LK^H|| = {rel['symmetry_defect']:.3e}, "
        f"min eig(KL^H + LK^H) = {rel['dissipativity_min_eig']:.3e}, rank [K L] = {rel['combined_rank']}",
    ]
    if "skew" in r:
        sk = r["skew"]
        sv = sk["verdicts"]
        lines.append(f"skew (F, E)        skew-adjoint: {_fmt_bool(sv['skew_adjoint'])}, "
                     f"maximally dissipative: {_fmt_bool(sv['maximally_dissipative'])}")
        lines.append(f"generalized pH     {_fmt_bool(r['generalized_port_hamiltonian'])}")
    return lines


def _summary_green(r):
    lines = []
    for key in ("range", "skew"):
        if key in r:
            s = r[key]
            lines.append(
                f"{key + ' Green':<18} {s['count']} pairs, max residual {s['max_residual']:.3e}, "
                f"max relative {s['max_relative_residual']:.3e} (seed {s['seed']}, degree <= "
                f"{s['max_degree']}) {'pass' if s['passed'] else 'FAIL'}"
            )
    return lines


SUMMARIES = {
    "check": _summary_check,
    "triplet": _summary_triplet,
    "classify": _summary_classify,
    "green": _summary_green,
    "coercivity": _summary_coercivity,
}


def _emit(report, out):
    for line in SUMMARIES[report["command"]](report):
        print(line)
    if out:
        Path(out).write_text(dumps(report), encoding="utf-8")


# -- commands ------------------------------------------------------------------


def cmd_check(args):
    report = pipeline.check_report(load_problem(args.file), args.k_max)
    _emit(report, args.out)
    if not report["structural_passed"]:
        print("structural assumptions violated", file=sys.stderr)
        return AssumptionViolated.exit_code
    return 0


def cmd_triplet(args):
    _emit(pipeline.triplet_report(load_problem(args.file), args.rtol), args.out)
    return 0


def cmd_classify(args):
    _emit(pipeline.classify_report(load_problem(args.file), args.rtol), args.out)
    return 0


def cmd_green(args):
    if args.samples < 0:
        raise ParseError("--samples must be non-negative")
    report = pipeline.green_report(
        load_problem(args.file), args.samples, resolve_seed(args.seed), args.degree, args.rtol
    )
    _emit(report, args.out)
    return 0


def cmd_coercivity(args):
    _emit(pipeline.coercivity_report(load_problem(args.file), args.k_max), args.out)
    return 0


def cmd_example(args):
    params = {}
    if args.name == "rod":
        params = {"mu": args.mu, "tension": args.tension, "kappa": args.kappa, "rho_area": args.rho_area}
    problem = example_problem(args.name, **params)
    spec = dumps(problem_to_dict(problem))
    if not args.out:
        sys.stdout.write(spec)
        return 0
    Path(args.out).write_text(spec, encoding="utf-8")
    exp = expected_path(args.out)
    exp.write_text(dumps(expected_report(problem)), encoding="utf-8")
    print(f"wrote {args.out} and {exp}")
    return 0


def build_parser():
    parser = _Parser(prog="pht", description="Boundary triplets for implicit port-Hamiltonian operators")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    def with_file(p):
        p.add_argument("file", help="problem specification (JSON)")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--rtol", type=float, default=None, help="relative rank tolerance")
        return p

    p = with_file(add("check", cmd_check, "structural checks, defect dimensions, coercivity"))
    p.add_argument("--k-max", type=int, default=None)
    with_file(add("triplet", cmd_triplet, "boundary matrices and boundary maps"))
    with_file(add("classify", cmd_classify, "classify the boundary conditions in the file"))
    p = with_file(add("green", cmd_green, "Green-identity residuals on random polynomials"))
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or {DEFAULT_SEED}")
    p.add_argument("--degree", type=int, default=None, help="max polynomial degree (default 2N+4)")
    p = with_file(add("coercivity", cmd_coercivity, "sine-mode coercivity scan"))
    p.add_argument("--k-max", type=int, default=None)

    p = add("example", cmd_example, "write a worked example and its expected report")
    p.add_argument("name", choices=FIXTURE_NAMES)
    p.add_argument("--out", help="spec path; the expected report goes next to it")
    p.add_argument("--mu", type=float, default=1.0, help="rod: non-local elasticity parameter")
    p.add_argument("--tension", type=float, default=1.0, help="rod: T")
    p.add_argument("--kappa", type=float, default=1.0, help="rod: stiffness")
    p.add_argument("--rho-area", type=float, default=1.0, help="rod: mass per length")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k_max", None) is not None and args.k_max < 1:
        parser.error("--k-max must be >= 1")
    if getattr(args, "rtol", None) is not None and args.rtol <= 0:
        parser.error("--rtol must be positive")
    try:
        return args.func(args)
    except PHTripletError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
