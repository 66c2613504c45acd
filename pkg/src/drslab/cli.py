"""Command line front end.

Subcommands: run-drs, check-equivalence, check-cycle, witness-skew,
classify-resolvent, moreau-check.  Machine output (CSV or JSON) goes to
--out or stdout; human-readable summary lines go to stderr so stdout
stays parseable.  Exit codes: 0 success, 1 error, 2 non-convergence.

Problem files are JSON documents like

    {"A": {"type": "prox_l1", "weight": 1.0},
     "B": {"type": "prox_quadratic", "Q": [[1.0]], "q": [-1.0]},
     "tau": 1.0}

plus command-specific keys (z0, dim, op, C, a1, b1).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .cyclic import classify_resolvent, drs_map_matrix, sample_cycles, skew_three_cycle
from .drs import CONVERGED, DEFAULT_MAX_ITERS, DEFAULT_STOP_TOL, DrsProblem, run, solution_certificate
from .equivalence import compare_formulations
from .errors import DrslabError
from .operators import moreau_residual, operator_from_dict

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_CONVERGENCE = 2

EQUIVALENCE_TOL = 1e-8
MOREAU_TOL = 1e-10


class CliError(Exception):
    """Raised for malformed input; rendered on stderr with exit code 1."""


def _load_document(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read problem file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"problem file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CliError("problem file must hold a JSON object")
    return doc


def _operator(doc, key):
    try:
        spec = doc[key]
    except KeyError:
        raise CliError(f"problem file is missing the {key!r} operator") from None
    try:
        return operator_from_dict(spec)
    except (ValueError, DrslabError) as exc:
        raise CliError(f"bad {key!r} operator: {exc}") from exc


def _pick(flag_value, doc, key, default):
    if flag_value is not None:
        return flag_value
    return doc.get(key, default)


def _build_problem(args, doc):
    return DrsProblem(
        _operator(doc, "A"),
        _operator(doc, "B"),
        tau=float(_pick(args.tau, doc, "tau", 1.0)),
        gamma=float(_pick(getattr(args, "gamma", None), doc, "gamma", 1.0)),
        max_iters=int(_pick(getattr(args, "iters", None), doc, "max_iters", DEFAULT_MAX_ITERS)),
        stop_tol=float(_pick(getattr(args, "stop_tol", None), doc, "stop_tol", DEFAULT_STOP_TOL)),
        seed=int(_pick(args.seed, doc, "seed", 0)),
    )


def _problem_dim(problem, doc, z0=None):
    if z0 is not None:
        return len(z0)
    if "z0" in doc:
        return len(np.atleast_1d(np.asarray(doc["z0"], dtype=float)))
    if problem.dim is not None:
        return problem.dim
    if "dim" in doc:
        return int(doc["dim"])
    raise CliError("dimension cannot be inferred; add a 'dim' or 'z0' key")


def _start_point(problem, doc):
    n = _problem_dim(problem, doc)
    if "z0" in doc:
        z0 = np.atleast_1d(np.asarray(doc["z0"], dtype=float))
        if z0.shape != (n,):
            raise CliError(f"z0 must be a vector of length {n}")
        return z0
    return np.zeros(n)


def _emit(args, text):
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)


def _emit_json(args, payload):
    _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _say(message):
    print(message, file=sys.stderr)


def _format_vector(v):
    return "[" + ", ".join(format(x, ".12g") for x in np.atleast_1d(v)) + "]"


def cmd_run_drs(args):
    doc = _load_document(args.problem)
    problem = _build_problem(args, doc)
    z0 = _start_point(problem, doc)
    record = run(problem, z0)
    certified = solution_certificate(problem, record.final_z, 100.0 * problem.stop_tol)
    if args.format == "json":
        payload = record.to_dict()
        payload["certificate"] = bool(certified)
        _emit_json(args, payload)
    else:
        _emit(args, record.to_csv_string())
    _say(f"status: {record.status} after {len(record)} iterations")
    _say(f"final x: {_format_vector(record.final_x)}")
    _say(f"certificate: {'pass' if certified else 'fail'}")
    if record.status != CONVERGED:
        return EXIT_NO_CONVERGENCE
    return EXIT_OK if certified else EXIT_NO_CONVERGENCE


def cmd_check_equivalence(args):
    doc = _load_document(args.problem)
    problem = _build_problem(args, doc)
    iters = int(args.iters) if args.iters is not None else 100
    if "z0" in doc:
        z0 = np.atleast_1d(np.asarray(doc["z0"], dtype=float))
    else:
        n = _problem_dim(problem, doc)
        z0 = np.random.default_rng(problem.seed).standard_normal(n)
    report = compare_formulations(problem, z0, iters)
    _emit_json(args, report.to_dict())
    ok = report.max_deviation <= EQUIVALENCE_TOL
    _say(
        f"max deviation {report.max_deviation:.3e} over {iters} iterations "
        f"(reduced path: {report.reduced_path})"
    )
    return EXIT_OK if ok else EXIT_ERROR


def cmd_check_cycle(args):
    doc = _load_document(args.problem)
    key = "op" if "op" in doc else "A"
    op = _operator(doc, key)
    dim = doc.get("dim")
    seed = int(_pick(args.seed, doc, "seed", 0))
    witness = sample_cycles(op, args.n_max, args.trials, seed, dim=dim)
    payload = {
        "n_max": args.n_max,
        "trials": args.trials,
        "seed": seed,
        "witness": witness.to_dict() if witness is not None else None,
    }
    _emit_json(args, payload)
    if witness is None:
        _say(f"no violation found up to cycles of length {args.n_max}")
    else:
        _say(f"violation found: cycle of length {witness.n}, sum {witness.cycle_sum:.6g}")
    return EXIT_OK


def cmd_witness_skew(args):
    doc = _load_document(args.problem)
    if "C" not in doc:
        raise CliError("witness-skew needs a 'C' matrix in the problem file")
    C = np.asarray(doc["C"], dtype=float)
    if C.ndim != 2:
        raise CliError("'C' must be a matrix")
    n2, n1 = C.shape
    rng = np.random.default_rng(args.seed if args.seed is not None else 0)
    if "a1" in doc:
        a1 = np.atleast_1d(np.asarray(doc["a1"], dtype=float))
    else:
        a1 = rng.standard_normal(n1)
        for _ in range(100):
            if np.linalg.norm(C @ a1) > 1e-12:
                break
            a1 = rng.standard_normal(n1)
    if "b1" in doc:
        b1 = np.atleast_1d(np.asarray(doc["b1"], dtype=float))
    else:
        b1 = rng.standard_normal(n2)
    witness = skew_three_cycle(C, a1, b1)
    _emit_json(args, witness.to_dict())
    _say(f"xi = {witness.xi:.12g}, cycle sum = {witness.cycle_sum:.12g}")
    return EXIT_OK if witness.certifies else EXIT_ERROR


def cmd_classify_resolvent(args):
    doc = _load_document(args.problem)
    problem = _build_problem(args, doc)
    dim = _problem_dim(problem, doc)
    T = drs_map_matrix(problem, dim=dim)
    result = classify_resolvent(T)
    payload = result.to_dict()
    payload["T"] = T.tolist()
    _emit_json(args, payload)
    _say(f"verdict: {result.verdict} (symmetry defect {result.symmetry_defect:.3e})")
    return EXIT_OK


def cmd_moreau_check(args):
    doc = _load_document(args.problem)
    if "op" in doc:
        named = [("op", _operator(doc, "op"))]
    else:
        named = [(key, _operator(doc, key)) for key in ("A", "B") if key in doc]
    if not named:
        raise CliError("moreau-check needs an 'op' or 'A'/'B' operator")
    tau = float(_pick(args.tau, doc, "tau", 1.0))
    rng = np.random.default_rng(args.seed if args.seed is not None else 0)
    per_op = {}
    worst = 0.0
    for key, op in named:
        d = op.dim if op.dim is not None else int(doc.get("dim", 1))
        residuals = [
            moreau_residual(op, tau, rng.standard_normal(d)) for _ in range(args.trials)
        ]
        per_op[key] = max(residuals)
        worst = max(worst, per_op[key])
    payload = {
        "max_residual": worst,
        "per_operator": per_op,
        "tau": tau,
        "tolerance": MOREAU_TOL,
        "trials": args.trials,
        "ok": worst <= MOREAU_TOL,
    }
    _emit_json(args, payload)
    _say(f"max residual {worst:.3e} over {args.trials} points per operator")
    return EXIT_OK if worst <= MOREAU_TOL else EXIT_ERROR


def build_parser():
    parser = argparse.ArgumentParser(
        prog="drslab",
        description="Splitting runs, formulation checks, and monotonicity probes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, iters_help):
        p.add_argument("--problem", required=True, help="path to the problem JSON file")
        p.add_argument("--tau", type=float, default=None, help="step size (overrides the file)")
        p.add_argument("--seed", type=int, default=None, help="seed for any randomness (default 0)")
        p.add_argument("--out", default=None, help="write machine output here instead of stdout")
        if iters_help:
            p.add_argument("--iters", type=int, default=None, help=iters_help)

    p = sub.add_parser("run-drs", help="iterate the splitting and export the trajectory")
    common(p, "iteration cap")
    p.add_argument("--gamma", type=float, default=None, help="relaxation in (0, 2]")
    p.add_argument("--stop-tol", dest="stop_tol", type=float, default=None, help="stop tolerance")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="trajectory format")
    p.set_defaults(func=cmd_run_drs)

    p = sub.add_parser("check-equivalence", help="compare the three formulations")
    common(p, "iterations to compare (default 100)")
    p.set_defaults(func=cmd_check_equivalence)

    p = sub.add_parser("check-cycle", help="random search for a cyclic-monotonicity violation")
    common(p, None)
    p.add_argument("--n-max", dest="n_max", type=int, default=6, help="largest cycle length")
    p.add_argument("--trials", type=int, default=1000, help="tuples per cycle length")
    p.set_defaults(func=cmd_check_cycle)

    p = sub.add_parser("witness-skew", help="deterministic three-point witness for a skew coupling")
    common(p, None)
    p.set_defaults(func=cmd_witness_skew)

    p = sub.add_parser("classify-resolvent", help="classify the splitting map of a linear problem")
    common(p, None)
    p.add_argument("--gamma", type=float, default=None, help="relaxation in (0, 2]")
    p.set_defaults(func=cmd_classify_resolvent)

    p = sub.add_parser("moreau-check", help="sample the resolvent-complement identity")
    common(p, None)
    p.add_argument("--trials", type=int, default=100, help="points per operator")
    p.set_defaults(func=cmd_moreau_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except DrslabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
