"""Command line front end.

Subcommands: ``validate``, ``analyze``, ``disentangle``, ``generate``,
``bench2q``.  Reports are canonical JSON documents on stdout (see
stateio for the rendering rules), so a report produced twice from the
same inputs is byte-identical; nothing time- or host-dependent is ever
printed.  A directory argument runs every ``.json`` file inside it,
sorted by filename, each item independent of the others.

Exit codes: 0 ok, 1 validation or criterion breach, 2 solver
non-convergence, 3 parse/usage/I-O trouble.  The default validation
tolerance can be set through the QDISENT_TOL environment variable.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

import numpy as np

from .core import DEFAULT_TOL, BipartiteState, QDisentError, density_defects
from .correlated import (
    CorrelatedMethod,
    CorrelatedPair,
    NeumannMethod,
    PointerMethod,
    SolverConfig,
    disentanglement_report,
)
from .criteria import separability_verdict
from .reductions import neumann_reduce
from .states import GenSpec, generate
from .stateio import (
    StateFormatError,
    doc_to_matrix,
    dumps_canonical,
    file_digest,
    format_real,
    load_document,
    save_state,
)
from .twoqubit import BENCH_GATE, transcription_bench

ENV_TOL = "QDISENT_TOL"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NONCONVERGENCE = 2
EXIT_FORMAT = 3

_KIND_ALIASES = {
    "bell": "bell",
    "product": "pure_product",
    "pure_product": "pure_product",
    "separable": "separable_mixture",
    "separable_mixture": "separable_mixture",
    "mixed": "maximally_mixed",
    "maximally_mixed": "maximally_mixed",
    "random": "random",
}


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 means non-convergence here,
    # so usage trouble leaves through 3 with the rest of the parse/I-O
    # failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FORMAT, f"{self.prog}: error: {message}\n")


def _resolve_tol(flag_value):
    if flag_value is not None:
        if flag_value <= 0.0:
            raise _CliError(EXIT_FORMAT, f"--tol must be positive, got {flag_value}")
        return float(flag_value)
    raw = os.environ.get(ENV_TOL)
    if raw is None:
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise _CliError(
            EXIT_FORMAT, f"{ENV_TOL} must be a number, got {raw!r}"
        ) from None
    if value <= 0.0:
        raise _CliError(EXIT_FORMAT, f"{ENV_TOL} must be positive, got {raw!r}")
    return value


def _expand(path: str) -> tuple[list[str], bool]:
    """Resolve a CLI path to (file list, is_batch)."""
    p = Path(path)
    if p.is_dir():
        names = sorted((c for c in p.iterdir() if c.is_file()
                        and c.suffix == ".json"), key=lambda c: c.name)
        if not names:
            raise _CliError(EXIT_FORMAT, f"no .json state files in {path}")
        return [str(c) for c in names], True
    return [path], False


def _grid(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _native(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _emit(echo: str, items: list[dict], batch: bool) -> None:
    if batch:
        doc = {"command": echo, "items": items}
    else:
        doc = {"command": echo, **items[0]}
    sys.stdout.write(dumps_canonical(doc))


# ---------------------------------------------------------------- validate

def _validate_item(path: str, tol: float) -> tuple[dict, int]:
    item: dict = {"input": path}
    try:
        doc = load_document(path)
        item["digest"] = file_digest(path)
        rho, dims = doc_to_matrix(doc)
    except StateFormatError as exc:
        item["valid"] = False
        item["error"] = f"StateFormatError: {exc}"
        return item, EXIT_FORMAT
    item["dims"] = [dims[0], dims[1]]
    try:
        check = density_defects(rho)
        item["hermiticity_defect"] = check.hermiticity_defect
        item["trace_defect"] = check.trace_defect
        item["min_eigenvalue"] = check.min_eigenvalue
        BipartiteState(rho, dims, tol=tol)
    except QDisentError as exc:
        item["valid"] = False
        item["error"] = f"{type(exc).__name__}: {exc}"
        return item, EXIT_INVALID
    except np.linalg.LinAlgError as exc:
        item["valid"] = False
        item["error"] = f"LinAlgError: {exc}"
        return item, EXIT_INVALID
    item["valid"] = True
    item["error"] = None
    return item, EXIT_OK


def cmd_validate(args) -> int:
    tol = _resolve_tol(args.tol)
    paths, batch = _expand(args.path)
    echo = f"validate --tol {format_real(tol)} {args.path}"
    items = []
    worst = EXIT_OK
    for path in paths:
        item, code = _validate_item(path, tol)
        items.append(item)
        worst = max(worst, code)
    _emit(echo, items, batch)
    return worst


# ----------------------------------------------------------------- analyze

def _load_item(path: str, tol: float):
    """Shared load step: returns (state, header dict) or (None, error item)."""
    try:
        digest = file_digest(path)
        doc = load_document(path)
        state = BipartiteState(*doc_to_matrix(doc), tol=tol)
    except StateFormatError as exc:
        return None, ({"input": path, "error": f"StateFormatError: {exc}"},
                      EXIT_FORMAT)
    except QDisentError as exc:
        return None, ({"input": path, "error": f"{type(exc).__name__}: {exc}"},
                      EXIT_INVALID)
    return state, ({"input": path, "digest": digest,
                    "dims": [state.n_a, state.n_b]}, EXIT_OK)


def _analyze_item(path: str, tol: float, mode: str) -> tuple[dict, int]:
    state, (item, code) = _load_item(path, tol)
    if state is None:
        return item, code
    verdict = separability_verdict(state, mode=mode, tol=tol)
    fields = {k: _native(v) for k, v in dataclasses.asdict(verdict).items()}
    fields["all_pass"] = verdict.all_pass
    item["verdict"] = fields
    item["reduced_a"] = _grid(neumann_reduce(state, keep="A"))
    item["reduced_b"] = _grid(neumann_reduce(state, keep="B"))
    return item, EXIT_OK if verdict.all_pass else EXIT_INVALID


def cmd_analyze(args) -> int:
    tol = _resolve_tol(args.tol)
    paths, batch = _expand(args.path)
    echo = f"analyze --tol {format_real(tol)} --red-mode {args.red_mode} {args.path}"
    items = []
    worst = EXIT_OK
    for path in paths:
        item, code = _analyze_item(path, tol, args.red_mode)
        items.append(item)
        worst = max(worst, code)
    _emit(echo, items, batch)
    return worst


# ------------------------------------------------------------- disentangle

def _solver_doc(pair: CorrelatedPair | None):
    if pair is None:
        return None
    log = pair.trace_log
    return {
        "iterations": pair.iterations,
        "converged": pair.converged,
        "residual_a": pair.residual_a,
        "residual_b": pair.residual_b,
        "final_step_a": log[-1].step_a if log else None,
        "final_step_b": log[-1].step_b if log else None,
        "max_herm_defect": max(
            (max(r.herm_defect_a, r.herm_defect_b) for r in log), default=0.0),
        "min_eig_seen": min(
            (min(r.min_eig_a, r.min_eig_b) for r in log), default=0.0),
    }


def _method_spec(args):
    if args.method == "neumann":
        return NeumannMethod()
    if args.method == "pointer":
        return PointerMethod(p=args.p, b=complex(args.b_re, args.b_im), m=args.m)
    config = SolverConfig(tol=args.tol, max_iter=args.max_iter,
                          damping=args.damping, m_power=args.m)
    return CorrelatedMethod(config)


def _disentangle_item(path: str, vtol: float, spec) -> tuple[dict, int]:
    state, (item, code) = _load_item(path, vtol)
    if state is None:
        return item, code
    rep = disentanglement_report(state, [spec], tol=vtol)[0]
    item["method"] = rep.method
    item["factor_a"] = None if rep.factor_a is None else _grid(rep.factor_a)
    item["factor_b"] = None if rep.factor_b is None else _grid(rep.factor_b)
    item["product"] = None if rep.product is None else _grid(rep.product.rho)
    item["frobenius_to_input"] = rep.frobenius_to_input
    item["entropy_input"] = rep.entropy_input
    item["entropy_product"] = rep.entropy_product
    item["entropy_change"] = rep.entropy_change
    item["solver"] = _solver_doc(rep.solver)
    item["error"] = rep.error
    if rep.error is None:
        return item, EXIT_OK
    if rep.error.startswith("NonConvergence"):
        return item, EXIT_NONCONVERGENCE
    return item, EXIT_INVALID


def cmd_disentangle(args) -> int:
    vtol = _resolve_tol(None)
    if args.tol <= 0.0:
        raise _CliError(EXIT_FORMAT, f"--tol must be positive, got {args.tol}")
    if args.max_iter < 1:
        raise _CliError(EXIT_FORMAT, f"--max-iter must be >= 1, got {args.max_iter}")
    if not 0.0 <= args.damping < 1.0:
        raise _CliError(EXIT_FORMAT,
                        f"--damping must sit in [0, 1), got {args.damping}")
    if args.m < 1:
        raise _CliError(EXIT_FORMAT, f"--m must be >= 1, got {args.m}")
    spec = _method_spec(args)
    paths, batch = _expand(args.path)
    echo = (f"disentangle --method {args.method} --p {format_real(args.p)}"
            f" --b-re {format_real(args.b_re)} --b-im {format_real(args.b_im)}"
            f" --m {args.m} --tol {format_real(args.tol)}"
            f" --max-iter {args.max_iter} --damping {format_real(args.damping)}"
            f" {args.path}")
    items = []
    worst = EXIT_OK
    for path in paths:
        item, code = _disentangle_item(path, vtol, spec)
        items.append(item)
        worst = max(worst, code)
    _emit(echo, items, batch)
    return worst


# ------------------------------------------------------------------ generate

def cmd_generate(args) -> int:
    vtol = _resolve_tol(None)
    kind = _KIND_ALIASES[args.kind]
    spec = GenSpec(kind=kind, dims=(args.dims[0], args.dims[1]),
                   seed=args.seed, k_terms=args.terms)
    try:
        state = generate(spec, tol=vtol)
    except QDisentError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    meta = {"kind": kind, "dims": f"{args.dims[0]}x{args.dims[1]}",
            "seed": str(args.seed)}
    if kind == "separable_mixture":
        meta["terms"] = str(args.terms)
    try:
        save_state(args.out, state, meta=meta)
    except OSError as exc:
        raise _CliError(EXIT_FORMAT, f"cannot write {args.out}: {exc}") from exc
    echo = (f"generate {kind} --dims {args.dims[0]} {args.dims[1]}"
            f" --seed {args.seed} --terms {args.terms} --out {args.out}")
    doc = {"command": echo, "out": args.out, "digest": file_digest(args.out),
           "dims": [args.dims[0], args.dims[1]], "kind": kind,
           "seed": args.seed}
    sys.stdout.write(dumps_canonical(doc))
    return EXIT_OK


# ------------------------------------------------------------------- bench2q

def _short(x: float) -> str:
    v = float(x)
    return "0" if v == 0.0 else repr(v)


def cmd_bench2q(args) -> int:
    if args.cases < 1:
        raise _CliError(EXIT_FORMAT, f"--cases must be >= 1, got {args.cases}")
    rows = transcription_bench(cases=args.cases, seed=args.seed)
    print(f"two-qubit transcription bench cases={args.cases} seed={args.seed}"
          f" gate={_short(BENCH_GATE)}")
    breached = False
    for row in rows:
        if row.gated:
            ok = row.max_deviation <= BENCH_GATE
            breached = breached or not ok
            status = "ok" if ok else "BREACH"
        else:
            status = "reported"
        print(f"{row.label:<26} max_deviation={_short(row.max_deviation):<24}"
              f" {status}")
    print("result: " + ("breach" if breached else "pass"))
    return EXIT_INVALID if breached else EXIT_OK


# -------------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdisent",
                     description="Bipartite density-matrix analysis toolbox.")
    sub = parser.add_subparsers(dest="cmd", required=True, metavar="command")

    v = sub.add_parser("validate",
                       help="check state files against the density contract")
    v.add_argument("path", help="state file or directory of .json files")
    v.add_argument("--tol", type=float, default=None,
                   help=f"validation tolerance (default {ENV_TOL} or"
                        f" {DEFAULT_TOL})")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze",
                       help="separability criteria and entropy diagnostics")
    a.add_argument("path", help="state file or directory of .json files")
    a.add_argument("--tol", type=float, default=None,
                   help=f"validation tolerance (default {ENV_TOL} or"
                        f" {DEFAULT_TOL})")
    a.add_argument("--red-mode", dest="red_mode",
                   choices=("standard", "literal"), default="standard",
                   help="reduction-criterion variant")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("disentangle",
                       help="approximate a state by a product of local factors")
    d.add_argument("path", help="state file or directory of .json files")
    d.add_argument("--method", choices=("neumann", "pointer", "correlated"),
                   default="correlated")
    d.add_argument("--p", type=float, default=0.5,
                   help="pointer population of the upper level")
    d.add_argument("--b-re", dest="b_re", type=float, default=0.0,
                   help="pointer coherence, real part")
    d.add_argument("--b-im", dest="b_im", type=float, default=0.0,
                   help="pointer coherence, imaginary part")
    d.add_argument("--m", type=int, default=1,
                   help="partner-weight power for pointer/correlated methods")
    d.add_argument("--tol", type=float, default=1e-12,
                   help="solver convergence tolerance")
    d.add_argument("--max-iter", dest="max_iter", type=int, default=10000)
    d.add_argument("--damping", type=float, default=0.0,
                   help="blend factor toward the previous iterate")
    d.set_defaults(func=cmd_disentangle)

    g = sub.add_parser("generate", help="write a deterministic state file")
    g.add_argument("kind", choices=sorted(_KIND_ALIASES),
                   help="state family to draw from")
    g.add_argument("--dims", type=int, nargs=2, default=(2, 2),
                   metavar=("NA", "NB"))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--terms", type=int, default=4,
                   help="mixture terms for separable_mixture")
    g.add_argument("--out", required=True, help="output path")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bench2q",
                       help="closed-form vs generic-route deviation table")
    b.add_argument("--cases", type=int, default=1000)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench2q)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_FORMAT
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
