"""Correlated product-state approximations via a coupled fixed point.

One factor is refreshed from the other by weighting the joint state
with the partner factor (optionally raised to a power m), tracing out
the partner side and renormalizing to unit trace.  A single step with
a fixed pointer gives the one-shot reduction; alternating both
directions to a joint fixed point gives the correlated pair.  With the
maximally mixed pointer every step collapses to the plain partial
trace, so the ordinary reduction is the uncorrelated special case.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    BipartiteState,
    DimensionMismatch,
    NotPSDResult,
    QDisentError,
    ZeroDenominator,
    _ptrace,
    embed_local,
    partial_trace,
    product_state,
    validate_density,
)
from .criteria import von_neumann_entropy
from .states import coherent_pointer


class NonConvergence(QDisentError):
    """Solver ran out of sweeps; carries the best iterate seen."""

    def __init__(self, message: str, best: "CorrelatedPair"):
        super().__init__(message)
        self.best = best


def _power(m: np.ndarray, k: int) -> np.ndarray:
    return m if k == 1 else np.linalg.matrix_power(m, k)


def _warn_power(m: int, dims: tuple[int, int]) -> None:
    bound = min(dims) ** 2 - 1
    if m > bound:
        warnings.warn(
            f"power m = {m} exceeds the heuristic bound {bound} for dims {dims}",
            stacklevel=3,
        )


def _weighted_reduction(rho: np.ndarray, dims: tuple[int, int],
                        partner_pow: np.ndarray, side: str, tol: float):
    """One half-step: trace against the powered partner, renormalize.

    Returns (factor, hermiticity_defect, min_eigenvalue).  The raw
    quotient is hermitized as (M + M^dag)/2; eigenvalues in (-tol, 0)
    are clamped to zero at normalization, anything lower raises
    NotPSDResult instead of silently projecting.
    """
    other = "B" if side == "A" else "A"
    big = embed_local(partner_pow, other, dims)
    num = _ptrace(rho @ big, dims[0], dims[1], over=other)
    den = float(np.trace(num).real)
    if den <= tol:
        raise ZeroDenominator(
            f"weighted trace {den:.3e} is not above tol {tol:.3e}"
        )
    m = num / den
    defect = float(np.abs(m - m.conj().T).max())
    m = (m + m.conj().T) / 2.0
    w, v = np.linalg.eigh(m)
    min_eig = float(w[0])
    if min_eig < -tol:
        raise NotPSDResult(
            f"weighted reduction has eigenvalue {min_eig:.3e} below -tol {-tol:.3e}"
        )
    if min_eig < 0.0:
        w = np.clip(w, 0.0, None)
        m = (v * w) @ v.conj().T
        m = m / float(np.trace(m).real)
    return m, defect, min_eig


def correlated_local_state(state: BipartiteState, pointer, side: str = "A",
                           m: int = 1, tol: float = DEFAULT_TOL) -> np.ndarray:
    """One-shot reduced factor against a fixed pointer on the partner side.

    Parameters
    ----------
    state : BipartiteState
        Joint state to reduce.
    pointer : array_like
        Density matrix on the partner subsystem (B when ``side='A'``).
    side : str
        Which factor to produce.
    m : int
        Power applied to the pointer before weighting.  Beyond
        ``min(dims)**2 - 1`` a warning is emitted, nothing more.
    """
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    k = int(m)
    if k < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    partner_dim = state.n_b if side == "A" else state.n_a
    sigma = validate_density(pointer, tol)
    if sigma.shape != (partner_dim, partner_dim):
        raise DimensionMismatch(
            f"pointer shape {sigma.shape}, expected ({partner_dim}, {partner_dim})"
        )
    _warn_power(k, state.dims)
    factor, _, _ = _weighted_reduction(state.rho, state.dims, _power(sigma, k),
                                       side, tol)
    return factor


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for fixed_point_solve.

    ``tol`` is the convergence threshold on successive-iterate
    Frobenius steps; ``damping`` blends each raw update with the
    previous iterate (0 means take the raw update); ``m_power`` is
    applied symmetrically to both directions; ``init`` is either
    ``"neumann"`` (start from the two partial traces) or ``"provided"``
    with ``init_pair`` set.
    """

    tol: float = 1e-12
    max_iter: int = 10000
    damping: float = 0.0
    m_power: int = 1
    init: str = "neumann"
    init_pair: tuple[np.ndarray, np.ndarray] | None = None


@dataclass(frozen=True)
class IterationRecord:
    """Per-sweep solver diagnostics."""

    step_a: float
    step_b: float
    residual_a: float
    residual_b: float
    herm_defect_a: float
    herm_defect_b: float
    min_eig_a: float
    min_eig_b: float


@dataclass(frozen=True, eq=False)
class CorrelatedPair:
    """Pair of factors plus convergence evidence."""

    rho_a: np.ndarray
    rho_b: np.ndarray
    residual_a: float
    residual_b: float
    iterations: int
    converged: bool
    trace_log: tuple[IterationRecord, ...]

    def __post_init__(self):
        for name in ("rho_a", "rho_b"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def _initial_pair(state: BipartiteState, cfg: SolverConfig, guard: float):
    if cfg.init == "neumann":
        return partial_trace(state, over="B"), partial_trace(state, over="A")
    if cfg.init != "provided":
        raise ValueError(f"init must be 'neumann' or 'provided', got {cfg.init!r}")
    if cfg.init_pair is None:
        raise ValueError("init='provided' needs init_pair")
    a = validate_density(cfg.init_pair[0], guard)
    b = validate_density(cfg.init_pair[1], guard)
    if a.shape != (state.n_a, state.n_a) or b.shape != (state.n_b, state.n_b):
        raise DimensionMismatch(
            f"init_pair shapes {a.shape}, {b.shape} do not match dims {state.dims}"
        )
    return a, b


def _check_config(cfg: SolverConfig) -> None:
    if not 0.0 <= float(cfg.damping) < 1.0:
        raise ValueError(f"damping must sit in [0, 1), got {cfg.damping}")
    if int(cfg.max_iter) < 1:
        raise ValueError(f"max_iter must be >= 1, got {cfg.max_iter}")
    if not float(cfg.tol) > 0.0:
        raise ValueError(f"tol must be positive, got {cfg.tol}")
    if int(cfg.m_power) < 1:
        raise ValueError(f"m_power must be >= 1, got {cfg.m_power}")


def fixed_point_solve(state: BipartiteState,
                      config: SolverConfig | None = None) -> CorrelatedPair:
    """Alternate the two weighted reductions until both factors settle.

    Convergence is declared when both successive-iterate Frobenius
    steps drop below ``config.tol``; the residuals of the coupled
    equations are tracked separately in the trace log, one record per
    sweep.  Runs out of sweeps: raises NonConvergence with the best
    iterate (smallest max residual) attached.
    """
    cfg = config if config is not None else SolverConfig()
    _check_config(cfg)
    guard = DEFAULT_TOL  # denominator and positivity guard, not the convergence tol
    rho_a, rho_b = _initial_pair(state, cfg, guard)
    k = int(cfg.m_power)
    _warn_power(k, state.dims)
    d = float(cfg.damping)

    records: list[IterationRecord] = []
    best = None
    best_score = np.inf
    # F_A at the current rho_b, carried across sweeps so the residual
    # evaluation doubles as the next raw update
    raw_a, defect_a, min_a = _weighted_reduction(
        state.rho, state.dims, _power(rho_b, k), "A", guard)

    for it in range(1, int(cfg.max_iter) + 1):
        new_a = raw_a if d == 0.0 else (1.0 - d) * raw_a + d * rho_a
        step_a = float(np.linalg.norm(new_a - rho_a))
        rho_a = new_a

        raw_b, defect_b, min_b = _weighted_reduction(
            state.rho, state.dims, _power(rho_a, k), "B", guard)
        new_b = raw_b if d == 0.0 else (1.0 - d) * raw_b + d * rho_b
        step_b = float(np.linalg.norm(new_b - rho_b))
        res_b = float(np.linalg.norm(new_b - raw_b))
        rho_b = new_b

        raw_a, next_defect_a, next_min_a = _weighted_reduction(
            state.rho, state.dims, _power(rho_b, k), "A", guard)
        res_a = float(np.linalg.norm(rho_a - raw_a))

        records.append(IterationRecord(step_a, step_b, res_a, res_b,
                                       defect_a, defect_b, min_a, min_b))
        score = max(res_a, res_b)
        if score < best_score:
            best_score = score
            best = (rho_a, rho_b, res_a, res_b, it)
        if step_a < cfg.tol and step_b < cfg.tol:
            return CorrelatedPair(rho_a, rho_b, res_a, res_b, it, True,
                                  tuple(records))
        defect_a, min_a = next_defect_a, next_min_a

    ba, bb, ra, rb, bit = best
    payload = CorrelatedPair(ba, bb, ra, rb, int(cfg.max_iter), False,
                             tuple(records))
    raise NonConvergence(
        f"no convergence after {cfg.max_iter} sweeps; best residuals "
        f"({ra:.3e}, {rb:.3e}) at sweep {bit}",
        payload,
    )


def fixed_point_residuals(state: BipartiteState, rho_a, rho_b, m: int = 1,
                          tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Re-substitution distances of a candidate pair under the coupled maps."""
    a = np.asarray(rho_a, dtype=complex)
    b = np.asarray(rho_b, dtype=complex)
    k = int(m)
    fa, _, _ = _weighted_reduction(state.rho, state.dims, _power(b, k), "A", tol)
    fb, _, _ = _weighted_reduction(state.rho, state.dims, _power(a, k), "B", tol)
    return float(np.linalg.norm(a - fa)), float(np.linalg.norm(b - fb))


def disentangled_product(pair: CorrelatedPair,
                         tol: float = DEFAULT_TOL) -> BipartiteState:
    """Tensor the two factors back into a joint (product) state."""
    return product_state(pair.rho_a, pair.rho_b, tol)


@dataclass(frozen=True)
class NeumannMethod:
    """Product of the two partial traces."""


@dataclass(frozen=True)
class PointerMethod:
    """One-shot reduction against a fixed qubit pointer [[p, b], [b*, 1-p]]."""

    p: float = 0.5
    b: complex = 0j
    m: int = 1


@dataclass(frozen=True)
class CorrelatedMethod:
    """Full coupled solve."""

    config: SolverConfig = field(default_factory=SolverConfig)


@dataclass(frozen=True, eq=False)
class DisentanglementReport:
    """Outcome of one product-approximation method on one state."""

    method: str
    factor_a: np.ndarray | None
    factor_b: np.ndarray | None
    product: BipartiteState | None
    frobenius_to_input: float | None
    entropy_input: float
    entropy_product: float | None
    entropy_change: float | None
    solver: CorrelatedPair | None = None
    error: str | None = None


def _method_tag(method) -> str:
    if isinstance(method, NeumannMethod):
        return "neumann"
    if isinstance(method, PointerMethod):
        return "pointer"
    if isinstance(method, CorrelatedMethod):
        return "correlated"
    raise ValueError(f"unknown method spec {method!r}")


def disentanglement_report(state: BipartiteState, methods,
                           tol: float = DEFAULT_TOL) -> list[DisentanglementReport]:
    """Run each method on ``state``; failures stay inside their own entry."""
    s_in = von_neumann_entropy(state.rho, tol)
    out: list[DisentanglementReport] = []
    for method in methods:
        tag = _method_tag(method)
        factor_a = factor_b = None
        solver = None
        err = None
        try:
            if isinstance(method, NeumannMethod):
                factor_a = partial_trace(state, over="B")
                factor_b = partial_trace(state, over="A")
            elif isinstance(method, PointerMethod):
                if state.n_b != 2:
                    raise DimensionMismatch(
                        f"pointer method needs n_b = 2, got n_b = {state.n_b}"
                    )
                sigma = coherent_pointer(method.p, method.b, tol)
                factor_a = correlated_local_state(state, sigma, side="A",
                                                  m=method.m, tol=tol)
                factor_b = sigma
            else:
                pair = fixed_point_solve(state, method.config)
                solver = pair
                factor_a, factor_b = pair.rho_a, pair.rho_b
        except NonConvergence as exc:
            err = f"NonConvergence: {exc}"
            solver = exc.best
            factor_a, factor_b = exc.best.rho_a, exc.best.rho_b
        except QDisentError as exc:
            err = f"{type(exc).__name__}: {exc}"

        if factor_a is None:
            out.append(DisentanglementReport(tag, None, None, None, None,
                                             s_in, None, None, None, err))
            continue
        try:
            product = product_state(factor_a, factor_b, tol)
            frob = float(np.linalg.norm(product.rho - state.rho))
            s_prod = von_neumann_entropy(product.rho, tol)
        except QDisentError as exc:
            out.append(DisentanglementReport(tag, factor_a, factor_b, None, None,
                                             s_in, None, None, solver,
                                             err or f"{type(exc).__name__}: {exc}"))
            continue
        out.append(DisentanglementReport(tag, factor_a, factor_b, product, frob,
                                         s_in, s_prod, s_prod - s_in, solver, err))
    return out
