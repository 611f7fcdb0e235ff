import numpy as np
import pytest

from qdisent.core import (
    BipartiteState,
    DimensionMismatch,
    ZeroDenominator,
    product_state,
)
from qdisent.correlated import (
    CorrelatedMethod,
    NeumannMethod,
    NonConvergence,
    PointerMethod,
    SolverConfig,
    correlated_local_state,
    disentangled_product,
    disentanglement_report,
    fixed_point_residuals,
    fixed_point_solve,
)
from qdisent.reductions import averaged_projective_state, neumann_reduce
from qdisent.states import (
    bell_state,
    coherent_pointer,
    random_density,
    random_state,
    separable_mixture,
)


def test_maximally_mixed_pointer_recovers_plain_reduction():
    """The uncorrelated special case: pointer I/n gives the partial trace."""
    for seed in range(20):
        for dims in ((2, 2), (2, 3)):
            state = random_state(dims, seed=seed)
            ref = neumann_reduce(state, "A")
            eye = np.eye(dims[1]) / dims[1]
            for m in (1, 2, 3):
                got = correlated_local_state(state, eye, side="A", m=m)
                assert np.abs(got - ref).max() < 1e-12


def test_diagonal_pointer_matches_averaged_route():
    for seed in range(20):
        state = random_state((2, 2), seed=seed)
        ptr = np.diag([0.7, 0.3]).astype(complex)
        got = correlated_local_state(state, ptr)
        ref = averaged_projective_state(state, np.array([0.7, 0.3]))
        assert np.abs(got - ref).max() < 1e-13


def test_pointer_power_changes_the_answer():
    # mix of two maximally entangled states; hand-computed factors
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = rho[0, 3] = rho[3, 0] = 0.35
    rho[1, 1] = rho[2, 2] = 0.15
    rho[1, 2] = rho[2, 1] = -0.15
    state = BipartiteState(rho, (2, 2))
    ptr = np.diag([0.7, 0.3]).astype(complex)
    one = correlated_local_state(state, ptr, m=1)
    two = correlated_local_state(state, ptr, m=2)
    assert np.abs(one - np.diag([0.58, 0.42])).max() < 1e-14
    assert np.abs(two - np.diag([0.185 / 0.29, 0.105 / 0.29])).max() < 1e-14
    assert np.abs(one - two).max() > 1e-3


def test_correlated_local_state_argument_checks():
    state = random_state((2, 2), seed=0)
    with pytest.raises(ValueError):
        correlated_local_state(state, np.eye(2) / 2, side="Q")
    with pytest.raises(ValueError):
        correlated_local_state(state, np.eye(2) / 2, m=0)
    with pytest.raises(DimensionMismatch):
        correlated_local_state(state, np.eye(3) / 3, side="A")
    with pytest.warns(UserWarning):
        correlated_local_state(state, np.eye(2) / 2, m=4)  # beyond min(dims)^2 - 1


def test_weighted_reduction_zero_denominator():
    e1 = np.array([0.0, 1.0])
    state = product_state(random_density(2, 5), np.outer(e1, e1))
    blind = np.array([[1.0, 0.0], [0.0, 0.0]])  # orthogonal to the B factor
    with pytest.raises(ZeroDenominator):
        correlated_local_state(state, blind, side="A")


def test_solver_config_validation():
    state = random_state((2, 2), seed=1)
    for bad in (SolverConfig(damping=1.0), SolverConfig(damping=-0.1),
                SolverConfig(max_iter=0), SolverConfig(tol=0.0),
                SolverConfig(m_power=0), SolverConfig(init="sideways"),
                SolverConfig(init="provided")):
        with pytest.raises(ValueError):
            fixed_point_solve(state, bad)
    wrong = SolverConfig(init="provided",
                         init_pair=(np.eye(3) / 3, np.eye(2) / 2))
    with pytest.raises(DimensionMismatch):
        fixed_point_solve(state, wrong)


def test_product_input_is_an_immediate_fixed_point():
    for seed in range(10):
        rng = np.random.default_rng(seed)
        state = product_state(random_density(2, rng), random_density(3, rng))
        pair = fixed_point_solve(state)
        assert pair.converged
        assert pair.iterations <= 2
        assert max(pair.residual_a, pair.residual_b) < 1e-12
        prod = disentangled_product(pair)
        assert np.abs(prod.rho - state.rho).max() < 1e-12


def test_bell_is_stationary_at_the_mixed_pair():
    pair = fixed_point_solve(bell_state())
    assert pair.converged and pair.iterations == 1
    assert np.abs(pair.rho_a - np.eye(2) / 2).max() < 1e-15
    assert np.abs(pair.rho_b - np.eye(2) / 2).max() < 1e-15


def test_solver_trace_log_and_certificate():
    state = random_state((2, 2), seed=5)
    pair = fixed_point_solve(state)
    assert pair.converged
    assert len(pair.trace_log) == pair.iterations
    last = pair.trace_log[-1]
    assert last.step_a < 1e-12 and last.step_b < 1e-12
    res_a, res_b = fixed_point_residuals(state, pair.rho_a, pair.rho_b)
    assert max(res_a, res_b) <= 10e-12


def test_damping_reaches_the_same_fixed_point():
    state = random_state((2, 2), seed=8)
    plain = fixed_point_solve(state)
    damped = fixed_point_solve(state, SolverConfig(damping=0.5))
    assert damped.converged
    assert np.abs(plain.rho_a - damped.rho_a).max() < 1e-8
    assert np.abs(plain.rho_b - damped.rho_b).max() < 1e-8


def test_provided_init_behaves_like_neumann_start():
    state = random_state((2, 3), seed=4)
    base = fixed_point_solve(state)
    seeded = fixed_point_solve(state, SolverConfig(
        init="provided",
        init_pair=(neumann_reduce(state, "A"), neumann_reduce(state, "B"))))
    assert np.abs(base.rho_a - seeded.rho_a).max() < 1e-12
    assert base.iterations == seeded.iterations


def test_non_convergence_carries_best_iterate():
    state = random_state((2, 2), seed=5)
    with pytest.raises(NonConvergence) as err:
        fixed_point_solve(state, SolverConfig(max_iter=1))
    best = err.value.best
    assert not best.converged
    assert best.iterations == 1
    assert len(best.trace_log) == 1
    # the attached pair is still a usable (normalized, PSD) candidate
    assert abs(np.trace(best.rho_a).real - 1.0) < 1e-12
    assert np.linalg.eigvalsh(best.rho_b)[0] > -1e-12


def test_report_runs_all_methods():
    state = separable_mixture((2, 2), seed=7)
    reports = disentanglement_report(
        state, [NeumannMethod(), PointerMethod(), CorrelatedMethod()])
    tags = [r.method for r in reports]
    assert tags == ["neumann", "pointer", "correlated"]
    for rep in reports:
        assert rep.error is None
        assert rep.product is not None
        assert rep.frobenius_to_input >= 0.0
        assert abs(rep.entropy_change
                   - (rep.entropy_product - rep.entropy_input)) < 1e-12
    # default pointer (p = 1/2, b = 0) must agree with the plain reduction
    assert np.abs(reports[1].factor_a - reports[0].factor_a).max() < 1e-12
    # the solved pair should fit at least as well as the one-shot guesses
    assert reports[2].frobenius_to_input <= reports[0].frobenius_to_input + 1e-9


def test_report_on_bell_neumann_method():
    rep = disentanglement_report(bell_state(), [NeumannMethod()])[0]
    assert np.abs(rep.product.rho - np.eye(4) / 4).max() < 1e-15
    assert abs(rep.frobenius_to_input - np.sqrt(3.0) / 2.0) < 1e-12
    assert abs(rep.entropy_input) < 1e-12
    assert abs(rep.entropy_change - np.log(4.0)) < 1e-12


def test_report_captures_method_errors_without_raising():
    wide = random_state((2, 3), seed=3)
    rep = disentanglement_report(wide, [PointerMethod()])[0]
    assert rep.error is not None and "DimensionMismatch" in rep.error
    assert rep.factor_a is None and rep.product is None

    state = random_state((2, 2), seed=5)
    rep = disentanglement_report(
        state, [CorrelatedMethod(SolverConfig(max_iter=1))])[0]
    assert rep.error is not None and rep.error.startswith("NonConvergence")
    assert rep.solver is not None and not rep.solver.converged
    assert rep.factor_a is not None  # best iterate still reported
    assert rep.product is not None

    with pytest.raises(ValueError):
        disentanglement_report(state, ["bogus"])


def test_pointer_method_uses_coherent_pointer():
    state = random_state((2, 2), seed=9)
    rep = disentanglement_report(state, [PointerMethod(p=0.6, b=0.1j)])[0]
    assert np.abs(rep.factor_b - coherent_pointer(0.6, 0.1j)).max() < 1e-15
    direct = correlated_local_state(state, coherent_pointer(0.6, 0.1j))
    assert np.abs(rep.factor_a - direct).max() < 1e-15
