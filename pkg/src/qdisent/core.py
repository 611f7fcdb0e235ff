"""Core types and operations for bipartite density matrices.

The joint Hilbert space uses a flat product basis: the row index of a
bipartite matrix is ``a * n_b + b`` for subsystem basis indices
``(a, b)``.  Everything here is dense complex numpy; the intended
regime is small dimensions (joint dimension up to a few dozen).
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

DEFAULT_TOL = 1e-9


class QDisentError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(QDisentError):
    """Matrix differs from its conjugate transpose beyond tolerance."""


class TraceNotOne(QDisentError):
    """Trace differs from 1 beyond tolerance."""


class NotPSD(QDisentError):
    """An eigenvalue sits below -tol."""


class DimensionMismatch(QDisentError):
    """Shapes or subsystem dimensions do not line up."""


class ZeroProbability(QDisentError):
    """A conditioning outcome has no weight to normalize by."""


class ZeroDenominator(QDisentError):
    """A weighted reduction has no trace to normalize by."""


class NotPSDResult(QDisentError):
    """A computed reduction came out non-positive beyond tolerance."""


class InvalidSpec(QDisentError):
    """Malformed generation recipe."""


class InvalidPointer(InvalidSpec):
    """Pointer parameters do not describe a valid state."""


def _as_square(m, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class DensityCheck:
    """Diagnostics from probing a candidate density matrix."""

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float

    def ok(self, tol: float = DEFAULT_TOL) -> bool:
        return (
            self.hermiticity_defect <= tol
            and self.trace_defect <= tol
            and self.min_eigenvalue >= -tol
        )


def density_defects(rho) -> DensityCheck:
    """Measure how far ``rho`` is from being a density matrix.

    Returns the max-abs hermiticity defect, the trace defect
    ``|tr(rho) - 1|`` and the smallest eigenvalue of the hermitized
    matrix.
    """
    m = _as_square(rho)
    herm = float(np.abs(m - m.conj().T).max())
    trace = float(abs(m.trace() - 1.0))
    sym = (m + m.conj().T) / 2.0
    min_eig = float(np.linalg.eigvalsh(sym)[0])
    return DensityCheck(herm, trace, min_eig)


def validate_density(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array, or raise if it is not a state.

    Checks hermiticity, unit trace and positive semidefiniteness, in
    that order, each within ``tol``.
    """
    m = _as_square(rho)
    check = density_defects(m)
    if check.hermiticity_defect > tol:
        raise NotHermitian(
            f"hermiticity defect {check.hermiticity_defect:.3e} exceeds tol {tol:.3e}"
        )
    if check.trace_defect > tol:
        raise TraceNotOne(
            f"trace defect {check.trace_defect:.3e} exceeds tol {tol:.3e}"
        )
    if check.min_eigenvalue < -tol:
        raise NotPSD(
            f"smallest eigenvalue {check.min_eigenvalue:.3e} is below -tol {-tol:.3e}"
        )
    return m


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A validated density matrix on a two-part system.

    ``dims = (n_a, n_b)`` with the matrix on the flat product basis,
    row index ``a * n_b + b``.  The stored array is a read-only copy.
    """

    rho: np.ndarray
    dims: tuple[int, int]
    tol: InitVar[float] = DEFAULT_TOL

    def __post_init__(self, tol: float):
        try:
            n_a, n_b = (int(d) for d in self.dims)
        except (TypeError, ValueError):
            raise DimensionMismatch(
                f"dims must be a pair of integers, got {self.dims!r}"
            ) from None
        if n_a < 2 or n_b < 2:
            raise DimensionMismatch(
                f"both subsystem dimensions must be >= 2, got ({n_a}, {n_b})"
            )
        m = _as_square(self.rho, "rho")
        if m.shape != (n_a * n_b, n_a * n_b):
            raise DimensionMismatch(
                f"rho has shape {m.shape}, expected {(n_a * n_b, n_a * n_b)} "
                f"for dims ({n_a}, {n_b})"
            )
        m = np.array(validate_density(m, tol))
        m.setflags(write=False)
        object.__setattr__(self, "rho", m)
        object.__setattr__(self, "dims", (n_a, n_b))

    @property
    def n_a(self) -> int:
        return self.dims[0]

    @property
    def n_b(self) -> int:
        return self.dims[1]

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product on the flat product basis (A-major index)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def product_state(rho_a, rho_b, tol: float = DEFAULT_TOL) -> BipartiteState:
    """Build the bipartite state ``rho_a (x) rho_b`` from two factors."""
    a = validate_density(rho_a, tol)
    b = validate_density(rho_b, tol)
    return BipartiteState(tensor_product(a, b), (a.shape[0], b.shape[0]), tol=tol)


def _ptrace(m: np.ndarray, n_a: int, n_b: int, over: str) -> np.ndarray:
    r = m.reshape(n_a, n_b, n_a, n_b)
    if over == "B":
        return np.einsum("abcb->ac", r)
    if over == "A":
        return np.einsum("abad->bd", r)
    raise ValueError(f"over must be 'A' or 'B', got {over!r}")


def partial_trace(state: BipartiteState, over: str = "B") -> np.ndarray:
    """Trace out one subsystem; ``over='B'`` keeps the A factor."""
    return _ptrace(state.rho, state.n_a, state.n_b, over)


def partial_transpose(state: BipartiteState, on: str = "A") -> np.ndarray:
    """Transpose one tensor factor, leaving the other untouched."""
    r = state.rho.reshape(state.n_a, state.n_b, state.n_a, state.n_b)
    if on == "A":
        t = r.transpose(2, 1, 0, 3)
    elif on == "B":
        t = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"on must be 'A' or 'B', got {on!r}")
    return t.reshape(state.dim, state.dim).copy()


def hermitian_eigenvalues(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues of a hermitian matrix, ascending."""
    arr = _as_square(m)
    defect = float(np.abs(arr - arr.conj().T).max())
    if defect > tol:
        raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds tol {tol:.3e}")
    return np.linalg.eigvalsh(arr)


def hermitian_eigensystem(m, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and the matching eigenvector columns."""
    arr = _as_square(m)
    defect = float(np.abs(arr - arr.conj().T).max())
    if defect > tol:
        raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds tol {tol:.3e}")
    w, v = np.linalg.eigh(arr)
    return w, v


def embed_local(op, side: str, dims: tuple[int, int]) -> np.ndarray:
    """Lift a one-subsystem operator to the joint space, op (x) I or I (x) op."""
    n_a, n_b = int(dims[0]), int(dims[1])
    arr = _as_square(op, "op")
    if side == "A":
        if arr.shape != (n_a, n_a):
            raise DimensionMismatch(
                f"op has shape {arr.shape}, expected ({n_a}, {n_a}) for side A"
            )
        return np.kron(arr, np.eye(n_b, dtype=complex))
    if side == "B":
        if arr.shape != (n_b, n_b):
            raise DimensionMismatch(
                f"op has shape {arr.shape}, expected ({n_b}, {n_b}) for side B"
            )
        return np.kron(np.eye(n_a, dtype=complex), arr)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def validate_projector(p, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Check hermiticity and idempotence of a projector candidate."""
    arr = _as_square(p, "projector")
    defect = float(np.abs(arr - arr.conj().T).max())
    if defect > tol:
        raise NotHermitian(
            f"projector hermiticity defect {defect:.3e} exceeds tol {tol:.3e}"
        )
    idem = float(np.abs(arr @ arr - arr).max())
    if idem > tol:
        raise ValueError(f"projector is not idempotent, defect {idem:.3e}")
    return arr


def validate_observable(o, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Check hermiticity of an observable candidate."""
    arr = _as_square(o, "observable")
    defect = float(np.abs(arr - arr.conj().T).max())
    if defect > tol:
        raise NotHermitian(
            f"observable hermiticity defect {defect:.3e} exceeds tol {tol:.3e}"
        )
    return arr
