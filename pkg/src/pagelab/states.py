"""n-qubit pure and mixed states, bipartitions, and reduced-state tools.

Bit convention used by every module in this package: qubit 0 is the most
significant bit of the computational basis index. The basis label
|q0 q1 ... q_{n-1}> corresponds to the flat index

    j = sum_q bit(q) << (n - 1 - q)

so ``amplitudes.reshape((2,) * n)`` puts qubit q on reshape axis q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NORM_ATOL = 1e-12
PSD_ATOL = 1e-10


def _frozen_array(obj, name: str, values: np.ndarray) -> None:
    values.flags.writeable = False
    object.__setattr__(obj, name, values)


@dataclass(frozen=True)
class PureState:
    """Normalized state vector on ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be at least 1")
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2**self.n_qubits,):
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes, got shape {amps.shape}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        _frozen_array(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    dim: int
    entries: np.ndarray
    # eigenvalues (ascending) found during the PSD check, kept so downstream
    # spectrum users do not pay for a second eigensolve
    eigenvalues: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        mat = np.array(self.entries, dtype=np.complex128)
        if mat.shape != (self.dim, self.dim):
            raise ValueError(f"expected shape {(self.dim, self.dim)}, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > NORM_ATOL:
            raise ValueError("matrix is not Hermitian within 1e-12")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > NORM_ATOL:
            raise ValueError(f"trace must equal 1 within 1e-12, got {trace!r}")
        eigs = np.linalg.eigvalsh(mat)
        if float(eigs[0]) < -PSD_ATOL:
            raise ValueError(f"matrix has negative eigenvalue {eigs[0]!r}")
        _frozen_array(self, "entries", mat)
        _frozen_array(self, "eigenvalues", eigs)


@dataclass(frozen=True)
class Bipartition:
    """Split of ``n_qubits`` qubits into subsystem A and its complement B.

    Proper bipartitions leave both sides non-empty. The trivial splits
    (empty A or empty B) are only meaningful for marginalization helpers,
    so they must be requested explicitly via ``allow_trivial``.
    """

    n_qubits: int
    a_indices: tuple[int, ...]
    allow_trivial: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be at least 1")
        idx = tuple(sorted(int(i) for i in self.a_indices))
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate qubit indices in {idx}")
        if idx and (idx[0] < 0 or idx[-1] >= self.n_qubits):
            raise ValueError(f"qubit indices {idx} out of range for n={self.n_qubits}")
        if not self.allow_trivial and (len(idx) == 0 or len(idx) == self.n_qubits):
            raise ValueError(
                "trivial bipartition (empty A or empty B); pass allow_trivial=True "
                "if this is intended"
            )
        object.__setattr__(self, "a_indices", idx)

    @property
    def b_indices(self) -> tuple[int, ...]:
        a = set(self.a_indices)
        return tuple(q for q in range(self.n_qubits) if q not in a)

    @property
    def n_a(self) -> int:
        return len(self.a_indices)

    @property
    def n_b(self) -> int:
        return self.n_qubits - self.n_a

    @property
    def d_a(self) -> int:
        return 2**self.n_a

    @property
    def d_b(self) -> int:
        return 2**self.n_b

    @property
    def a_bitmask(self) -> int:
        """Bitmask over basis-index bits (qubit q sits at bit n-1-q)."""
        mask = 0
        for q in self.a_indices:
            mask |= 1 << (self.n_qubits - 1 - q)
        return mask

    @property
    def b_bitmask(self) -> int:
        return self.a_bitmask ^ ((1 << self.n_qubits) - 1)

    @classmethod
    def prefix(cls, n_qubits: int, n_a: int, *, allow_trivial: bool = False) -> "Bipartition":
        """First ``n_a`` qubits as subsystem A."""
        return cls(n_qubits, tuple(range(n_a)), allow_trivial=allow_trivial)


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Schmidt coefficients (singular values), non-negative and descending."""

    coefficients: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coefficients, dtype=np.float64)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must be a non-empty 1-D array")
        if float(coeffs.min()) < 0.0:
            raise ValueError("Schmidt coefficients must be non-negative")
        if np.any(np.diff(coeffs) > 0):
            raise ValueError("Schmidt coefficients must be sorted descending")
        total = float(np.sum(coeffs**2))
        if abs(total - 1.0) > PSD_ATOL:
            raise ValueError(f"squared coefficients must sum to 1, got {total!r}")
        _frozen_array(self, "coefficients", coeffs)

    def probabilities(self) -> np.ndarray:
        """Squared coefficients, clipped into [0, 1]; these are the
        eigenvalues of either reduced state."""
        return np.minimum(self.coefficients**2, 1.0)


@dataclass(frozen=True)
class BlochVector:
    """Expectation triple (<X>, <Y>, <Z>) of a single-qubit state."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for name, value in (("x", self.x), ("y", self.y), ("z", self.z)):
            if not -1.0 - PSD_ATOL <= value <= 1.0 + PSD_ATOL:
                raise ValueError(f"component {name}={value!r} outside [-1, 1]")
        if self.norm_squared() > 1.0 + PSD_ATOL:
            raise ValueError(f"Bloch vector leaves the unit ball: {self!r}")

    def norm_squared(self) -> float:
        return self.x**2 + self.y**2 + self.z**2


def density_from_pure(state: PureState) -> DensityMatrix:
    """Rank-one projector |psi><psi|."""
    amps = state.amplitudes
    return DensityMatrix(state.dim, np.outer(amps, amps.conj()))


def _keep_indices(part: Bipartition, keep: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    side = keep.lower()
    if side == "a":
        return part.a_indices, part.b_indices
    if side == "b":
        return part.b_indices, part.a_indices
    raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")


def reduced_density(state: PureState, part: Bipartition, keep: str = "a") -> DensityMatrix:
    """Reduced state of one side of a pure state.

    Works on the amplitude tensor directly (cost d * d_keep), never forming
    the full d x d density matrix.
    """
    if state.n_qubits != part.n_qubits:
        raise ValueError("state and bipartition disagree on qubit count")
    kept, traced = _keep_indices(part, keep)
    tensor = state.amplitudes.reshape((2,) * state.n_qubits)
    mat = tensor.transpose(kept + traced).reshape(2 ** len(kept), 2 ** len(traced))
    return DensityMatrix(2 ** len(kept), mat @ mat.conj().T)


def partial_trace(rho: DensityMatrix, part: Bipartition, keep: str = "a") -> DensityMatrix:
    """Trace out one side of a bipartition of a density matrix.

    Tracing out nothing returns the input object unchanged.
    """
    n = part.n_qubits
    if rho.dim != 2**n:
        raise ValueError("density matrix and bipartition disagree on dimension")
    kept, traced = _keep_indices(part, keep)
    if not traced:
        return rho
    if not kept:
        raise ValueError("cannot trace out every qubit; the result would be a scalar")
    tensor = rho.entries.reshape((2,) * (2 * n))
    row_perm = kept + traced
    col_perm = tuple(n + q for q in row_perm)
    d_keep, d_traced = 2 ** len(kept), 2 ** len(traced)
    blocks = tensor.transpose(row_perm + col_perm).reshape(
        d_keep, d_traced, d_keep, d_traced
    )
    return DensityMatrix(d_keep, np.einsum("ibjb->ij", blocks))


def schmidt_decompose(state: PureState, part: Bipartition) -> SchmidtSpectrum:
    """Schmidt coefficients of a pure state across a bipartition.

    Singular values of the d_a x d_b amplitude matrix; SVD returns them
    sorted descending already.
    """
    if state.n_qubits != part.n_qubits:
        raise ValueError("state and bipartition disagree on qubit count")
    if part.n_a == 0 or part.n_b == 0:
        raise ValueError("Schmidt decomposition needs both sides non-empty")
    tensor = state.amplitudes.reshape((2,) * state.n_qubits)
    mat = tensor.transpose(part.a_indices + part.b_indices).reshape(part.d_a, part.d_b)
    return SchmidtSpectrum(np.linalg.svd(mat, compute_uv=False))


_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def bloch_vector(rho: DensityMatrix) -> BlochVector:
    """Pauli expectations of a single-qubit density matrix."""
    if rho.dim != 2:
        raise ValueError("Bloch vector is defined for a single qubit only")
    m = rho.entries
    return BlochVector(
        x=float(np.trace(m @ _PAULI_X).real),
        y=float(np.trace(m @ _PAULI_Y).real),
        z=float(np.trace(m @ _PAULI_Z).real),
    )


def density_from_bloch(vec: BlochVector) -> DensityMatrix:
    """Single-qubit state (I + x X + y Y + z Z) / 2."""
    mat = 0.5 * (
        np.eye(2, dtype=np.complex128)
        + vec.x * _PAULI_X
        + vec.y * _PAULI_Y
        + vec.z * _PAULI_Z
    )
    return DensityMatrix(2, mat)
