"""Deterministic samplers for random pure states and classical analogues.

Reproducibility contract: every random draw flows through a counter-based
Philox generator keyed by (seed, stream_id). Identical keys and call
sequences give bitwise identical draws on every platform and under any
degree of parallelism, because streams never share state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import Bipartition, PureState, _frozen_array

MAX_QUBITS = 14
UNITARY_ATOL = 1e-10
_U64 = 2**64


@dataclass(frozen=True)
class SamplerSeed:
    """Root seed plus a stream index; each stream is statistically
    independent of every other."""

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.seed < _U64:
            raise ValueError(f"seed must be in [0, 2^64), got {self.seed!r}")
        if not 0 <= self.stream_id < _U64:
            raise ValueError(f"stream_id must be in [0, 2^64), got {self.stream_id!r}")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(seq))


def _check_qubit_range(n_qubits: int) -> None:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits!r}")


def sample_haar_pure(n_qubits: int, rng: np.random.Generator) -> PureState:
    """Draw a pure state from the unitarily invariant measure.

    A vector of i.i.d. complex standard normals, normalized. Invariance
    follows because the Gaussian density depends only on the norm.
    """
    _check_qubit_range(n_qubits)
    dim = 2**n_qubits
    for _ in range(2):
        flat = rng.standard_normal(2 * dim)
        vec = flat[:dim] + 1j * flat[dim:]
        norm = float(np.linalg.norm(vec))
        # astronomically unlikely; resample once rather than divide by ~0
        if norm > 1e-100:
            return PureState(n_qubits, vec / norm)
    raise ArithmeticError("Gaussian draw returned a numerically zero vector twice")


def rotate_state(state: PureState, unitary: np.ndarray) -> PureState:
    """Apply a d x d unitary to the full register."""
    u = np.asarray(unitary, dtype=np.complex128)
    if u.shape != (state.dim, state.dim):
        raise ValueError(f"unitary shape {u.shape} does not match dim {state.dim}")
    defect = float(np.max(np.abs(u.conj().T @ u - np.eye(state.dim))))
    if defect > UNITARY_ATOL:
        raise ValueError(f"matrix is not unitary: max |U*U - I| = {defect!r}")
    return PureState(state.n_qubits, u @ state.amplitudes)


@dataclass(frozen=True)
class ClassicalState:
    """Probability distribution over n-bit strings, indexed like basis
    states (bit 0 most significant)."""

    n_bits: int
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        if self.n_bits < 1:
            raise ValueError("n_bits must be at least 1")
        probs = np.array(self.probabilities, dtype=np.float64)
        if probs.shape != (2**self.n_bits,):
            raise ValueError(
                f"expected {2**self.n_bits} probabilities, got shape {probs.shape}"
            )
        if float(probs.min()) < 0.0:
            raise ValueError("probabilities must be non-negative")
        total = float(probs.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities must sum to 1 within 1e-12, got {total!r}")
        _frozen_array(self, "probabilities", probs)

    @property
    def dim(self) -> int:
        return self.probabilities.size


def sample_classical_uniform(n_bits: int, rng: np.random.Generator) -> ClassicalState:
    """Uniform draw from the probability simplex (flat Dirichlet)."""
    _check_qubit_range(n_bits)
    return ClassicalState(n_bits, rng.dirichlet(np.ones(2**n_bits)))


def classical_marginal(state: ClassicalState, part: Bipartition) -> ClassicalState:
    """Marginal distribution on subsystem A: sum the joint over B's axes."""
    if state.n_bits != part.n_qubits:
        raise ValueError("state and bipartition disagree on bit count")
    if part.n_a == 0:
        raise ValueError("marginal on an empty subsystem is a scalar, not a state")
    tensor = state.probabilities.reshape((2,) * state.n_bits)
    ordered = tensor.transpose(part.a_indices + part.b_indices)
    marg = ordered.reshape(part.d_a, part.d_b).sum(axis=1)
    return ClassicalState(part.n_a, marg)
