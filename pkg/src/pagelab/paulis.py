"""Pauli strings, expectation values, and the predictability budget.

A string on n qubits is stored as a base-4 code: the letter on qubit q
(0 = I, 1 = X, 2 = Y, 3 = Z) occupies bits [2(n-1-q), 2(n-1-q)+1], mirroring
the basis-index convention from ``states``. Equivalently the string is the
mask pair (x_mask, z_mask): bit n-1-q of x_mask is set when the letter flips
qubit q (X or Y), bit n-1-q of z_mask when it carries a sign (Y or Z).

With that encoding the action on a basis state is pure bit arithmetic,

    g |j> = i^popcount(x_mask & z_mask) * (-1)^popcount(j & z_mask) |j ^ x_mask>

so expectation values cost O(d) with no d x d matrix ever built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .states import Bipartition, PureState
from .stats import EnsembleEstimate, MomentAccumulator

MAX_EXHAUSTIVE_QUBITS = 8
IMAG_RESIDUE_ATOL = 1e-12
BUDGET_SPLIT_ATOL = 1e-9

_LETTERS = "IXYZ"
_I_POWERS = np.array([1.0, 1.0j, -1.0, -1.0j])
_SINGLE_QUBIT = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class PauliString:
    """One n-qubit Pauli string, identified by its base-4 code."""

    n_qubits: int
    code: int

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be at least 1")
        if not 0 <= self.code < 4**self.n_qubits:
            raise ValueError(f"code {self.code!r} out of range for n={self.n_qubits}")

    @classmethod
    def from_letters(cls, letters: str) -> "PauliString":
        code = 0
        for ch in letters:
            try:
                code = (code << 2) | _LETTERS.index(ch.upper())
            except ValueError:
                raise ValueError(f"unknown Pauli letter {ch!r}") from None
        return cls(len(letters), code)

    def letter(self, qubit: int) -> str:
        if not 0 <= qubit < self.n_qubits:
            raise ValueError(f"qubit {qubit} out of range")
        return _LETTERS[(self.code >> (2 * (self.n_qubits - 1 - qubit))) & 3]

    @property
    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n_qubits))

    @cached_property
    def x_mask(self) -> int:
        mask = 0
        for q in range(self.n_qubits):
            digit = (self.code >> (2 * q)) & 3
            mask |= ((digit >> 1) ^ (digit & 1)) << q
        return mask

    @cached_property
    def z_mask(self) -> int:
        mask = 0
        for q in range(self.n_qubits):
            digit = (self.code >> (2 * q)) & 3
            mask |= (digit >> 1) << q
        return mask

    @classmethod
    def from_masks(cls, n_qubits: int, x_mask: int, z_mask: int) -> "PauliString":
        if not (0 <= x_mask < 2**n_qubits and 0 <= z_mask < 2**n_qubits):
            raise ValueError("masks out of range")
        code = 0
        for bit in range(n_qubits):
            x = (x_mask >> bit) & 1
            z = (z_mask >> bit) & 1
            code |= ((z << 1) | (x ^ z)) << (2 * bit)
        return cls(n_qubits, code)

    @property
    def is_identity(self) -> bool:
        return self.code == 0

    @property
    def weight(self) -> int:
        """Number of non-identity letters."""
        return (self.x_mask | self.z_mask).bit_count()

    def is_local_on(self, part: Bipartition) -> bool:
        """True when every non-identity letter sits inside subsystem A.

        Decided structurally from the masks, with no matrix arithmetic.
        """
        if part.n_qubits != self.n_qubits:
            raise ValueError("string and bipartition disagree on qubit count")
        return ((self.x_mask | self.z_mask) & part.b_bitmask) == 0

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix; intended for small-n cross checks."""
        if self.n_qubits > 10:
            raise ValueError("dense form is only supported for n <= 10")
        mat = np.array([[1.0 + 0.0j]])
        for q in range(self.n_qubits):
            mat = np.kron(mat, _SINGLE_QUBIT[self.letter(q)])
        return mat


def embed_on_subsystem(sub: PauliString, part: Bipartition) -> PauliString:
    """Lift a string defined on subsystem A to the full register, with
    identities on B."""
    if sub.n_qubits != part.n_a:
        raise ValueError("sub-string length must equal the size of A")
    code = 0
    for i, q in enumerate(part.a_indices):
        digit = (sub.code >> (2 * (sub.n_qubits - 1 - i))) & 3
        code |= digit << (2 * (part.n_qubits - 1 - q))
    return PauliString(part.n_qubits, code)


def pauli_expectation(state: PureState, string: PauliString) -> float:
    """<psi| g |psi> in O(d) time via the mask action above.

    The result of a Hermitian expectation must be real; an imaginary residue
    beyond 1e-12 signals corrupted input.
    """
    if state.n_qubits != string.n_qubits:
        raise ValueError("state and string disagree on qubit count")
    idx = np.arange(state.dim)
    m_x, m_z = string.x_mask, string.z_mask
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & m_z) & 1)
    raw = np.sum(signs * state.amplitudes.conj()[idx ^ m_x] * state.amplitudes)
    raw = complex(_I_POWERS[(m_x & m_z).bit_count() & 3] * raw)
    if abs(raw.imag) > IMAG_RESIDUE_ATOL:
        raise ArithmeticError(f"imaginary residue {raw.imag!r} exceeds 1e-12")
    return raw.real


def _walsh_hadamard(vec: np.ndarray) -> np.ndarray:
    """Unnormalized transform: out[k] = sum_j (-1)^popcount(j & k) vec[j]."""
    n = vec.size
    out = vec.copy()
    h = 1
    while h < n:
        out = out.reshape(n // (2 * h), 2, h)
        top = out[:, 0, :] + out[:, 1, :]
        bottom = out[:, 0, :] - out[:, 1, :]
        out = np.stack((top, bottom), axis=1)
        h *= 2
    return out.reshape(n)


def pauli_expectations_all(state: PureState) -> np.ndarray:
    """Expectations of every string at once, indexed [x_mask, z_mask].

    For each x_mask the sweep over z_masks is a Walsh-Hadamard transform of
    c_j = conj(psi[j ^ x_mask]) * psi[j], giving d^2 expectations in
    O(d^2 log d) total.
    """
    if state.n_qubits > MAX_EXHAUSTIVE_QUBITS:
        raise ValueError(
            f"exhaustive enumeration is capped at n = {MAX_EXHAUSTIVE_QUBITS}; "
            "use sampled_predictability_budget for larger registers"
        )
    d = state.dim
    idx = np.arange(d)
    amps = state.amplitudes
    conj = amps.conj()
    table = np.empty((d, d))
    for m_x in range(d):
        transformed = _walsh_hadamard(conj[idx ^ m_x] * amps)
        values = _I_POWERS[np.bitwise_count(idx & m_x) & 3] * transformed
        residue = float(np.max(np.abs(values.imag)))
        if residue > IMAG_RESIDUE_ATOL:
            raise ArithmeticError(f"imaginary residue {residue!r} exceeds 1e-12")
        table[m_x] = values.real
    return table


@dataclass(frozen=True)
class PredictabilityBudget:
    """Squared-expectation sums over all non-identity strings.

    ``local_a`` collects strings supported inside subsystem A, ``nonlocal_a``
    everything else. (The natural field name for the latter is a Python
    keyword.) ``local_count`` is the number of strings supported on A,
    identity included.
    """

    total: float
    local_a: float
    nonlocal_a: float
    d: int
    d_a: int
    d_b: int
    local_count: int

    def __post_init__(self) -> None:
        if self.d_a * self.d_b != self.d:
            raise ValueError("subsystem dimensions must multiply to d")
        if self.local_count != self.d_a**2:
            raise ValueError(
                f"local string count {self.local_count} != d_a^2 = {self.d_a**2}"
            )
        if min(self.total, self.local_a, self.nonlocal_a) < -BUDGET_SPLIT_ATOL:
            raise ValueError("squared-expectation sums cannot be negative")
        split = self.local_a + self.nonlocal_a
        if abs(split - self.total) > BUDGET_SPLIT_ATOL:
            raise ValueError(
                f"local + nonlocal = {split!r} disagrees with total = {self.total!r}"
            )


def predictability_budget(state: PureState, part: Bipartition) -> PredictabilityBudget:
    """Exhaustive budget: sum <g>^2 over all 4^n - 1 non-identity strings,
    split into local-on-A and the rest.

    The local and non-local shares are accumulated from disjoint index sets,
    so the type's split invariant is a genuine coverage check.
    """
    if state.n_qubits != part.n_qubits:
        raise ValueError("state and bipartition disagree on qubit count")
    squares = pauli_expectations_all(state) ** 2
    d = state.dim
    b_bits = part.b_bitmask
    local_axis = np.nonzero((np.arange(d) & b_bits) == 0)[0]
    local_block = squares[np.ix_(local_axis, local_axis)]
    full_sum = float(squares.sum())
    local_sum = float(local_block.sum())
    identity_sq = float(squares[0, 0])
    return PredictabilityBudget(
        total=full_sum - identity_sq,
        local_a=local_sum - identity_sq,
        nonlocal_a=full_sum - local_sum,
        d=d,
        d_a=part.d_a,
        d_b=part.d_b,
        local_count=local_axis.size**2,
    )


def purity_from_budget(budget: PredictabilityBudget, side: str = "total") -> float:
    """Reconstruct a purity from squared expectations.

    side='total' gives tr(rho^2) of the full state from all strings;
    side='a' gives tr(rho_A^2) from the strings local to A.
    """
    which = side.lower()
    if which == "total":
        return (1.0 + budget.total) / budget.d
    if which == "a":
        return (1.0 + budget.local_a) / budget.d_a
    raise ValueError(f"side must be 'total' or 'a', got {side!r}")


def _require_power_of_two(value: int, name: str) -> None:
    if value < 1 or value.bit_count() != 1:
        raise ValueError(f"{name} must be a power of two, got {value!r}")


def expected_predictability(d: int) -> float:
    """Ensemble average of <g>^2 for one fixed non-identity string over
    random pure states: (d - 1) / (d^2 - 1) = 1 / (d + 1)."""
    _require_power_of_two(d, "d")
    if d < 2:
        raise ValueError("d must be at least 2")
    return (d - 1.0) / (d**2 - 1.0)


def expected_local_predictability(d_a: int, d: int) -> float:
    """Ensemble average of the local-on-A budget over random pure states:
    (d_a^2 - 1)(d - 1) / (d^2 - 1)."""
    _require_power_of_two(d_a, "d_a")
    _require_power_of_two(d, "d")
    if not 1 <= d_a <= d:
        raise ValueError(f"need 1 <= d_a <= d, got d_a={d_a}, d={d}")
    return (d_a**2 - 1.0) * (d - 1.0) / (d**2 - 1.0)


@dataclass(frozen=True)
class SampledBudget:
    """Monte Carlo budget estimate from uniformly sampled string codes.

    ``per_string`` and ``per_local_string`` hold the raw per-string moments;
    the totals rescale by the number of non-identity strings on each side.
    """

    per_string: EnsembleEstimate
    per_local_string: EnsembleEstimate
    d: int
    d_a: int
    d_b: int

    @property
    def total(self) -> float:
        return self.per_string.mean * (self.d**2 - 1)

    @property
    def total_std_error(self) -> float:
        return self.per_string.std_error * (self.d**2 - 1)

    @property
    def local_a(self) -> float:
        return self.per_local_string.mean * (self.d_a**2 - 1)

    @property
    def local_a_std_error(self) -> float:
        return self.per_local_string.std_error * (self.d_a**2 - 1)


def sampled_predictability_budget(
    state: PureState,
    part: Bipartition,
    n_strings: int,
    rng: np.random.Generator,
) -> SampledBudget:
    """Estimate the budget by sampling non-identity codes uniformly; the
    escape hatch when 4^n strings are too many to enumerate."""
    if state.n_qubits != part.n_qubits:
        raise ValueError("state and bipartition disagree on qubit count")
    if n_strings < 2:
        raise ValueError("need at least 2 sampled strings for a spread estimate")
    full = MomentAccumulator()
    for code in rng.integers(1, 4**state.n_qubits, size=n_strings):
        value = pauli_expectation(state, PauliString(state.n_qubits, int(code)))
        full.add(value * value)
    local = MomentAccumulator()
    for sub_code in rng.integers(1, 4**part.n_a, size=n_strings):
        string = embed_on_subsystem(PauliString(part.n_a, int(sub_code)), part)
        value = pauli_expectation(state, string)
        local.add(value * value)
    return SampledBudget(
        per_string=full.to_estimate(),
        per_local_string=local.to_estimate(),
        d=state.dim,
        d_a=part.d_a,
        d_b=part.d_b,
    )
