"""Slow, independent reference implementations used to pin the fast paths.

Everything here works from first principles (explicit index sums, dense
Kronecker products, characteristic polynomials) and shares no code with the
package under test.
"""

import numpy as np

PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def random_amplitudes(n_qubits, rng):
    dim = 2**n_qubits
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def dense_pauli(letters):
    mat = np.array([[1.0 + 0.0j]])
    for ch in letters:
        mat = np.kron(mat, PAULI_1Q[ch])
    return mat


def expectation_dense(amps, letters):
    mat = dense_pauli(letters)
    return complex(np.conj(amps) @ mat @ amps)


def _assemble_index(n, keep, keep_bits, traced, traced_bits):
    # qubit q owns bit n-1-q of the flat basis index
    j = 0
    for pos, q in enumerate(keep):
        j |= ((keep_bits >> (len(keep) - 1 - pos)) & 1) << (n - 1 - q)
    for pos, q in enumerate(traced):
        j |= ((traced_bits >> (len(traced) - 1 - pos)) & 1) << (n - 1 - q)
    return j


def partial_trace_brute(rho, n, keep):
    """Literal double sum over the traced subsystem's basis."""
    keep = tuple(sorted(keep))
    traced = tuple(q for q in range(n) if q not in keep)
    d_keep, d_traced = 2 ** len(keep), 2 ** len(traced)
    out = np.zeros((d_keep, d_keep), dtype=complex)
    for row in range(d_keep):
        for col in range(d_keep):
            total = 0.0 + 0.0j
            for t in range(d_traced):
                i = _assemble_index(n, keep, row, traced, t)
                j = _assemble_index(n, keep, col, traced, t)
                total += rho[i, j]
            out[row, col] = total
    return out


def reduced_from_pure_brute(amps, n, keep):
    return partial_trace_brute(np.outer(amps, np.conj(amps)), n, keep)


def eigenvalues_descending(mat):
    return np.sort(np.linalg.eigvalsh(mat))[::-1]


def charpoly_eigenvalues(mat):
    """Eigenvalues via roots of the characteristic polynomial; a different
    algorithm from the Hermitian eigensolver."""
    roots = np.roots(np.poly(np.asarray(mat)))
    return np.sort(roots.real)[::-1]


def shannon_bits(probs):
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def marginal_brute(probs, n, keep):
    """Classical marginal by looping over every joint outcome."""
    keep = tuple(sorted(keep))
    out = np.zeros(2 ** len(keep))
    for j, value in enumerate(probs):
        sub = 0
        for pos, q in enumerate(keep):
            sub |= ((j >> (n - 1 - q)) & 1) << (len(keep) - 1 - pos)
        out[sub] += value
    return out
