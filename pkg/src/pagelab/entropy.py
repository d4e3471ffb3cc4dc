"""Entropy functionals over eigenvalue spectra.

All entropies take an explicit Renyi order and log base so the q -> 1
von Neumann limit is an exact branch, not a numerical limit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix, _frozen_array

SUM_ATOL_KEEP = 1e-12      # spectrum sum drift accepted as-is
SUM_ATOL_RENORM = 1e-10    # drift up to here is renormalized away
EIG_NEGATIVE_ATOL = 1e-10  # eigenvalues below -this are an input error
RANK_CUTOFF = 1e-10        # q=0 support counting
VN_CUTOFF = 1e-15          # 0 * log 0 = 0 convention cutoff


class LogBase(enum.Enum):
    """Logarithm base for entropy values: bits or nats."""

    TWO = "2"
    E = "e"

    def log(self, values):
        return np.log2(values) if self is LogBase.TWO else np.log(values)

    @property
    def label(self) -> str:
        return "bits" if self is LogBase.TWO else "nats"


@dataclass(frozen=True)
class EntropyOrder:
    """Renyi order q >= 0; q = 1 selects the von Neumann entropy."""

    q: float

    def __post_init__(self) -> None:
        q = float(self.q)
        if not math.isfinite(q) or q < 0.0:
            raise ValueError(f"Renyi order must be a finite number >= 0, got {self.q!r}")
        object.__setattr__(self, "q", q)

    @property
    def is_von_neumann(self) -> bool:
        return self.q == 1.0


VON_NEUMANN = EntropyOrder(1.0)


@dataclass(frozen=True)
class Spectrum:
    """Probability spectrum: eigenvalues in [0, 1], sorted descending,
    summing to 1 within 1e-10."""

    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        lam = np.array(self.eigenvalues, dtype=np.float64)
        if lam.ndim != 1 or lam.size == 0:
            raise ValueError("eigenvalues must be a non-empty 1-D array")
        if float(lam.min()) < 0.0 or float(lam.max()) > 1.0:
            raise ValueError("eigenvalues must lie in [0, 1]")
        if np.any(np.diff(lam) > 0):
            raise ValueError("eigenvalues must be sorted descending")
        total = float(lam.sum())
        if abs(total - 1.0) > SUM_ATOL_RENORM:
            raise ValueError(f"eigenvalues must sum to 1 within 1e-10, got {total!r}")
        _frozen_array(self, "eigenvalues", lam)

    @property
    def dim(self) -> int:
        return self.eigenvalues.size


def spectrum(rho: DensityMatrix) -> Spectrum:
    """Eigenvalue spectrum of a density matrix, cleaned for entropy use.

    Tiny negative eigenvalues (above -1e-10) are clamped to zero; sum drift
    beyond 1e-12 but within 1e-10 is renormalized; anything worse is an error.
    """
    lam = rho.eigenvalues[::-1].astype(np.float64)  # eigvalsh gives ascending
    if float(lam.min()) < -EIG_NEGATIVE_ATOL:
        raise ValueError(f"eigenvalue {float(lam.min())!r} below -1e-10")
    lam = np.clip(lam, 0.0, 1.0)
    total = float(lam.sum())
    drift = abs(total - 1.0)
    if drift > SUM_ATOL_RENORM:
        raise ValueError(f"spectrum sum {total!r} drifted beyond 1e-10")
    if drift > SUM_ATOL_KEEP:
        lam = lam / total
    return Spectrum(lam)


def von_neumann_entropy(spec: Spectrum, base: LogBase = LogBase.TWO) -> float:
    """S = sum_i lambda_i log(1 / lambda_i), with 0 log 0 = 0."""
    lam = spec.eigenvalues[spec.eigenvalues > VN_CUTOFF]
    return float(-np.sum(lam * base.log(lam)))


def renyi_entropy(
    spec: Spectrum, order: EntropyOrder = VON_NEUMANN, base: LogBase = LogBase.TWO
) -> float:
    """S_q = log(sum_i lambda_i^q) / (1 - q), with explicit q = 1 and q = 0
    branches.

    A flat spectrum hits log(d) for every q; tiny negative results from
    rounding are clamped to zero.
    """
    if order.is_von_neumann:
        return von_neumann_entropy(spec, base)
    if order.q == 0.0:
        rank = int(np.count_nonzero(spec.eigenvalues > RANK_CUTOFF))
        return float(base.log(rank))
    power_sum = float(np.sum(spec.eigenvalues**order.q))
    value = float(base.log(power_sum) / (1.0 - order.q))
    if -1e-8 < value < 0.0:
        return 0.0
    return value


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2) via the entrywise square sum; no eigensolve."""
    return float(np.sum(np.abs(rho.entries) ** 2))


def renyi_continuity_check(
    spec: Spectrum, eps: float, base: LogBase = LogBase.TWO
) -> tuple[float, float]:
    """Entropies at orders 1 - eps and 1 + eps, bracketing von Neumann."""
    if not 0.0 < eps <= 0.01:
        raise ValueError(f"eps must be in (0, 0.01], got {eps!r}")
    return (
        renyi_entropy(spec, EntropyOrder(1.0 - eps), base),
        renyi_entropy(spec, EntropyOrder(1.0 + eps), base),
    )
