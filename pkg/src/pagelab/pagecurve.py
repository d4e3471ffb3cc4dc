"""Monte Carlo estimation of the average subsystem entropy curve.

Work is split into fixed-size chunks, one Philox stream per chunk keyed by
(subsystem size, chunk index). Chunk boundaries and the reduction order never
depend on the worker count, so results are bitwise identical whether the
chunks run serially or across a process pool.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .entropy import (
    VON_NEUMANN,
    EntropyOrder,
    LogBase,
    Spectrum,
    renyi_entropy,
    von_neumann_entropy,
)
from .paulis import expected_local_predictability
from .sampling import (
    MAX_QUBITS,
    SamplerSeed,
    classical_marginal,
    sample_classical_uniform,
    sample_haar_pure,
)
from .states import Bipartition, schmidt_decompose
from .stats import EnsembleEstimate, MomentAccumulator

CHUNK_SAMPLES = 256
DEFAULT_MEMORY_LIMIT = 2 * 1024**3
MIN_SAMPLES_PER_POINT = 100
_STREAM_SHIFT = 32


class ResourceLimitError(RuntimeError):
    """A request would exceed the configured memory or scale envelope."""


def lubkin_expected_purity(d_a: int, d_b: int) -> float:
    """Ensemble-average subsystem purity of a random pure state:
    (d_a + d_b) / (d_a * d_b + 1)."""
    if d_a < 1 or d_b < 1:
        raise ValueError("subsystem dimensions must be at least 1")
    return (d_a + d_b) / (d_a * d_b + 1.0)


def expected_subsystem_purity(d_a: int, d_b: int) -> float:
    """Same average reached through the predictability budget:
    (1 + E[local budget]) / d_a. Agrees with ``lubkin_expected_purity``."""
    return (1.0 + expected_local_predictability(d_a, d_a * d_b)) / d_a


def classical_expected_purity(d_a: int, d_b: int) -> float:
    """Average marginal collision probability when the joint distribution is
    uniform on the simplex: (d_b + 1) / (d_a * d_b + 1)."""
    if d_a < 1 or d_b < 1:
        raise ValueError("subsystem dimensions must be at least 1")
    return (d_b + 1.0) / (d_a * d_b + 1.0)


def semiclassical_curve(n_qubits: int, n_a: int, base: LogBase = LogBase.TWO) -> float:
    """Monotone reference line n_a * log 2: subsystem entropy growing
    linearly with subsystem size, never turning over."""
    if not 0 <= n_a <= n_qubits:
        raise ValueError(f"n_a must be in [0, {n_qubits}], got {n_a}")
    bits = float(n_a)
    return bits if base is LogBase.TWO else bits * float(np.log(2.0))


def estimated_memory_bytes(n_qubits: int, workers: int) -> int:
    """Coarse upper bound on resident bytes: a handful of complex copies of
    the amplitude tensor per worker (state, permutation, SVD workspace)."""
    return 128 * 2**n_qubits * max(1, workers)


def _check_resources(n_qubits: int, workers: int, memory_limit: int) -> None:
    if memory_limit < 1:
        raise ValueError("memory_limit must be a positive byte count")
    needed = estimated_memory_bytes(n_qubits, workers)
    if needed > memory_limit:
        raise ResourceLimitError(
            f"estimated {needed} bytes for n={n_qubits} with {workers} worker(s) "
            f"exceeds the limit of {memory_limit} bytes"
        )
    if n_qubits > MAX_QUBITS:
        raise ResourceLimitError(
            f"register of {n_qubits} qubits exceeds the supported cap of {MAX_QUBITS}"
        )


@dataclass(frozen=True)
class PageCurvePoint:
    """One subsystem size: sampled entropy and purity plus analytic columns."""

    n_a: int
    entropy: EnsembleEstimate
    purity: EnsembleEstimate
    analytic_purity: float
    semiclassical: float


@dataclass(frozen=True)
class PageCurveResult:
    """Full sweep n_a = 0 .. n with the configuration that produced it.

    Worker count and memory limit are execution details, deliberately not
    recorded: the same seed must give the same result object either way.
    """

    ensemble: str
    n_qubits: int
    order: EntropyOrder
    base: LogBase
    samples_per_point: int
    seed: int
    subset_mode: str
    points: tuple[PageCurvePoint, ...]

    def __post_init__(self) -> None:
        if self.ensemble not in ("haar", "classical"):
            raise ValueError(f"unknown ensemble {self.ensemble!r}")
        if self.subset_mode not in ("prefix", "random"):
            raise ValueError(f"unknown subset mode {self.subset_mode!r}")
        sizes = tuple(p.n_a for p in self.points)
        if sizes != tuple(range(self.n_qubits + 1)):
            raise ValueError("points must cover n_a = 0 .. n_qubits exactly once")
        unit = 1.0 if self.base is LogBase.TWO else float(np.log(2.0))
        for p in self.points:
            # log(d_a) caps any subsystem entropy; the mean inherits the cap
            if not -1e-12 <= p.entropy.mean <= p.n_a * unit + 1e-9:
                raise ValueError(
                    f"mean entropy {p.entropy.mean!r} at n_a={p.n_a} "
                    "violates the [0, log d_a] bound"
                )
            if not 0.0 < p.analytic_purity <= 1.0:
                raise ValueError(f"analytic purity {p.analytic_purity!r} outside (0, 1]")
        object.__setattr__(self, "points", tuple(self.points))


def _chunk_layout(samples: int) -> list[tuple[int, int]]:
    """(chunk index, chunk size) pairs; fixed independent of worker count."""
    sizes = []
    done = 0
    index = 0
    while done < samples:
        size = min(CHUNK_SAMPLES, samples - done)
        sizes.append((index, size))
        done += size
        index += 1
    return sizes


def _haar_chunk(args: tuple) -> tuple[tuple[int, float, float], tuple[int, float, float]]:
    n_qubits, n_a, q, base_value, seed, stream_id, count, random_subset = args
    rng = SamplerSeed(seed, stream_id).generator()
    order = EntropyOrder(q)
    base = LogBase(base_value)
    ent = MomentAccumulator()
    pur = MomentAccumulator()
    for _ in range(count):
        state = sample_haar_pure(n_qubits, rng)
        if random_subset:
            chosen = tuple(int(i) for i in rng.permutation(n_qubits)[:n_a])
        else:
            chosen = tuple(range(n_a))
        part = Bipartition(n_qubits, chosen)
        probs = schmidt_decompose(state, part).probabilities()
        ent.add(renyi_entropy(Spectrum(probs), order, base))
        pur.add(float(probs @ probs))
    return ent.partials(), pur.partials()


def _classical_chunk(args: tuple) -> tuple[tuple[int, float, float], tuple[int, float, float]]:
    n_bits, n_a, base_value, seed, stream_id, count = args
    rng = SamplerSeed(seed, stream_id).generator()
    base = LogBase(base_value)
    ent = MomentAccumulator()
    pur = MomentAccumulator()
    for _ in range(count):
        state = sample_classical_uniform(n_bits, rng)
        if n_a == n_bits:
            probs = state.probabilities
        else:
            part = Bipartition(n_bits, tuple(range(n_a)))
            probs = classical_marginal(state, part).probabilities
        ordered = np.sort(probs)[::-1]
        ent.add(von_neumann_entropy(Spectrum(ordered), base))
        pur.add(float(ordered @ ordered))
    return ent.partials(), pur.partials()


def _run_chunks(worker, specs: list[tuple], workers: int) -> list[tuple]:
    if workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(worker, specs))
    return [worker(spec) for spec in specs]


def _reduce_point(chunks: list[tuple]) -> tuple[EnsembleEstimate, EnsembleEstimate]:
    ent = MomentAccumulator()
    pur = MomentAccumulator()
    # chunk results arrive in submission order; merging here is the single
    # place the partials meet, so the totals cannot depend on scheduling
    for ent_part, pur_part in chunks:
        ent.merge(*ent_part)
        pur.merge(*pur_part)
    return ent.to_estimate(), pur.to_estimate()


def _validate_run(n_qubits: int, samples: int, workers: int, memory_limit: int) -> None:
    if n_qubits < 2:
        raise ValueError(f"n_qubits must be at least 2, got {n_qubits}")
    if samples < MIN_SAMPLES_PER_POINT:
        raise ValueError(
            f"samples_per_point must be at least {MIN_SAMPLES_PER_POINT}, got {samples}"
        )
    if workers < 1:
        raise ValueError("workers must be at least 1")
    _check_resources(n_qubits, workers, memory_limit)


def estimate_page_curve(
    n_qubits: int,
    samples_per_point: int,
    seed: int,
    *,
    order: EntropyOrder = VON_NEUMANN,
    base: LogBase = LogBase.TWO,
    workers: int = 1,
    random_subsets: bool = False,
    memory_limit: int = DEFAULT_MEMORY_LIMIT,
) -> PageCurveResult:
    """Sample random pure states and average the subsystem entropy and purity
    at every subsystem size.

    The endpoints need no sampling: the reduction of a pure state onto
    nothing or onto everything is again pure, so entropy 0 and purity 1 are
    exact there. Interior sizes are estimated from ``samples_per_point``
    independent states each (fresh states per size, and with
    ``random_subsets`` a fresh qubit subset per state).
    """
    _validate_run(n_qubits, samples_per_point, workers, memory_limit)
    SamplerSeed(seed).generator()  # reject bad seeds before any work
    specs = []
    owners = []
    for n_a in range(1, n_qubits):
        for chunk_index, size in _chunk_layout(samples_per_point):
            stream_id = (n_a << _STREAM_SHIFT) | chunk_index
            specs.append(
                (n_qubits, n_a, order.q, base.value, seed, stream_id, size, random_subsets)
            )
            owners.append(n_a)
    outcomes = _run_chunks(_haar_chunk, specs, workers)
    per_size: dict[int, list[tuple]] = {}
    for n_a, outcome in zip(owners, outcomes):
        per_size.setdefault(n_a, []).append(outcome)

    points = []
    for n_a in range(n_qubits + 1):
        d_a, d_b = 2**n_a, 2 ** (n_qubits - n_a)
        reference = lubkin_expected_purity(d_a, d_b)
        reference_line = semiclassical_curve(n_qubits, n_a, base)
        if n_a in (0, n_qubits):
            ent = EnsembleEstimate.exact(0.0, samples_per_point)
            pur = EnsembleEstimate.exact(1.0, samples_per_point)
        else:
            ent, pur = _reduce_point(per_size[n_a])
        points.append(PageCurvePoint(n_a, ent, pur, reference, reference_line))
    return PageCurveResult(
        ensemble="haar",
        n_qubits=n_qubits,
        order=order,
        base=base,
        samples_per_point=samples_per_point,
        seed=seed,
        subset_mode="random" if random_subsets else "prefix",
        points=tuple(points),
    )


def classical_page_curve(
    n_bits: int,
    samples_per_point: int,
    seed: int,
    *,
    base: LogBase = LogBase.TWO,
    workers: int = 1,
    memory_limit: int = DEFAULT_MEMORY_LIMIT,
) -> PageCurveResult:
    """Classical analogue: flat-Dirichlet joint distributions, Shannon
    entropy of the marginal on the first n_a bits.

    Only the n_a = 0 endpoint is exact here. The full-register point is
    genuinely random: the joint distribution itself carries entropy, which is
    what separates this curve from the pure-state one.
    """
    _validate_run(n_bits, samples_per_point, workers, memory_limit)
    SamplerSeed(seed).generator()
    specs = []
    owners = []
    for n_a in range(1, n_bits + 1):
        for chunk_index, size in _chunk_layout(samples_per_point):
            stream_id = (n_a << _STREAM_SHIFT) | chunk_index
            specs.append((n_bits, n_a, base.value, seed, stream_id, size))
            owners.append(n_a)
    outcomes = _run_chunks(_classical_chunk, specs, workers)
    per_size: dict[int, list[tuple]] = {}
    for n_a, outcome in zip(owners, outcomes):
        per_size.setdefault(n_a, []).append(outcome)

    points = []
    for n_a in range(n_bits + 1):
        d_a, d_b = 2**n_a, 2 ** (n_bits - n_a)
        reference = classical_expected_purity(d_a, d_b)
        reference_line = semiclassical_curve(n_bits, n_a, base)
        if n_a == 0:
            ent = EnsembleEstimate.exact(0.0, samples_per_point)
            pur = EnsembleEstimate.exact(1.0, samples_per_point)
        else:
            ent, pur = _reduce_point(per_size[n_a])
        points.append(PageCurvePoint(n_a, ent, pur, reference, reference_line))
    return PageCurveResult(
        ensemble="classical",
        n_qubits=n_bits,
        order=VON_NEUMANN,
        base=base,
        samples_per_point=samples_per_point,
        seed=seed,
        subset_mode="prefix",
        points=tuple(points),
    )


def concentration_report(
    n_values: tuple[int, ...],
    samples: int,
    seed: int,
    *,
    memory_limit: int = DEFAULT_MEMORY_LIMIT,
) -> tuple[tuple[int, float], ...]:
    """Sample standard deviation of the half-cut purity at each register
    size; the typicality trend is this number falling as n grows."""
    if samples < 2:
        raise ValueError("need at least 2 samples for a spread estimate")
    rows = []
    for n_qubits in n_values:
        if n_qubits < 2:
            raise ValueError(f"n_qubits must be at least 2, got {n_qubits}")
        _check_resources(n_qubits, 1, memory_limit)
        n_a = n_qubits // 2
        acc = MomentAccumulator()
        for chunk_index, size in _chunk_layout(samples):
            # keyed by register size, not cut size: rows for different n must
            # not share random streams
            stream_id = (n_qubits << _STREAM_SHIFT) | chunk_index
            spec = (n_qubits, n_a, 2.0, LogBase.TWO.value, seed, stream_id, size, False)
            _, pur_part = _haar_chunk(spec)
            acc.merge(*pur_part)
        estimate = acc.to_estimate()
        rows.append((n_qubits, float(np.sqrt(estimate.variance))))
    return tuple(rows)
