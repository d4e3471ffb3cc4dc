"""pagelab: average subsystem entropy of random pure states, with analytic
cross checks from Pauli predictability sums."""

from .entropy import (
    VON_NEUMANN,
    EntropyOrder,
    LogBase,
    Spectrum,
    purity,
    renyi_continuity_check,
    renyi_entropy,
    spectrum,
    von_neumann_entropy,
)
from .output import (
    CSV_HEADER,
    read_amplitude_file,
    render_csv,
    render_json,
    write_svg,
)
from .pagecurve import (
    DEFAULT_MEMORY_LIMIT,
    PageCurvePoint,
    PageCurveResult,
    ResourceLimitError,
    classical_expected_purity,
    classical_page_curve,
    concentration_report,
    estimate_page_curve,
    estimated_memory_bytes,
    expected_subsystem_purity,
    lubkin_expected_purity,
    semiclassical_curve,
)
from .paulis import (
    PauliString,
    PredictabilityBudget,
    SampledBudget,
    embed_on_subsystem,
    expected_local_predictability,
    expected_predictability,
    pauli_expectation,
    pauli_expectations_all,
    predictability_budget,
    purity_from_budget,
    sampled_predictability_budget,
)
from .sampling import (
    MAX_QUBITS,
    ClassicalState,
    SamplerSeed,
    classical_marginal,
    rotate_state,
    sample_classical_uniform,
    sample_haar_pure,
)
from .states import (
    Bipartition,
    BlochVector,
    DensityMatrix,
    PureState,
    SchmidtSpectrum,
    bloch_vector,
    density_from_bloch,
    density_from_pure,
    partial_trace,
    reduced_density,
    schmidt_decompose,
)
from .stats import EnsembleEstimate, KahanSum, MomentAccumulator

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "BlochVector",
    "ClassicalState",
    "DEFAULT_MEMORY_LIMIT",
    "DensityMatrix",
    "EnsembleEstimate",
    "EntropyOrder",
    "KahanSum",
    "LogBase",
    "MAX_QUBITS",
    "MomentAccumulator",
    "PageCurvePoint",
    "PageCurveResult",
    "PauliString",
    "PredictabilityBudget",
    "PureState",
    "ResourceLimitError",
    "SampledBudget",
    "SamplerSeed",
    "SchmidtSpectrum",
    "Spectrum",
    "VON_NEUMANN",
    "bloch_vector",
    "classical_expected_purity",
    "classical_marginal",
    "classical_page_curve",
    "concentration_report",
    "density_from_bloch",
    "density_from_pure",
    "embed_on_subsystem",
    "estimate_page_curve",
    "estimated_memory_bytes",
    "expected_local_predictability",
    "expected_predictability",
    "expected_subsystem_purity",
    "lubkin_expected_purity",
    "partial_trace",
    "pauli_expectation",
    "pauli_expectations_all",
    "predictability_budget",
    "purity",
    "purity_from_budget",
    "CSV_HEADER",
    "read_amplitude_file",
    "reduced_density",
    "render_csv",
    "render_json",
    "renyi_continuity_check",
    "renyi_entropy",
    "rotate_state",
    "sample_classical_uniform",
    "sample_haar_pure",
    "sampled_predictability_budget",
    "schmidt_decompose",
    "semiclassical_curve",
    "spectrum",
    "von_neumann_entropy",
    "write_svg",
]
