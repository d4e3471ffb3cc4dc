"""Serialization of curve results and the amplitude file format.

CSV and JSON renderings are plain strings built from Python floats via
``repr``, which round-trips exactly, so identical results serialize to
identical bytes. The SVG writer pins matplotlib's hash salt and drops the
embedded date for the same reason.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .pagecurve import PageCurveResult
from .states import PureState

CSV_HEADER = (
    "n_a,mean_entropy,entropy_se,mean_purity,purity_se,"
    "lubkin_purity,semiclassical_entropy"
)
_SVG_HASH_SALT = "pagelab"


def render_csv(result: PageCurveResult) -> str:
    lines = [CSV_HEADER]
    for p in result.points:
        lines.append(
            ",".join(
                (
                    str(p.n_a),
                    repr(p.entropy.mean),
                    repr(p.entropy.std_error),
                    repr(p.purity.mean),
                    repr(p.purity.std_error),
                    repr(p.analytic_purity),
                    repr(p.semiclassical),
                )
            )
        )
    return "\n".join(lines) + "\n"


def render_json(result: PageCurveResult) -> str:
    payload = {
        "ensemble": result.ensemble,
        "n_qubits": result.n_qubits,
        "entropy_order": result.order.q,
        "log_base": result.base.value,
        "samples_per_point": result.samples_per_point,
        "seed": result.seed,
        "subset_mode": result.subset_mode,
        "points": [
            {
                "n_a": p.n_a,
                "mean_entropy": p.entropy.mean,
                "entropy_variance": p.entropy.variance,
                "entropy_se": p.entropy.std_error,
                "mean_purity": p.purity.mean,
                "purity_variance": p.purity.variance,
                "purity_se": p.purity.std_error,
                "sample_count": p.entropy.count,
                "analytic_purity": p.analytic_purity,
                "semiclassical_entropy": p.semiclassical,
            }
            for p in result.points
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_svg(result: PageCurveResult, path: str | Path) -> None:
    """Static self-contained plot: sampled curve with 3 SE bars, the monotone
    semiclassical reference, and the analytic purity restated on the entropy
    scale."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    sizes = [p.n_a for p in result.points]
    means = [p.entropy.mean for p in result.points]
    bars = [3.0 * p.entropy.std_error for p in result.points]
    line = [p.semiclassical for p in result.points]
    log = np.log2 if result.base.value == "2" else np.log
    reference = [float(-log(p.analytic_purity)) for p in result.points]

    with plt.rc_context({"svg.hashsalt": _SVG_HASH_SALT}):
        fig, ax = plt.subplots(figsize=(7.0, 4.5))
        ax.errorbar(
            sizes,
            means,
            yerr=bars,
            marker="o",
            capsize=3,
            label="Monte Carlo mean (3 SE bars)",
        )
        ax.plot(sizes, line, linestyle="--", label="Semiclassical curve")
        ax.plot(
            sizes,
            reference,
            linestyle=":",
            label="Collision entropy of expected purity",
        )
        ax.set_xticks(sizes)
        ax.set_xlabel("Logarithm of Subsystem Dimension")
        ax.set_ylabel("Subsystem Entropy")
        ax.set_title("Page Curve")
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def read_amplitude_file(path: str | Path) -> PureState:
    """Parse a state vector from text: one 're im' pair per line, blank
    lines and '#' comments ignored. The vector is normalized on load, so
    hand-written files need not be exact to machine precision."""
    values = []
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"{path}:{lineno}: expected 're im', got {line!r}")
        try:
            values.append(complex(float(fields[0]), float(fields[1])))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: could not parse {line!r}") from None
    count = len(values)
    if count < 2 or count & (count - 1):
        raise ValueError(
            f"{path}: amplitude count {count} is not a power of two >= 2"
        )
    vec = np.array(values, dtype=np.complex128)
    norm = float(np.linalg.norm(vec))
    if norm < 1e-100:
        raise ValueError(f"{path}: state vector is numerically zero")
    return PureState(count.bit_length() - 1, vec / norm)
