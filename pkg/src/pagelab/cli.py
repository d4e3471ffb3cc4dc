"""Command line interface.

Every flag falls back to a PAGELAB_<NAME> environment variable before its
built-in default. Exit codes: 0 success, 1 verification failure, 2 usage, 3
resource limit.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .entropy import EntropyOrder, LogBase, Spectrum, spectrum, von_neumann_entropy
from .output import read_amplitude_file, render_csv, render_json, write_svg
from .pagecurve import (
    DEFAULT_MEMORY_LIMIT,
    PageCurveResult,
    ResourceLimitError,
    classical_page_curve,
    estimate_page_curve,
)
from .paulis import predictability_budget, purity_from_budget, sampled_predictability_budget
from .sampling import SamplerSeed, sample_haar_pure
from .states import Bipartition, reduced_density, schmidt_decompose
from .entropy import purity as purity_of

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

BUDGET_TOTAL_ATOL = 1e-8
BUDGET_LOCAL_ATOL = 1e-9
SCHMIDT_SYMMETRY_ATOL = 1e-9
_MEMORY_SUFFIXES = {"kib": 2**10, "mib": 2**20, "gib": 2**30}


def _env(name: str) -> str | None:
    return os.environ.get(f"PAGELAB_{name}")


def parse_memory(text: str) -> int:
    """Byte count, optionally suffixed KiB / MiB / GiB."""
    cleaned = text.strip().lower()
    for suffix, scale in _MEMORY_SUFFIXES.items():
        if cleaned.endswith(suffix):
            return int(float(cleaned[: -len(suffix)]) * scale)
    return int(cleaned)


def _typed(cast, flag: str):
    def convert(raw: str):
        try:
            return cast(raw)
        except (TypeError, ValueError):
            raise argparse.ArgumentTypeError(f"invalid value for {flag}: {raw!r}")

    return convert


def _positive_int(flag: str):
    def convert(raw: str) -> int:
        try:
            value = int(raw)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid value for {flag}: {raw!r}")
        if value < 1:
            raise argparse.ArgumentTypeError(f"{flag} must be at least 1")
        return value

    return convert


def _add_option(parser, flag: str, env_name: str, *, cast, default, **kwargs) -> None:
    """Register --flag with env fallback PAGELAB_<env_name>."""
    raw = _env(env_name)
    if raw is not None:
        default = cast(raw)
    parser.add_argument(flag, type=cast, default=default, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pagelab",
        description="Average subsystem entropy of random pure states, "
        "with Pauli predictability cross checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common_sampling(
        p: argparse.ArgumentParser, default_samples: int, default_qubits: int = 6
    ) -> None:
        _add_option(p, "--qubits", "QUBITS", cast=_typed(int, "--qubits"),
                    default=default_qubits, help="register size n")
        _add_option(p, "--samples", "SAMPLES", cast=_positive_int("--samples"),
                    default=default_samples, help="Monte Carlo samples per point")
        _add_option(p, "--seed", "SEED", cast=_typed(int, "--seed"), default=42,
                    help="root seed for the Philox streams")
        _add_option(p, "--workers", "WORKERS", cast=_positive_int("--workers"),
                    default=1, help="process count; results do not depend on it")
        _add_option(p, "--memory-limit", "MEMORY_LIMIT",
                    cast=_typed(parse_memory, "--memory-limit"),
                    default=DEFAULT_MEMORY_LIMIT,
                    help="resident-memory budget in bytes (KiB/MiB/GiB suffixes ok)")

    def common_output(p: argparse.ArgumentParser) -> None:
        _add_option(p, "--out", "OUT", cast=str, default="csv",
                    choices=["csv", "json", "svg"], help="output format")
        _add_option(p, "--output", "OUTPUT", cast=str, default=None,
                    help="output path; csv/json default to stdout")

    def partition_flags(p: argparse.ArgumentParser) -> None:
        _add_option(p, "--na", "NA", cast=_typed(int, "--na"), default=None,
                    help="subsystem A = first NA qubits (default: half)")
        _add_option(p, "--partition", "PARTITION", cast=str, default=None,
                    help="comma-separated qubit indices for subsystem A")

    page = sub.add_parser("page-curve", help="estimate the average entropy curve")
    common_sampling(page, default_samples=1000)
    common_output(page)
    _add_option(page, "--q", "Q", cast=_typed(float, "--q"), default=1.0,
                help="Renyi order (1 = von Neumann)")
    _add_option(page, "--base", "BASE", cast=str, default="2", choices=["2", "e"],
                help="entropy log base")
    page.add_argument("--random-subsets", action="store_true",
                      help="draw a fresh qubit subset per sample instead of a prefix")
    page.set_defaults(handler=_cmd_page_curve)

    classical = sub.add_parser(
        "classical", help="flat-Dirichlet analogue: Shannon entropy of marginals"
    )
    common_sampling(classical, default_samples=1000)
    common_output(classical)
    _add_option(classical, "--base", "BASE", cast=str, default="2", choices=["2", "e"],
                help="entropy log base")
    classical.set_defaults(handler=_cmd_classical)

    lubkin = sub.add_parser(
        "verify-lubkin", help="check sampled purities against the analytic average"
    )
    common_sampling(lubkin, default_samples=2000, default_qubits=8)
    lubkin.set_defaults(handler=_cmd_verify_lubkin)

    budget = sub.add_parser(
        "pauli-budget", help="squared Pauli expectations: totals and purity identities"
    )
    common_sampling(budget, default_samples=20)
    partition_flags(budget)
    budget.add_argument("--strings", type=_positive_int("--strings"), default=None,
                        help="sample this many string codes instead of enumerating")
    budget.add_argument("--state", default=None,
                        help="amplitude file; check this one state instead of sampling")
    budget.set_defaults(handler=_cmd_pauli_budget)

    schmidt = sub.add_parser(
        "schmidt", help="Schmidt spectrum and entropy symmetry for one state"
    )
    schmidt.add_argument("--state", required=True, help="amplitude file to analyze")
    partition_flags(schmidt)
    _add_option(schmidt, "--base", "BASE", cast=str, default="2", choices=["2", "e"],
                help="entropy log base")
    schmidt.set_defaults(handler=_cmd_schmidt)

    return parser


def _make_partition(n_qubits: int, na: int | None, partition: str | None) -> Bipartition:
    if partition is not None and na is not None:
        raise ValueError("give either --na or --partition, not both")
    if partition is not None:
        try:
            indices = tuple(int(tok) for tok in partition.split(",") if tok.strip())
        except ValueError:
            raise ValueError(f"could not parse --partition {partition!r}") from None
        return Bipartition(n_qubits, indices)
    size = na if na is not None else n_qubits // 2
    if not 1 <= size <= n_qubits - 1:
        raise ValueError(f"--na must be in [1, {n_qubits - 1}], got {size}")
    return Bipartition.prefix(n_qubits, size)


def _emit(result: PageCurveResult, out: str, output: str | None) -> None:
    if out == "svg":
        if output is None:
            raise ValueError("--output is required when --out svg")
        write_svg(result, output)
        Path(output).with_suffix(".csv").write_text(render_csv(result))
        return
    text = render_csv(result) if out == "csv" else render_json(result)
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _cmd_page_curve(args) -> int:
    result = estimate_page_curve(
        args.qubits,
        args.samples,
        args.seed,
        order=EntropyOrder(args.q),
        base=LogBase(args.base),
        workers=args.workers,
        random_subsets=args.random_subsets,
        memory_limit=args.memory_limit,
    )
    _emit(result, args.out, args.output)
    return EXIT_OK


def _cmd_classical(args) -> int:
    result = classical_page_curve(
        args.qubits,
        args.samples,
        args.seed,
        base=LogBase(args.base),
        workers=args.workers,
        memory_limit=args.memory_limit,
    )
    _emit(result, args.out, args.output)
    return EXIT_OK


def _cmd_verify_lubkin(args) -> int:
    result = estimate_page_curve(
        args.qubits,
        args.samples,
        args.seed,
        order=EntropyOrder(2.0),
        workers=args.workers,
        memory_limit=args.memory_limit,
    )
    failures = 0
    for p in result.points:
        if p.purity.std_error == 0.0:
            continue  # exact endpoints carry no sampling error
        z = (p.purity.mean - p.analytic_purity) / p.purity.std_error
        ok = abs(z) <= 3.0
        failures += 0 if ok else 1
        print(
            f"n_a={p.n_a}  sampled={p.purity.mean:.8f}  "
            f"analytic={p.analytic_purity:.8f}  se={p.purity.std_error:.2e}  "
            f"z={z:+.2f}  {'ok' if ok else 'MISMATCH'}"
        )
    if failures:
        print(f"FAIL: {failures} subsystem size(s) outside 3 standard errors")
        return EXIT_VERIFY
    print("PASS: all subsystem sizes within 3 standard errors")
    return EXIT_OK


def _budget_states(args):
    if args.state is not None:
        yield read_amplitude_file(args.state)
        return
    rng = SamplerSeed(args.seed).generator()
    for _ in range(args.samples):
        yield sample_haar_pure(args.qubits, rng)


def _cmd_pauli_budget(args) -> int:
    worst_total = 0.0
    worst_local = 0.0
    if args.strings is not None:
        rng = SamplerSeed(args.seed, stream_id=1).generator()
        z_worst = 0.0
        for state in _budget_states(args):
            part = _make_partition(state.n_qubits, args.na, args.partition)
            est = sampled_predictability_budget(state, part, args.strings, rng)
            z = (est.total - (est.d - 1)) / est.total_std_error
            z_worst = max(z_worst, abs(z))
            print(
                f"total={est.total:.4f} (se {est.total_std_error:.4f})  "
                f"expected={est.d - 1}  z={z:+.2f}  "
                f"local_a={est.local_a:.4f} (se {est.local_a_std_error:.4f})"
            )
        if z_worst > 3.0:
            print(f"FAIL: sampled budget off by {z_worst:.2f} standard errors")
            return EXIT_VERIFY
        print("PASS: sampled budgets within 3 standard errors")
        return EXIT_OK
    for state in _budget_states(args):
        part = _make_partition(state.n_qubits, args.na, args.partition)
        budget = predictability_budget(state, part)
        gap_total = abs(budget.total - (budget.d - 1))
        rho_a = reduced_density(state, part, "a")
        gap_local = abs(purity_from_budget(budget, "a") - purity_of(rho_a))
        worst_total = max(worst_total, gap_total)
        worst_local = max(worst_local, gap_local)
        print(
            f"total={budget.total:.12f}  local_a={budget.local_a:.12f}  "
            f"nonlocal_a={budget.nonlocal_a:.12f}  "
            f"total_gap={gap_total:.2e}  purity_gap={gap_local:.2e}"
        )
    if worst_total > BUDGET_TOTAL_ATOL or worst_local > BUDGET_LOCAL_ATOL:
        print(
            f"FAIL: worst budget gap {worst_total:.2e}, "
            f"worst purity gap {worst_local:.2e}"
        )
        return EXIT_VERIFY
    print(
        f"PASS: budget identities hold "
        f"(worst gaps {worst_total:.2e} / {worst_local:.2e})"
    )
    return EXIT_OK


def _cmd_schmidt(args) -> int:
    state = read_amplitude_file(args.state)
    part = _make_partition(state.n_qubits, args.na, args.partition)
    base = LogBase(args.base)
    coeffs = schmidt_decompose(state, part)
    probs = coeffs.probabilities()
    s_a = von_neumann_entropy(spectrum(reduced_density(state, part, "a")), base)
    s_b = von_neumann_entropy(spectrum(reduced_density(state, part, "b")), base)
    s_schmidt = von_neumann_entropy(Spectrum(probs), base)
    print(f"qubits: {state.n_qubits}, subsystem A: {part.a_indices}")
    print("schmidt coefficients:", " ".join(f"{c:.10f}" for c in coeffs.coefficients))
    print("spectrum:", " ".join(f"{p:.10f}" for p in probs))
    print(f"entropy from schmidt spectrum: {s_schmidt:.10f} {base.label}")
    print(f"entropy of reduced A: {s_a:.10f} {base.label}")
    print(f"entropy of reduced B: {s_b:.10f} {base.label}")
    print(f"purity of reduced A: {float(probs @ probs):.10f}")
    if abs(s_a - s_b) > SCHMIDT_SYMMETRY_ATOL:
        print(f"FAIL: |S_A - S_B| = {abs(s_a - s_b):.2e} exceeds 1e-9")
        return EXIT_VERIFY
    print("PASS: subsystem entropies agree")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return int(args.handler(args))
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
