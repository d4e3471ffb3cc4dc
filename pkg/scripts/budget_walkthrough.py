"""Walk one random pure state through the predictability-budget identities.

For each prefix cut the script prints the exact split of the squared Pauli
expectations into the share local on A and the remainder, the subsystem
purity reconstructed from the local share, and the same purity computed
directly from the reduced density matrix. The totals always land on d - 1.
"""

import argparse

from pagelab import (
    Bipartition,
    SamplerSeed,
    lubkin_expected_purity,
    predictability_budget,
    purity,
    purity_from_budget,
    reduced_density,
    sample_haar_pure,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", type=int, default=5)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    state = sample_haar_pure(args.qubits, SamplerSeed(args.seed).generator())
    n = args.qubits
    print(f"one random pure state on {n} qubits; budget target d-1 = {2**n - 1}")
    header = (
        f"{'n_a':>4} {'total':>10} {'local_a':>10} {'rest':>10} "
        f"{'purity(budget)':>15} {'purity(rho_A)':>14} {'ensemble avg':>13}"
    )
    print(header)
    for n_a in range(1, n):
        part = Bipartition.prefix(n, n_a)
        budget = predictability_budget(state, part)
        via_budget = purity_from_budget(budget, "a")
        direct = purity(reduced_density(state, part, "a"))
        avg = lubkin_expected_purity(part.d_a, part.d_b)
        print(
            f"{n_a:>4} {budget.total:>10.6f} {budget.local_a:>10.6f} "
            f"{budget.nonlocal_a:>10.6f} {via_budget:>15.12f} "
            f"{direct:>14.12f} {avg:>13.6f}"
        )


if __name__ == "__main__":
    main()
