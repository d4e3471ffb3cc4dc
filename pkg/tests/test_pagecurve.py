import numpy as np
import pytest
from scipy.special import digamma

from pagelab import (
    DEFAULT_MEMORY_LIMIT,
    EnsembleEstimate,
    EntropyOrder,
    LogBase,
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
    render_csv,
    semiclassical_curve,
)


class TestAnalyticCurves:
    def test_lubkin_known_values(self):
        assert lubkin_expected_purity(2, 2) == pytest.approx(4.0 / 5.0, abs=1e-15)
        assert lubkin_expected_purity(4, 4) == pytest.approx(8.0 / 17.0, abs=1e-15)
        assert lubkin_expected_purity(2, 8) == pytest.approx(10.0 / 17.0, abs=1e-15)

    def test_lubkin_is_symmetric(self):
        for d_a, d_b in [(2, 16), (4, 8), (2, 4), (8, 32)]:
            assert lubkin_expected_purity(d_a, d_b) == pytest.approx(
                lubkin_expected_purity(d_b, d_a), abs=1e-15
            )

    def test_lubkin_minimum_at_balanced_cut(self):
        # among the divisor pairs of d = 64, the even split purifies least
        d = 64
        values = {
            d_a: lubkin_expected_purity(d_a, d // d_a) for d_a in (2, 4, 8, 16, 32)
        }
        assert min(values, key=values.get) == 8

    def test_trivial_subsystem_is_pure(self):
        assert lubkin_expected_purity(1, 16) == pytest.approx(1.0, abs=1e-15)

    def test_budget_route_matches_lubkin(self):
        for n_a in range(0, 7):
            for n_b in range(0, 7):
                if n_a + n_b == 0:
                    continue
                d_a, d_b = 2**n_a, 2**n_b
                assert expected_subsystem_purity(d_a, d_b) == pytest.approx(
                    lubkin_expected_purity(d_a, d_b), abs=1e-12
                )

    def test_lubkin_rejects_bad_dimensions(self):
        with pytest.raises(ValueError):
            lubkin_expected_purity(0, 4)
        # the closed form itself is dimension-general; only the budget route
        # needs powers of two
        assert lubkin_expected_purity(3, 4) == pytest.approx(7.0 / 13.0, abs=1e-15)
        with pytest.raises(ValueError, match="power of two"):
            expected_subsystem_purity(3, 4)

    def test_classical_purity_endpoints(self):
        assert classical_expected_purity(1, 16) == pytest.approx(1.0, abs=1e-15)
        # full-register marginal of a Dirichlet draw is not pure on average
        assert classical_expected_purity(16, 1) == pytest.approx(2.0 / 17.0, abs=1e-15)

    def test_classical_purity_monte_carlo(self):
        rng = np.random.default_rng(11)
        d_a, d_b = 4, 4
        vals = []
        for _ in range(4000):
            p = rng.dirichlet(np.ones(d_a * d_b))
            marg = p.reshape(d_a, d_b).sum(axis=1)
            vals.append(float(np.sum(marg**2)))
        se = np.std(vals, ddof=1) / np.sqrt(len(vals))
        assert abs(np.mean(vals) - classical_expected_purity(d_a, d_b)) <= 3.0 * se

    def test_semiclassical_is_the_monotone_line(self):
        assert semiclassical_curve(6, 0) == 0.0
        assert semiclassical_curve(6, 4) == 4.0
        assert semiclassical_curve(6, 6) == 6.0
        assert semiclassical_curve(6, 3, LogBase.E) == pytest.approx(
            3.0 * np.log(2.0), abs=1e-15
        )

    def test_semiclassical_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            semiclassical_curve(4, 5)
        with pytest.raises(ValueError):
            semiclassical_curve(4, -1)


class TestResourceGuards:
    def test_memory_estimate_grows_with_size_and_workers(self):
        assert estimated_memory_bytes(10, 1) < estimated_memory_bytes(11, 1)
        assert estimated_memory_bytes(10, 1) < estimated_memory_bytes(10, 4)

    def test_memory_limit_trips_first(self):
        with pytest.raises(ResourceLimitError, match="exceeds the limit"):
            estimate_page_curve(12, 100, 0, memory_limit=1024)

    def test_register_cap_trips(self):
        with pytest.raises(ResourceLimitError, match="14"):
            estimate_page_curve(15, 100, 0, memory_limit=2**60)

    def test_small_runs_rejected_as_usage_errors(self):
        with pytest.raises(ValueError, match="at least 100"):
            estimate_page_curve(4, 99, 0)
        with pytest.raises(ValueError, match="at least 2"):
            estimate_page_curve(1, 100, 0)
        with pytest.raises(ValueError, match="workers"):
            estimate_page_curve(4, 100, 0, workers=0)
        with pytest.raises(ValueError, match="at least 2"):
            concentration_report((4,), 1, 0)


class TestResultType:
    @staticmethod
    def _point(n_a, mean):
        est = EnsembleEstimate(mean=mean, variance=0.0, count=100, std_error=0.0)
        pur = EnsembleEstimate(mean=0.5, variance=0.0, count=100, std_error=0.0)
        return PageCurvePoint(
            n_a=n_a,
            entropy=est,
            purity=pur,
            analytic_purity=0.5,
            semiclassical=float(n_a),
        )

    def _result(self, points):
        return PageCurveResult(
            ensemble="haar",
            n_qubits=2,
            order=EntropyOrder(1.0),
            base=LogBase.TWO,
            samples_per_point=100,
            seed=0,
            subset_mode="prefix",
            points=tuple(points),
        )

    def test_requires_full_coverage(self):
        with pytest.raises(ValueError, match="cover"):
            self._result([self._point(0, 0.0), self._point(2, 1.0)])

    def test_rejects_entropy_above_subsystem_cap(self):
        with pytest.raises(ValueError, match="bound"):
            self._result(
                [self._point(0, 0.0), self._point(1, 1.5), self._point(2, 1.0)]
            )

    def test_rejects_bad_ensemble_and_mode(self):
        pts = [self._point(0, 0.0), self._point(1, 0.5), self._point(2, 1.0)]
        with pytest.raises(ValueError, match="ensemble"):
            PageCurveResult(
                ensemble="nope",
                n_qubits=2,
                order=EntropyOrder(1.0),
                base=LogBase.TWO,
                samples_per_point=100,
                seed=0,
                subset_mode="prefix",
                points=tuple(pts),
            )
        with pytest.raises(ValueError, match="subset mode"):
            PageCurveResult(
                ensemble="haar",
                n_qubits=2,
                order=EntropyOrder(1.0),
                base=LogBase.TWO,
                samples_per_point=100,
                seed=0,
                subset_mode="scattered",
                points=tuple(pts),
            )


@pytest.fixture(scope="module")
def small_run():
    return estimate_page_curve(4, 400, 7)


@pytest.fixture(scope="module")
def classical_run():
    return classical_page_curve(4, 1500, 13)


class TestHaarCurve:

    def test_shape_and_coverage(self, small_run):
        assert small_run.n_qubits == 4
        assert tuple(p.n_a for p in small_run.points) == (0, 1, 2, 3, 4)
        assert small_run.ensemble == "haar"
        assert small_run.subset_mode == "prefix"

    def test_endpoints_are_exact(self, small_run):
        first, last = small_run.points[0], small_run.points[-1]
        assert first.entropy.mean == 0.0 and first.entropy.variance == 0.0
        assert last.entropy.mean == 0.0 and last.entropy.variance == 0.0
        assert first.purity.mean == 1.0 and last.purity.mean == 1.0
        assert first.entropy.count == 400

    def test_purity_tracks_lubkin(self, small_run):
        for p in small_run.points[1:-1]:
            d_a, d_b = 2**p.n_a, 2 ** (4 - p.n_a)
            assert p.analytic_purity == pytest.approx(
                lubkin_expected_purity(d_a, d_b), abs=1e-15
            )
            assert abs(p.purity.mean - p.analytic_purity) <= 4.0 * p.purity.std_error

    def test_entropy_peaks_at_half_cut(self, small_run):
        means = [p.entropy.mean for p in small_run.points]
        assert int(np.argmax(means)) == 2

    def test_deterministic_across_worker_counts(self):
        serial = estimate_page_curve(3, 300, 5, workers=1)
        parallel = estimate_page_curve(3, 300, 5, workers=2)
        assert render_csv(serial) == render_csv(parallel)
        for a, b in zip(serial.points, parallel.points):
            assert a.entropy.mean == b.entropy.mean
            assert a.purity.variance == b.purity.variance

    def test_seed_changes_interior_points(self):
        a = estimate_page_curve(3, 300, 5)
        b = estimate_page_curve(3, 300, 6)
        assert a.points[1].entropy.mean != b.points[1].entropy.mean

    def test_renyi_two_channel(self):
        run = estimate_page_curve(3, 300, 9, order=EntropyOrder(2.0))
        for p in run.points[1:-1]:
            # collision entropy of the mean purity lands near the mean entropy
            assert p.entropy.mean == pytest.approx(
                -np.log2(p.purity.mean), abs=0.15
            )

    def test_nats_base(self):
        bits = estimate_page_curve(3, 300, 5)
        nats = estimate_page_curve(3, 300, 5, base=LogBase.E)
        for pb, pn in zip(bits.points, nats.points):
            assert pn.entropy.mean == pytest.approx(
                pb.entropy.mean * np.log(2.0), abs=1e-12
            )
            # purity channel ignores the log base
            assert pn.purity.mean == pb.purity.mean

    def test_random_subsets_mode(self):
        run = estimate_page_curve(4, 400, 7, random_subsets=True)
        assert run.subset_mode == "random"
        assert run.points[0].entropy.mean == 0.0
        assert run.points[-1].entropy.mean == 0.0
        for p in run.points[1:-1]:
            # same marginal law as the prefix cut, so Lubkin still applies
            assert abs(p.purity.mean - p.analytic_purity) <= 4.0 * p.purity.std_error


class TestClassicalCurve:
    def test_marginal_entropy_matches_digamma_oracle(self, classical_run):
        # E[H(p_A)] for a flat Dirichlet on d outcomes marginalized to d_a
        n = classical_run.n_qubits
        d = 2**n
        for p in classical_run.points[1:]:
            d_b = 2 ** (n - p.n_a)
            expected_nats = digamma(d + 1) - digamma(d_b + 1)
            expected_bits = expected_nats / np.log(2.0)
            assert abs(p.entropy.mean - expected_bits) <= 4.0 * p.entropy.std_error

    def test_monotone_increasing_in_subsystem_size(self, classical_run):
        means = [p.entropy.mean for p in classical_run.points]
        assert all(b > a for a, b in zip(means, means[1:]))

    def test_zero_size_marginal_is_exact(self, classical_run):
        assert classical_run.points[0].entropy.mean == 0.0
        assert classical_run.points[0].entropy.variance == 0.0
        assert classical_run.points[0].purity.mean == 1.0

    def test_full_marginal_is_not_deterministic(self, classical_run):
        assert classical_run.points[-1].entropy.variance > 0.0

    def test_analytic_purity_column(self, classical_run):
        for p in classical_run.points:
            d_a = 2**p.n_a
            d_b = 2 ** (classical_run.n_qubits - p.n_a)
            assert p.analytic_purity == pytest.approx(
                classical_expected_purity(d_a, d_b), abs=1e-15
            )
            assert abs(p.purity.mean - p.analytic_purity) <= 4.0 * (
                p.purity.std_error or 1e-15
            )

    def test_deterministic_across_worker_counts(self):
        serial = classical_page_curve(3, 300, 5, workers=1)
        parallel = classical_page_curve(3, 300, 5, workers=3)
        assert render_csv(serial) == render_csv(parallel)


class TestConcentration:
    def test_spread_shrinks_with_register_size(self):
        rows = concentration_report((2, 4, 6), 600, 3)
        assert tuple(n for n, _ in rows) == (2, 4, 6)
        spreads = [s for _, s in rows]
        assert all(s > 0 for s in spreads)
        assert all(b < a for a, b in zip(spreads, spreads[1:]))

    def test_rows_are_independent_of_companions(self):
        # the n = 4 row must not change because other sizes ran alongside
        alone = concentration_report((4,), 400, 3)
        grouped = concentration_report((2, 4), 400, 3)
        assert alone[0] == grouped[1]

    def test_respects_memory_limit(self):
        with pytest.raises(ResourceLimitError):
            concentration_report((12,), 100, 0, memory_limit=1024)
        assert DEFAULT_MEMORY_LIMIT > estimated_memory_bytes(8, 1)
