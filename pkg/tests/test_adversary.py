"""Worst-case distribution search: greedy, alternating iterate, brute force."""

from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from weakqubit import (
    KeyDistribution,
    PureQubit,
    QubitCode,
    average_states,
    brute_force_worst,
    flat_source,
    greedy_for_axis,
    guess_probability,
    lambda_max,
    min_entropy_loss,
    pure_state,
    random_code,
    stream,
    substream,
    two_key_margin,
    worst_case_iterate,
)

from conftest import TETRAHEDRON, random_rotation, random_unit_vector

TETRA_PAIR_P = 0.7886751345948129  # (1 + 1/sqrt(3)) / 2


def flat_pair_oracle(code: QubitCode, m: int) -> float:
    """Independent oracle: enumerate all flat supports of size m directly."""
    best = 0.0
    for subset in combinations(range(len(code)), m):
        mean = code.blochs[list(subset)].sum(axis=0) / m
        best = max(best, 0.5 * (1.0 + np.linalg.norm(mean)))
    return best


class TestAverageStates:
    def test_point_mass_is_pure(self, tetrahedron):
        rho0, rho1 = average_states(tetrahedron, flat_source(4, [2]))
        np.testing.assert_allclose(rho0.bloch, TETRAHEDRON[2], atol=1e-12)
        np.testing.assert_allclose(rho0.bloch + rho1.bloch, 0.0, atol=1e-12)

    def test_uniform_fibonacci_is_nearly_balanced(self):
        from weakqubit import fibonacci_code

        code = fibonacci_code(1024)
        rho0, _ = average_states(code, flat_source(1024, range(1024)))
        assert np.linalg.norm(rho0.bloch) < 0.01

    def test_mirror_identity_for_random_distributions(self, tetrahedron):
        rng = stream(8)
        for _ in range(20):
            probs = rng.dirichlet(np.ones(4))
            rho0, rho1 = average_states(tetrahedron, KeyDistribution(probs))
            np.testing.assert_allclose(rho0.bloch + rho1.bloch, 0.0, atol=1e-12)

    def test_rejects_size_mismatch(self, tetrahedron):
        with pytest.raises(ValueError):
            average_states(tetrahedron, flat_source(3, [0]))


class TestGuessProbability:
    def test_uniform_antipodal_pair_is_blind(self, antipodal_pair):
        assert guess_probability(antipodal_pair, flat_source(2, [0, 1])) == pytest.approx(0.5, abs=1e-12)

    def test_point_mass_is_transparent(self, tetrahedron):
        assert guess_probability(tetrahedron, flat_source(4, [1])) == pytest.approx(1.0, abs=1e-12)

    def test_tetrahedron_flat_pair(self, tetrahedron):
        assert guess_probability(tetrahedron, flat_source(4, [0, 1])) == pytest.approx(
            TETRA_PAIR_P, abs=1e-12
        )


class TestGreedyForAxis:
    def test_zero_budget_forces_uniform(self, tetrahedron):
        d = greedy_for_axis(tetrahedron, 0.0, pure_state(0.7, 0.3))
        np.testing.assert_allclose(d.probs, 0.25, atol=1e-12)

    def test_vacuous_cap_gives_point_mass(self, antipodal_pair):
        d = greedy_for_axis(antipodal_pair, 1.0, antipodal_pair.state(0))
        np.testing.assert_allclose(d.probs, [1.0, 0.0], atol=0)

    def test_tetrahedron_tie_break_by_lowest_index(self, tetrahedron):
        # Fidelities from vertex 0: 1 to itself, 1/3 to each of the others;
        # the half-budget cap fills vertex 0 and then the lowest-index tie.
        d = greedy_for_axis(tetrahedron, 1.0, tetrahedron.state(0))
        np.testing.assert_allclose(d.probs, [0.5, 0.5, 0.0, 0.0], atol=1e-12)

    def test_respects_budget_and_weight_levels(self, tetrahedron):
        rng = stream(9)
        for _ in range(50):
            c = rng.uniform(0.0, 2.5)
            axis = PureQubit(random_unit_vector(rng))
            d = greedy_for_axis(tetrahedron, c, axis)
            assert min_entropy_loss(d) <= c + 1e-9
            cap = min(1.0, 2.0 ** c / 4)
            assert np.all(d.probs <= cap + 1e-12)
            assert np.count_nonzero((d.probs > 1e-12) & (d.probs < cap - 1e-12)) <= 1

    def test_maximizes_linear_objective_over_polytope(self, tetrahedron):
        rng = stream(10)
        axis = PureQubit(random_unit_vector(rng))
        c = 0.7
        d = greedy_for_axis(tetrahedron, c, axis)
        greedy_value = float(d.probs @ (tetrahedron.blochs @ axis.bloch))
        cap = 2.0 ** c / 4
        for _ in range(200):
            probs = rng.dirichlet(np.ones(4))
            probs = np.minimum(probs, cap)
            probs /= probs.sum()
            if np.any(probs > cap + 1e-12):
                continue
            value = float(probs @ (tetrahedron.blochs @ axis.bloch))
            assert value <= greedy_value + 1e-12

    def test_rejects_negative_budget(self, tetrahedron):
        with pytest.raises(ValueError):
            greedy_for_axis(tetrahedron, -0.1, tetrahedron.state(0))


class TestWorstCaseIterate:
    def test_zero_budget_has_no_freedom(self, tetrahedron):
        report = worst_case_iterate(tetrahedron, 0.0, 5, stream(11))
        uniform = flat_source(4, range(4))
        rho0, _ = average_states(tetrahedron, uniform)
        assert report.p == pytest.approx(lambda_max(rho0), abs=1e-12)
        assert report.p == pytest.approx(0.5, abs=1e-12)

    def test_tetrahedron_matches_brute_force(self, tetrahedron):
        report = worst_case_iterate(tetrahedron, 1.0, 20, stream(12))
        assert report.p == pytest.approx(TETRA_PAIR_P, abs=1e-9)
        assert report.method == "iterate"

    def test_large_fibonacci_stays_near_continuum(self):
        from weakqubit import fibonacci_code

        report = worst_case_iterate(fibonacci_code(4096), 1.0, 10, stream(13))
        assert 0.75 <= report.p <= 0.80

    def test_deterministic_given_seed(self, tetrahedron):
        a = worst_case_iterate(tetrahedron, 0.8, 10, stream(14))
        b = worst_case_iterate(tetrahedron, 0.8, 10, stream(14))
        assert a.p == b.p
        np.testing.assert_array_equal(a.distribution.probs, b.distribution.probs)

    def test_reported_p_matches_distribution(self, tetrahedron):
        report = worst_case_iterate(tetrahedron, 1.3, 10, stream(15))
        assert report.p == pytest.approx(guess_probability(tetrahedron, report.distribution), abs=1e-9)
        assert min_entropy_loss(report.distribution) <= 1.3 + 1e-9

    def test_vacuous_cap_is_flagged(self, antipodal_pair):
        report = worst_case_iterate(antipodal_pair, 1.0, 5, stream(16))
        assert report.cap_vacuous
        assert report.p == pytest.approx(1.0, abs=1e-12)

    def test_rejects_zero_restarts(self, tetrahedron):
        with pytest.raises(ValueError):
            worst_case_iterate(tetrahedron, 1.0, 0, stream(17))


class TestBruteForce:
    def test_antipodal_pair_with_point_mass_budget(self, antipodal_pair):
        report = brute_force_worst(antipodal_pair, 1.0)
        assert report.p == pytest.approx(1.0, abs=1e-12)
        assert report.cap_vacuous

    def test_tetrahedron_pair_budget(self, tetrahedron):
        report = brute_force_worst(tetrahedron, 1.0)
        assert report.p == pytest.approx(TETRA_PAIR_P, abs=1e-12)
        assert report.p == pytest.approx(flat_pair_oracle(tetrahedron, 2), abs=1e-12)

    def test_tetrahedron_zero_budget_is_balanced(self, tetrahedron):
        assert brute_force_worst(tetrahedron, 0.0).p == pytest.approx(0.5, abs=1e-12)

    def test_rejects_large_codes(self):
        with pytest.raises(ValueError):
            brute_force_worst(random_code(17, stream(18)), 1.0)


class TestOracleEquivalence:
    def test_iterate_matches_brute_on_random_codes(self):
        rng = stream(19)
        for _ in range(30):
            n = int(rng.integers(4, 13))
            m = int(rng.integers(2, n))
            c = float(np.log2(n / m))
            code = random_code(n, rng)
            exact = brute_force_worst(code, c).p
            found = worst_case_iterate(code, c, 50, rng).p
            assert abs(exact - found) < 1e-9

    def test_rotation_covariance(self):
        rng = stream(20)
        code = random_code(8, rng)
        c = 1.0
        base = worst_case_iterate(code, c, 30, substream(20, 1))
        for trial in range(5):
            rot = random_rotation(rng)
            rotated = QubitCode(code.blochs @ rot.T, kind="custom")
            report = worst_case_iterate(rotated, c, 30, substream(20, 2 + trial))
            assert abs(report.p - base.p) < 1e-9


class TestTwoKeyMargin:
    def test_antipodal_even_split(self):
        s = pure_state(0.0, 0.0)
        assert two_key_margin(s, PureQubit(-s.bloch), 0.5, 0.5) == pytest.approx(0.5, abs=1e-12)

    def test_orthogonal_axes_even_split(self):
        # Oracle: |r1 + r2| / 2 = sqrt(2)/2, so the margin is (2 - sqrt(2))/4.
        s1 = pure_state(0.0, 0.0)
        s2 = pure_state(np.pi / 2, 0.0)
        oracle = 0.5 * (1.0 - np.linalg.norm((s1.bloch + s2.bloch) / 2.0))
        assert oracle == pytest.approx((2.0 - np.sqrt(2.0)) / 4.0, abs=1e-15)
        assert two_key_margin(s1, s2, 0.5, 0.5) == pytest.approx(0.14644660940672627, abs=1e-12)

    def test_lopsided_close_pair_is_tiny_but_positive(self):
        s1 = pure_state(0.0, 0.0)
        s2 = pure_state(0.1, 0.0)
        margin = two_key_margin(s1, s2, 0.99, 0.01)
        assert 0.0 < margin < 1e-3

    def test_thousand_random_instances_beat_closed_form(self):
        rng = stream(21)
        for _ in range(1000):
            v1 = random_unit_vector(rng)
            v2 = random_unit_vector(rng)
            q1 = rng.uniform(1e-3, 1.0 - 1e-3)
            s1, s2 = PureQubit(v1), PureQubit(v2)
            margin = two_key_margin(s1, s2, q1, 1.0 - q1)
            cos_alpha = float(np.dot(v1, v2))
            lower = q1 * (1.0 - q1) * (1.0 - cos_alpha) / 2.0
            assert margin >= lower - 1e-12
            code = QubitCode(np.array([v1, v2]))
            d = KeyDistribution(np.array([q1, 1.0 - q1]))
            assert guess_probability(code, d) < 1.0

    def test_rejects_degenerate_inputs(self):
        s = pure_state(0.3, 0.3)
        with pytest.raises(ValueError):
            two_key_margin(s, s, 0.5, 0.5)
        t = pure_state(0.4, 0.3)
        with pytest.raises(ValueError):
            two_key_margin(s, t, 0.0, 1.0)
        with pytest.raises(ValueError):
            two_key_margin(s, t, 0.6, 0.6)


class TestReportSerialization:
    def test_csv_row_shape(self, tetrahedron):
        report = brute_force_worst(tetrahedron, 1.0)
        parts = report.csv_row().split(",")
        assert parts[0] == "brute"
        assert float(parts[1]) == 1.0
        assert int(parts[2]) == 4
        assert float(parts[3]) == pytest.approx(TETRA_PAIR_P, abs=1e-12)
        axis = np.array([float(p) for p in parts[4:]])
        assert np.linalg.norm(axis) == pytest.approx(1.0, abs=1e-9)
