from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discrete_dispersion import (
    DistributionError, StepFunction, affine, bernoulli, concentration_at, concentration_function,
    convolve, degenerate, discrete_uniform, dm_sequence, from_counts, make_distribution,
    poisson, TailBudget, window_sup,
)
from discrete_dispersion.concentration import common_step
from discrete_dispersion.fixtures import FIXTURES

from generators import distributions, random_dist
from oracles import brute_q

THREE = make_distribution([0, 1, 2], [0.6, 0.2, 0.2])


class TestConcentrationAt:
    def test_three_point(self):
        assert concentration_at(THREE, 1) == pytest.approx(0.8)

    def test_whole_support_exact(self):
        d = from_counts([(0, 3), (4, 1), (9, 5)])
        assert concentration_at(d, 9) == 1
        assert concentration_at(d, 100) == 1

    def test_bernoulli_half(self):
        assert concentration_at(bernoulli(0.3), 0.5) == pytest.approx(0.7)

    def test_zero_is_max_mass(self):
        assert concentration_at(THREE, 0) == pytest.approx(0.6)

    def test_exact_returns_fraction(self):
        v = concentration_at(from_counts([(0, 1), (1, 2)]), 0)
        assert v == Fraction(2, 3) and isinstance(v, Fraction)

    def test_negative_eps(self):
        with pytest.raises(ValueError):
            concentration_at(THREE, -0.1)

    def test_tail_deficit_caps_value(self):
        d = poisson(1.0, TailBudget(1e-12))
        top = concentration_at(d, d.support_range + 1)
        assert top == pytest.approx(1 - d.tail_deficit, abs=1e-15)


class TestConcentrationFunction:
    def test_bernoulli(self):
        q = concentration_function(bernoulli(0.3))
        assert q.breakpoints == (0, 1)
        assert q.values == pytest.approx((0.7, 1.0))

    def test_degenerate(self):
        q = concentration_function(degenerate(3))
        assert q.breakpoints == (0,) and q.values == (1,)

    def test_three_point(self):
        q = concentration_function(THREE)
        assert q.breakpoints == (0, 1, 2)
        assert q.values == pytest.approx((0.6, 0.8, 1.0))

    def test_drops_non_increasing_distances(self):
        # distance 1 does not beat the point mass 0.8
        q = concentration_function(from_counts([(0, 8), (1, 1), (2, 1)]))
        assert q.breakpoints == (0, 1, 2)
        q = concentration_function(from_counts([(0, 8), (3, 1), (4, 1)]))
        assert q.breakpoints == (0, 3, 4)
        assert q.values == (Fraction(8, 10), Fraction(9, 10), 1)

    def test_segments(self):
        segs = list(concentration_function(THREE).segments())
        assert [s[:2] for s in segs] == [(0, 1), (1, 2), (2, float("inf"))]

    def test_step_function_validation(self):
        with pytest.raises(ValueError):
            StepFunction((1.0,), (1.0,))
        with pytest.raises(ValueError):
            StepFunction((0.0, 1.0), (1.0,))

    def test_lattice_path_agrees(self):
        from discrete_dispersion.concentration import _lattice_step_function, _pair_step_function

        rng = np.random.default_rng(3)
        for _ in range(20):
            d = random_dist(rng, max_size=12, lo=0, hi=25)
            a, b = _pair_step_function(d), _lattice_step_function(d, 1.0)
            assert a.breakpoints == pytest.approx(b.breakpoints)
            assert [float(v) for v in a.values] == pytest.approx([float(v) for v in b.values])


class TestWindowSup:
    def test_uniform(self):
        assert window_sup(discrete_uniform(1, 5), 2) == Fraction(3, 5)

    def test_saturates(self):
        d = from_counts([(0, 1), (2, 3), (3, 1)])
        assert window_sup(d, 3) == 1 and window_sup(d, 50) == 1

    def test_table1_sample2(self):
        assert window_sup(FIXTURES[1].distribution(2), 0) == Fraction(134, 168)

    def test_matches_concentration_at(self):
        d = make_distribution([0, 0.5, 2, 2.5], [0.1, 0.4, 0.3, 0.2])
        for m in range(6):
            assert window_sup(d, m) == pytest.approx(concentration_at(d, 0.5 * m))

    def test_non_lattice(self):
        with pytest.raises(DistributionError):
            window_sup(make_distribution([0, 1, 2**0.5], [0.3, 0.3, 0.4]), 1)

    def test_bad_m(self):
        with pytest.raises(ValueError):
            window_sup(THREE, -1)


class TestDm:
    def test_self_zero(self):
        d = FIXTURES[2].distribution(1)
        assert all(v == 0 for v in dm_sequence(d, d, 15).values)

    def test_example1(self):
        fx = FIXTURES[1]
        dm = dm_sequence(fx.distribution(1), fx.distribution(2), 10)
        assert all(v <= 0 for v in dm.values)
        assert any(v < 0 for v in dm.values)

    def test_common_step(self):
        x = make_distribution([0, 2, 4], [0.2, 0.3, 0.5])
        y = make_distribution([0, 3], [0.5, 0.5])
        assert common_step(x, y) == pytest.approx(1.0)
        assert len(dm_sequence(x, y, 4)) == 5

    def test_incommensurable(self):
        x = make_distribution([0, 1], [0.5, 0.5])
        y = make_distribution([0, 2**0.5], [0.5, 0.5])
        with pytest.raises(DistributionError):
            dm_sequence(x, y, 3)

    def test_vanishes_beyond_range(self):
        x = from_counts([(0, 1), (3, 2)])
        y = from_counts([(1, 5), (2, 1), (6, 1)])
        dm = dm_sequence(x, y, 12)
        assert all(v == 0 for v in dm.values[5:])
        assert all(abs(v) <= 1 for v in dm.values)


# ------------------------------------------------------------------ properties

@settings(max_examples=200, deadline=None)
@given(distributions(max_size=8), st.lists(st.floats(0, 35), min_size=5, max_size=5))
def test_brute_force_agreement(d, eps_list):
    for eps in eps_list:
        assert float(concentration_at(d, eps)) == pytest.approx(
            float(brute_q(d.points, d.masses, eps)), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(distributions(), st.floats(0, 30), st.floats(0, 30))
def test_monotone_and_step_agreement(d, e1, e2):
    lo, hi = sorted((e1, e2))
    assert concentration_at(d, lo) <= concentration_at(d, hi)
    q = concentration_function(d)
    assert q(lo) == concentration_at(d, lo)
    for b, v in zip(q.breakpoints, q.values):
        assert q(b) == v == concentration_at(d, b)
    assert list(q.values) == sorted(q.values)


@settings(max_examples=200, deadline=None)
@given(distributions(), st.sampled_from([-2.0, -1.0, 0.5, 3.0]), st.integers(-4, 4),
       st.floats(0, 20))
def test_affine_scaling_law(d, a, b, eps):
    lhs = concentration_at(affine(d, a, b), abs(a) * eps)
    assert lhs == pytest.approx(concentration_at(d, eps), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(distributions(max_size=6), distributions(max_size=6))
def test_convolution_bound(x, y):
    s = convolve(x, y)
    bps = set(concentration_function(x).breakpoints) | set(concentration_function(y).breakpoints)
    bps |= set(concentration_function(s).breakpoints)
    for eps in bps:
        assert concentration_at(s, eps) <= min(concentration_at(x, eps),
                                               concentration_at(y, eps)) + 1e-12
