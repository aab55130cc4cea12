import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discrete_dispersion import (
    DistributionError, TailBudget, affine, bernoulli, convolve, degenerate, discrete_uniform,
    family, from_counts, geometric, hermite, is_unimodal, lattice_info, make_distribution,
    map_monotone, poisson,
)
from discrete_dispersion.distributions import binomial, logarithmic, neg_binomial

from generators import distributions
from oracles import poisson_pmf


def assert_valid(d):
    assert all(m > 0 for m in d.masses)
    assert all(b > a for a, b in zip(d.points, d.points[1:]))
    if d.exact:
        assert sum(d.masses) == 1
    else:
        assert abs(math.fsum(d.masses) + d.tail_deficit - 1) <= 1e-12


class TestConstruction:
    def test_three_point(self):
        d = make_distribution([0, 1, 2], [0.6, 0.2, 0.2])
        assert d.points == (0, 1, 2)
        assert d.masses == pytest.approx((0.6, 0.2, 0.2))
        assert d.backend == "floating" and d.tail_deficit == 0

    def test_degenerate(self):
        d = make_distribution([5], [1.0])
        assert d.is_degenerate and d.points == (5.0,)

    def test_duplicates_merge(self):
        d = make_distribution([1, 1, 2], [0.3, 0.2, 0.5])
        assert d.points == (1, 2)
        assert d.masses == pytest.approx((0.5, 0.5))

    @pytest.mark.parametrize("pts, ms", [
        ([0, 1], [0.5, 0.0]),
        ([0, 1], [0.5, 0.6]),
        ([], []),
        ([0, 1], [1.0]),
    ])
    def test_rejects(self, pts, ms):
        with pytest.raises(DistributionError):
            make_distribution(pts, ms)

    def test_from_counts_table1(self):
        rows = [(0, 32), (1, 15), (2, 8), (3, 4), (4, 1), (5, 1), (6, 3), (7, 2), (8, 1),
                (16, 1), (21, 1), (42, 1), (64, 1)]
        d = from_counts(rows)
        assert d.total == 71
        assert d.masses[0] == Fraction(32, 71)

    def test_from_counts_merge_and_degenerate(self):
        d = from_counts([(0, 1), (0, 2), (1, 1)])
        assert d.points == (0, 1) and d.counts == (3, 1) and d.total == 4
        assert from_counts([(7, 3)]).points == (7,)

    @pytest.mark.parametrize("count", [0, -2, 1.5])
    def test_from_counts_bad_count(self, count):
        with pytest.raises(DistributionError):
            from_counts([(1, 2), (3, count)])

    def test_support_cap(self):
        with pytest.raises(DistributionError):
            from_counts([(k, 1) for k in range(50)], max_support=20)


class TestFamilies:
    def test_bernoulli(self):
        d = bernoulli(0.3)
        assert d.points == (0, 1) and d.masses == pytest.approx((0.7, 0.3))

    def test_discrete_uniform(self):
        d = discrete_uniform(1, 5, 1)
        assert d.points == (1, 2, 3, 4, 5)
        assert all(m == Fraction(1, 5) for m in d.masses)

    def test_poisson_against_closed_form(self):
        d = poisson(2.0, TailBudget(1e-12))
        assert d.tail_deficit <= 1e-12
        for k, m in zip(d.points, d.masses):
            assert m == pytest.approx(poisson_pmf(2.0, int(k)), rel=1e-12, abs=1e-300)
        # truncation is at the smallest admissible upper point
        k_max = int(d.points[-1])
        tail_before = 1 - sum(poisson_pmf(2.0, k) for k in range(k_max))
        assert tail_before > 1e-12

    @pytest.mark.parametrize("name, params", [
        ("poisson", (3.5,)), ("neg_binomial", (2.5, 0.4)), ("geometric", (0.2,)),
        ("logarithmic", (0.7,)), ("hermite", (0.5, 1.2)), ("binomial", (7, 0.3)),
    ])
    def test_family_outputs_valid(self, name, params):
        d = family(name, params, TailBudget(1e-12))
        assert_valid(d)
        assert d.tail_deficit <= 1e-12

    @pytest.mark.parametrize("name, params", [
        ("logarithmic", (1.0,)), ("logarithmic", (0.0,)), ("poisson", (-1.0,)),
        ("geometric", (0.0,)), ("bernoulli", (1.5,)), ("binomial", (2.5, 0.5)),
        ("nope", (1,)), ("poisson", (1, 2, 3)),
    ])
    def test_family_domain_errors(self, name, params):
        with pytest.raises(DistributionError):
            family(name, params)

    def test_geometric_support_starts_at_one(self):
        d = geometric(0.4)
        assert d.points[0] == 1
        assert d.masses[0] == pytest.approx(0.4)

    def test_logarithmic_pmf(self):
        d = logarithmic(0.3)
        expected = [-1 / math.log(0.7) * 0.3**k / k for k in (1, 2, 3)]
        assert list(d.masses[:3]) == pytest.approx(expected, rel=1e-12)

    def test_neg_binomial_counts_failures(self):
        d = neg_binomial(2, 0.5)
        assert d.points[0] == 0 and d.masses[0] == pytest.approx(0.25)

    @pytest.mark.parametrize("a, b", [(0.1, 0.1), (1.0, 2.0), (2.5, 0.7)])
    def test_hermite_mean(self, a, b):
        d = hermite(a, b)
        assert d.mean() == pytest.approx(a + 2 * b, abs=1e-9)
        assert d.tail_deficit <= 1e-12

    def test_hermite_matches_convolution(self):
        u, v = poisson(1.0, TailBudget(5e-13)), affine(poisson(2.0, TailBudget(5e-13)), 2, 0)
        assert lattice_info(v).step == 2
        h = hermite(1.0, 2.0)
        ref = convolve(u, v)
        assert h.points == ref.points
        assert np.allclose(h.float_masses(), ref.float_masses(), atol=1e-15)

    def test_cap_on_truncation(self):
        with pytest.raises(DistributionError):
            geometric(0.001, TailBudget(1e-12), max_support=1000)


class TestTransformations:
    def test_reflection(self):
        d = affine(bernoulli(0.3), -1, 1)
        assert d.points == (0, 1) and d.masses == pytest.approx((0.3, 0.7))

    def test_shift(self):
        d = make_distribution([0, 2, 3], [0.2, 0.3, 0.5])
        s = affine(d, 1, 5)
        assert s.points == (5, 7, 8) and s.masses == d.masses

    def test_zero_slope(self):
        with pytest.raises(DistributionError):
            affine(bernoulli(0.5), 0, 1)

    def test_map_monotone(self):
        d = map_monotone(discrete_uniform(1, 5), lambda x: x / 2)
        assert d.points == (0.5, 1.0, 1.5, 2.0, 2.5)
        e = make_distribution([0, 1, 4], [0.1, 0.6, 0.3])
        assert map_monotone(e, lambda x: -x) == affine(e, -1, 0)

    def test_map_monotone_rejects_non_strict(self):
        with pytest.raises(DistributionError):
            map_monotone(discrete_uniform(1, 3), lambda x: 2 * math.floor(x / 2))

    def test_convolve_bernoullis(self):
        d = convolve(bernoulli(0.5), bernoulli(0.5))
        assert d.points == (0, 1, 2) and d.masses == pytest.approx((0.25, 0.5, 0.25))

    def test_convolve_degenerate_shifts(self):
        d = make_distribution([0, 1, 3], [0.2, 0.5, 0.3])
        c = convolve(degenerate(4), d)
        assert c.points == (4, 5, 7) and c.masses == pytest.approx(d.masses)

    def test_poisson_additivity(self):
        c = convolve(poisson(1.0), poisson(2.0))
        p3 = poisson(3.0)
        n = max(len(c), len(p3))
        a = np.zeros(n)
        b = np.zeros(n)
        a[: len(c)] = c.float_masses()
        b[: len(p3)] = p3.float_masses()
        assert 0.5 * np.abs(a - b).sum() <= 1e-10
        assert c.tail_deficit <= 2e-12

    def test_convolve_exact_stays_exact(self):
        x = from_counts([(0, 1), (1, 2)])
        y = from_counts([(0, 3), (2, 1)])
        c = convolve(x, y)
        assert c.exact and c.total == 12
        assert c.masses == (Fraction(3, 12), Fraction(6, 12), Fraction(1, 12), Fraction(2, 12))


class TestLattice:
    def test_uniform(self):
        info = lattice_info(discrete_uniform(1, 5))
        assert info.origin == 1 and info.step == 1

    def test_gcd_step(self):
        info = lattice_info(make_distribution([0, 2, 6], [0.2, 0.3, 0.5]))
        assert info.origin == 0 and info.step == 2

    def test_incommensurable(self):
        assert lattice_info(make_distribution([0, 1, math.sqrt(2)], [0.2, 0.3, 0.5])) is None

    def test_fractional_step(self):
        info = lattice_info(make_distribution([0, 0.5, 2], [0.2, 0.3, 0.5]))
        assert info.step == pytest.approx(0.5)

    def test_unimodal(self):
        assert is_unimodal(geometric(0.4))
        assert not is_unimodal(make_distribution(range(4), [0.4, 0.1, 0.1, 0.4]))
        assert is_unimodal(make_distribution(range(4), [0.1, 0.4, 0.4, 0.1]))

    def test_unimodal_gap_counts_as_zero(self):
        # lattice completion puts zero mass at 2
        assert not is_unimodal(make_distribution([0, 1, 3], [0.4, 0.3, 0.3]))
        assert is_unimodal(make_distribution([0, 2], [0.5, 0.5]))

    def test_unimodal_needs_lattice(self):
        with pytest.raises(DistributionError):
            is_unimodal(make_distribution([0, 1, math.sqrt(2)], [0.2, 0.3, 0.5]))


@settings(max_examples=200, deadline=None)
@given(distributions(), st.sampled_from([-3.0, -0.5, 0.25, 2.0]), st.integers(-5, 5))
def test_affine_roundtrip(d, a, b):
    back = affine(affine(d, a, b), 1 / a, -b / a)
    assert np.allclose(back.points, d.points, atol=1e-12)
    assert np.allclose(back.float_masses(), d.float_masses(), atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(distributions(max_size=5), distributions(max_size=5), distributions(max_size=5))
def test_convolve_commutative_associative(x, y, z):
    def close(a, b):
        return a.points == b.points and np.allclose(a.float_masses(), b.float_masses(), atol=1e-12)

    assert close(convolve(x, y), convolve(y, x))
    assert close(convolve(convolve(x, y), z), convolve(x, convolve(y, z)))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 9)), min_size=1, max_size=8),
       st.integers(2, 7))
def test_count_scaling_same_masses(pairs, c):
    a = from_counts(pairs)
    b = from_counts([(v, k * c) for v, k in pairs])
    assert a.masses == b.masses


@settings(max_examples=200, deadline=None)
@given(distributions())
def test_constructor_invariants(d):
    assert_valid(d)
