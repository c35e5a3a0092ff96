"""
Root finding tests - closed-form real roots in an interval
"""

import numpy as np
import pytest

from polytraj_ccd.core.errors import DegeneratePolynomialError, InvalidArgumentError
from polytraj_ccd.core.rootfind import (
    RealPolynomial,
    effective_degree,
    real_roots_in_interval,
    solve_cubic,
    solve_quadratic,
)


class TestRealRootsInInterval:
    """Real roots of polynomials of degree <= 4"""

    def test_fourth_roots_of_unity(self):
        poly = RealPolynomial.from_descending(1.0, 0.0, 0.0, 0.0, -1.0)
        assert real_roots_in_interval(poly, -2.0, 2.0) == pytest.approx([-1.0, 1.0], abs=1e-12)

    def test_four_distinct_roots(self):
        poly = RealPolynomial.from_descending(1.0, -10.0, 35.0, -50.0, 24.0)
        assert real_roots_in_interval(poly, 0.0, 5.0) == pytest.approx([1.0, 2.0, 3.0, 4.0], abs=1e-9)

    def test_degree_cascade_to_quadratic(self):
        poly = RealPolynomial((0.0, -2.0, 1.0, 0.0, 0.0))
        assert real_roots_in_interval(poly, 0.0, 3.0) == pytest.approx([0.0, 2.0], abs=1e-12)

    def test_no_real_roots(self):
        poly = RealPolynomial.from_descending(1.0, 0.0, 0.0, 0.0, 1.0)
        assert real_roots_in_interval(poly, -10.0, 10.0) == []

    def test_interval_filter(self):
        poly = RealPolynomial.from_descending(1.0, -10.0, 35.0, -50.0, 24.0)
        assert real_roots_in_interval(poly, 1.5, 3.5) == pytest.approx([2.0, 3.0], abs=1e-9)

    def test_linear_and_constant(self):
        assert real_roots_in_interval(RealPolynomial((-1.0, 2.0)), 0.0, 1.0) == pytest.approx([0.5])
        assert real_roots_in_interval(RealPolynomial((3.0,)), 0.0, 1.0) == []

    def test_double_root_is_found(self):
        # (t - 1)^2 (t^2 + 1): tangent to the axis at t = 1
        poly = RealPolynomial.from_descending(1.0, -2.0, 2.0, -2.0, 1.0)
        roots = real_roots_in_interval(poly, 0.0, 2.0)
        assert roots, "tangent root was dropped"
        assert all(t == pytest.approx(1.0, abs=1e-6) for t in roots), roots

    def test_nearly_tangent_pair_is_kept(self):
        # (t - 1)^2 + 1e-12: roots 1 +- 1e-6 i, residual 1e-12 at t = 1
        poly = RealPolynomial.from_descending(1.0, -2.0, 1.0 + 1e-12)
        assert real_roots_in_interval(poly, 0.0, 2.0) == pytest.approx([1.0], abs=1e-9)

    def test_pair_beyond_tangency_tolerance_is_complex(self):
        # (t - 1)^2 + 1e-6: roots 1 +- 1e-3 i
        poly = RealPolynomial.from_descending(1.0, -2.0, 1.0 + 1e-6)
        assert real_roots_in_interval(poly, 0.0, 2.0) == []

    def test_identically_zero_is_degenerate(self):
        with pytest.raises(DegeneratePolynomialError, match="degenerate polynomial"):
            real_roots_in_interval(RealPolynomial((0.0, 0.0, 0.0, 0.0, 0.0)), 0.0, 1.0)

    def test_empty_interval(self):
        with pytest.raises(InvalidArgumentError):
            real_roots_in_interval(RealPolynomial((1.0, 1.0)), 1.0, 0.0)

    def test_random_quartics_match_known_roots(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            roots = np.sort(rng.uniform(-3.0, 3.0, size=4))
            if np.min(np.diff(roots)) < 0.05:
                continue
            scale = rng.uniform(0.5, 20.0)
            descending = scale * np.poly(roots)
            poly = RealPolynomial.from_descending(*descending.tolist())
            found = real_roots_in_interval(poly, -4.0, 4.0)
            assert found == pytest.approx(roots.tolist(), abs=1e-6), f"roots {roots} gave {found}"
            bound = poly.residual_bound(-4.0, 4.0)
            assert all(abs(poly(t)) <= bound for t in found)

    def test_random_quartics_have_no_missed_sign_change(self):
        rng = np.random.default_rng(11)
        grid = np.linspace(0.0, 1.0, 10001)
        for _ in range(50):
            coeffs = rng.uniform(-1.0, 1.0, size=5)
            poly = RealPolynomial(tuple(coeffs.tolist()))
            values = np.polyval(coeffs[::-1], grid)
            changes = np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)
            found = real_roots_in_interval(poly, 0.0, 1.0)
            for index in changes:
                lo, hi = grid[index], grid[index + 1]
                assert any(lo - 1e-6 <= t <= hi + 1e-6 for t in found), f"missed root in [{lo}, {hi}]"


class TestClosedForms:
    """Quadratic and cubic helpers and degree detection"""

    def test_quadratic_without_cancellation(self):
        roots = sorted(z.real for z in solve_quadratic(1.0, -1e8, 1.0))
        assert roots[0] == pytest.approx(1e-8, rel=1e-9)
        assert roots[1] == pytest.approx(1e8, rel=1e-9)

    def test_cubic_three_real_roots(self):
        roots = sorted(z.real for z in solve_cubic(1.0, -6.0, 11.0, -6.0))
        assert roots == pytest.approx([1.0, 2.0, 3.0], abs=1e-9)

    def test_effective_degree_drops_tiny_leading_terms(self):
        assert effective_degree((1.0, 2.0, 1.0, 1e-20, 0.0)) == 2
        assert effective_degree((5.0, 0.0, 0.0)) == 0
