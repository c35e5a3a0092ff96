"""
Geometry tests - Vec3, State and Plane
"""

import math

import numpy as np
import pytest

from polytraj_ccd.core.errors import DegeneratePlaneError, InvalidArgumentError
from polytraj_ccd.core.geometry import Plane, State, Vec3, plane_signed_distance


class TestVec3:
    """Vec3 arithmetic and validation"""

    def test_arithmetic(self):
        a = Vec3(1.0, 2.0, 3.0)
        b = Vec3(-1.0, 0.5, 2.0)
        assert a + b == Vec3(0.0, 2.5, 5.0)
        assert a - b == Vec3(2.0, 1.5, 1.0)
        assert -a == Vec3(-1.0, -2.0, -3.0)
        assert 2.0 * a == a * 2.0 == Vec3(2.0, 4.0, 6.0)
        assert a / 2.0 == Vec3(0.5, 1.0, 1.5)
        assert a.dot(b) == pytest.approx(6.0)
        assert Vec3(3.0, 4.0, 0.0).norm() == pytest.approx(5.0)

    def test_indexing_and_conversion(self):
        v = Vec3.from_iterable(np.array([1.0, -2.0, 3.5]))
        assert list(v) == [1.0, -2.0, 3.5]
        assert v[1] == -2.0
        assert v.as_tuple() == (1.0, -2.0, 3.5)
        np.testing.assert_array_equal(v.to_array(), [1.0, -2.0, 3.5])

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidArgumentError):
            Vec3(math.nan, 0.0, 0.0)
        with pytest.raises(InvalidArgumentError):
            Vec3(0.0, math.inf, 0.0)

    def test_from_iterable_needs_three(self):
        with pytest.raises(InvalidArgumentError):
            Vec3.from_iterable([1.0, 2.0])

    def test_state_at_rest(self):
        state = State.at_rest(Vec3(1.0, 2.0, 3.0))
        assert state.velocity == Vec3.zero()
        assert state.acceleration == Vec3.zero()


class TestPlane:
    """Signed distance to a plane"""

    def test_point_on_plane(self):
        plane = Plane(Vec3(0.0, 0.0, 0.0), Vec3(1.0, 0.0, 0.0))
        assert plane_signed_distance(plane, Vec3(0.0, 0.0, 0.0)) == 0.0

    def test_axis_projection(self):
        plane = Plane(Vec3(0.0, 0.0, 0.0), Vec3(1.0, 0.0, 0.0))
        assert plane_signed_distance(plane, Vec3(2.0, 3.0, -5.0)) == pytest.approx(2.0)

    def test_negative_side(self):
        plane = Plane(Vec3(1.0, 1.0, 0.0), Vec3(0.0, 0.0, 1.0))
        assert plane_signed_distance(plane, Vec3(7.0, -2.0, -3.0)) == pytest.approx(-3.0)

    def test_normal_is_normalized(self):
        plane = Plane(Vec3.zero(), Vec3(0.0, 3.0, 4.0))
        assert plane.normal.norm() == pytest.approx(1.0)
        assert plane.signed_distance(Vec3(0.0, 3.0, 4.0)) == pytest.approx(5.0)

    def test_degenerate_normal(self):
        with pytest.raises(DegeneratePlaneError):
            Plane(Vec3.zero(), Vec3(1e-12, 0.0, 0.0))

    def test_linear_in_query_point(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            plane = Plane(Vec3(*rng.uniform(-3, 3, 3).tolist()), Vec3(*rng.normal(size=3).tolist()))
            q1 = Vec3(*rng.uniform(-5, 5, 3).tolist())
            q2 = Vec3(*rng.uniform(-5, 5, 3).tolist())
            weight = float(rng.uniform(-2.0, 2.0))
            mixed = q1 * weight + q2 * (1.0 - weight)
            expected = weight * plane_signed_distance(plane, q1) + (1.0 - weight) * plane_signed_distance(plane, q2)
            assert plane_signed_distance(plane, mixed) == pytest.approx(expected, abs=1e-9)

    def test_invariant_under_common_translation(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            point = Vec3(*rng.uniform(-3, 3, 3).tolist())
            normal = Vec3(*rng.normal(size=3).tolist())
            q = Vec3(*rng.uniform(-5, 5, 3).tolist())
            offset = Vec3(*rng.uniform(-10, 10, 3).tolist())
            moved = Plane(point + offset, normal)
            assert plane_signed_distance(moved, q + offset) == pytest.approx(
                plane_signed_distance(Plane(point, normal), q), abs=1e-9
            )
