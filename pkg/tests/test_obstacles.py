"""
Obstacle tests - membership, separating planes, enlargement, moving obstacles
"""

import math

import numpy as np
import pytest

from polytraj_ccd.core.errors import DegenerateNormalError, InvalidArgumentError, PreconditionViolationError
from polytraj_ccd.core.geometry import State, Vec3
from polytraj_ccd.core.obstacles import BoxObstacle, MovingObstacle, SphereObstacle, enlarge, relative_trajectory
from polytraj_ccd.core.trajectory import EndConstraint, QuinticTrajectory, generate

ORIGIN = Vec3(0.0, 0.0, 0.0)


class TestSphere:
    """Sphere membership and separating planes"""

    def setup_method(self):
        self.sphere = SphereObstacle(ORIGIN, 1.0)

    def test_contains_closed(self):
        assert self.sphere.contains(ORIGIN)
        assert self.sphere.contains(Vec3(0.0, 0.0, 1.0)), "boundary belongs to the obstacle"
        assert not self.sphere.contains(Vec3(0.0, 0.0, 1.0 + 1e-9))

    def test_separating_plane(self):
        plane = self.sphere.separating_plane(Vec3(3.0, 0.0, 0.0))
        assert plane.point.as_tuple() == pytest.approx((1.0, 0.0, 0.0))
        assert plane.normal.as_tuple() == pytest.approx((1.0, 0.0, 0.0))

    def test_plane_inside_is_precondition_violation(self):
        with pytest.raises(PreconditionViolationError):
            self.sphere.separating_plane(Vec3(0.5, 0.0, 0.0))

    def test_plane_on_boundary_is_degenerate(self):
        with pytest.raises(DegenerateNormalError):
            self.sphere.separating_plane(Vec3(1.0 + 1e-13, 0.0, 0.0))

    def test_contains_points_matches_contains(self):
        rng = np.random.default_rng(1)
        points = rng.uniform(-1.5, 1.5, size=(500, 3))
        expected = [self.sphere.contains(Vec3(*p)) for p in points.tolist()]
        assert self.sphere.contains_points(points).tolist() == expected

    def test_plane_distance_is_distance_to_surface(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            direction = rng.normal(size=3)
            q = Vec3(*(direction / np.linalg.norm(direction) * rng.uniform(1.01, 4.0)).tolist())
            plane = self.sphere.separating_plane(q)
            assert plane.signed_distance(q) == pytest.approx(abs(q.norm() - 1.0), abs=1e-12)
            assert self.sphere.distance(q) == pytest.approx(plane.signed_distance(q), abs=1e-12)

    def test_distance_inside_is_zero(self):
        assert self.sphere.distance(Vec3(0.2, -0.3, 0.1)) == 0.0

    def test_invalid_radius(self):
        with pytest.raises(InvalidArgumentError):
            SphereObstacle(ORIGIN, 0.0)


class TestBox:
    """Oriented box membership and separating planes"""

    def setup_method(self):
        self.unit = BoxObstacle.axis_aligned(ORIGIN, Vec3(1.0, 1.0, 1.0))

    def test_contains(self):
        box = BoxObstacle.axis_aligned(ORIGIN, Vec3(1.0, 2.0, 3.0))
        assert box.contains(Vec3(1.0, -2.0, 3.0))
        assert not box.contains(Vec3(1.01, 0.0, 0.0))

    def test_face_plane(self):
        plane = self.unit.separating_plane(Vec3(0.5, 3.0, 0.5))
        assert plane.point.as_tuple() == pytest.approx((0.5, 1.0, 0.5))
        assert plane.normal.as_tuple() == pytest.approx((0.0, 1.0, 0.0))

    def test_corner_plane_separates_all_vertices(self):
        plane = self.unit.separating_plane(Vec3(2.0, 2.0, 2.0))
        s = 1.0 / math.sqrt(3.0)
        assert plane.point.as_tuple() == pytest.approx((1.0, 1.0, 1.0))
        assert plane.normal.as_tuple() == pytest.approx((s, s, s))
        for vertex in self.unit.vertices():
            assert plane.signed_distance(vertex) <= 1e-12

    def test_rotated_box(self):
        box = BoxObstacle.from_euler(ORIGIN, Vec3(2.0, 0.1, 0.1), yaw=math.pi / 2.0)
        assert box.contains(Vec3(0.0, 1.9, 0.0)), "long axis is rotated onto y"
        assert not box.contains(Vec3(1.9, 0.0, 0.0))
        plane = box.separating_plane(Vec3(0.0, 0.0, 1.0))
        assert plane.normal.as_tuple() == pytest.approx((0.0, 0.0, 1.0), abs=1e-12)

    def test_rotated_planes_separate_vertices(self):
        box = BoxObstacle.from_euler(Vec3(0.3, -0.2, 0.1), Vec3(0.5, 1.0, 0.25), 0.3, -0.4, 1.1)
        rng = np.random.default_rng(2)
        for q in rng.uniform(-3.0, 3.0, size=(200, 3)).tolist():
            q = Vec3(*q)
            if box.contains(q):
                continue
            plane = box.separating_plane(q)
            assert plane.signed_distance(q) > 0.0
            assert all(plane.signed_distance(v) <= 1e-9 for v in box.vertices())

    def test_contains_points_matches_contains(self):
        box = BoxObstacle.from_euler(ORIGIN, Vec3(0.5, 1.0, 0.25), 0.2, 0.1, -0.7)
        rng = np.random.default_rng(4)
        points = rng.uniform(-1.2, 1.2, size=(500, 3))
        expected = [box.contains(Vec3(*p)) for p in points.tolist()]
        assert box.contains_points(points).tolist() == expected

    def test_distance_matches_separating_plane(self):
        box = BoxObstacle.from_euler(Vec3(0.3, -0.2, 0.1), Vec3(0.5, 1.0, 0.25), 0.3, -0.4, 1.1)
        rng = np.random.default_rng(4)
        for q in rng.uniform(-3.0, 3.0, size=(200, 3)).tolist():
            q = Vec3(*q)
            if box.contains(q):
                assert box.distance(q) == 0.0
                continue
            assert box.distance(q) == pytest.approx(box.separating_plane(q).signed_distance(q), abs=1e-9)

    def test_non_orthonormal_orientation(self):
        axes = (Vec3(1.0, 0.0, 0.0), Vec3(1.0, 1.0, 0.0), Vec3(0.0, 0.0, 1.0))
        with pytest.raises(InvalidArgumentError):
            BoxObstacle(ORIGIN, Vec3(1.0, 1.0, 1.0), axes)


class TestEnlarge:
    """Vehicle-radius enlargement"""

    def test_sphere(self):
        assert enlarge(SphereObstacle(ORIGIN, 0.5), 0.25).radius == pytest.approx(0.75)

    def test_box(self):
        box = enlarge(BoxObstacle.axis_aligned(ORIGIN, Vec3(1.0, 2.0, 3.0)), 0.1)
        assert box.half_extents.as_tuple() == pytest.approx((1.1, 2.1, 3.1))

    def test_zero_is_identity(self):
        sphere = SphereObstacle(ORIGIN, 0.5)
        assert enlarge(sphere, 0.0) is sphere

    def test_negative_radius(self):
        with pytest.raises(InvalidArgumentError):
            enlarge(SphereObstacle(ORIGIN, 0.5), -0.1)

    def test_enlargement_is_monotone(self):
        shapes = [
            SphereObstacle(Vec3(0.2, 0.1, -0.3), 0.6),
            BoxObstacle.from_euler(ORIGIN, Vec3(0.4, 0.8, 0.3), 0.2, 0.5, -0.7),
        ]
        points = np.random.default_rng(5).uniform(-2.0, 2.0, size=(400, 3))
        for shape in shapes:
            previous = shape.contains_points(points)
            for r_q in (0.05, 0.2, 0.5, 1.0):
                grown = enlarge(shape, r_q).contains_points(points)
                assert np.all(grown[previous]), f"enlarging to r_q={r_q} lost points"
                previous = grown

    def test_enlarged_sphere_keeps_distance_offset(self):
        sphere = SphereObstacle(Vec3(1.0, -1.0, 0.5), 0.4)
        grown = enlarge(sphere, 0.3)
        q = Vec3(3.0, 0.0, 0.5)
        assert sphere.distance(q) - grown.distance(q) == pytest.approx(0.3)

    def test_translated(self):
        box = BoxObstacle.axis_aligned(ORIGIN, Vec3(1.0, 1.0, 1.0)).translated(Vec3(5.0, 0.0, 0.0))
        assert box.contains(Vec3(5.5, 0.0, 0.0))
        assert not box.contains(Vec3(0.0, 0.0, 0.0))


class TestMovingObstacle:
    """Moving obstacles and relative trajectories"""

    def setup_method(self):
        rng = np.random.default_rng(9)
        initial = State(Vec3(0.0, 0.0, 1.0), Vec3(*rng.uniform(-2, 2, 3).tolist()), Vec3(*rng.uniform(-2, 2, 3).tolist()))
        self.traj = generate(initial, EndConstraint.rest_at(Vec3(1.0, 2.0, 1.5)), 1.5)
        self.shape = SphereObstacle(ORIGIN, 0.4)

    def test_static_centre_gives_same_trajectory(self):
        moving = MovingObstacle(self.shape, ((0.0,), (0.0,), (0.0,)))
        relative = relative_trajectory(self.traj, moving)
        assert relative.position_coefficients() == self.traj.position_coefficients()

    def test_identical_motion_gives_zero(self):
        moving = MovingObstacle(self.shape, self.traj.position_coefficients())
        relative = relative_trajectory(self.traj, moving)
        for t in np.linspace(0.0, 1.5, 11):
            assert relative.position(t) == ORIGIN

    def test_ballistic_relative_matches_pointwise(self):
        x0, v0 = Vec3(3.0, 0.0, 1.0), Vec3(-5.0, 0.5, 4.0)
        moving = MovingObstacle.ballistic(self.shape, x0, v0)
        relative = relative_trajectory(self.traj, moving)
        g = np.array([0.0, 0.0, -9.81])
        for t in np.linspace(0.0, 1.5, 100):
            projectile = x0.to_array() + v0.to_array() * t + 0.5 * g * t * t
            expected = self.traj.position(t).to_array() - projectile
            np.testing.assert_allclose(relative.position(t).to_array(), expected, rtol=0.0, atol=1e-12)
            np.testing.assert_allclose(moving.center_at(t).to_array(), projectile, rtol=0.0, atol=1e-12)

    def test_shifted(self):
        moving = MovingObstacle.ballistic(self.shape, Vec3(3.0, 0.0, 1.0), Vec3(-5.0, 0.0, 4.0))
        later = moving.shifted(0.7)
        for t in (0.0, 0.3, 1.1):
            np.testing.assert_allclose(
                later.center_at(t).to_array(), moving.center_at(t + 0.7).to_array(), rtol=0.0, atol=1e-12
            )

    def test_degree_limit(self):
        with pytest.raises(InvalidArgumentError):
            MovingObstacle(self.shape, ((0.0,) * 7, (0.0,), (0.0,)))

    def test_shape_must_be_centred(self):
        with pytest.raises(InvalidArgumentError):
            MovingObstacle(SphereObstacle(Vec3(1.0, 0.0, 0.0), 0.4), ((0.0,), (0.0,), (0.0,)))


class TestConvexity:
    """Membership regions are convex"""

    def setup_method(self):
        self.shapes = [
            SphereObstacle(Vec3(0.5, 0.0, -0.2), 1.2),
            BoxObstacle.from_euler(Vec3(-0.1, 0.2, 0.0), Vec3(1.5, 0.3, 0.8), 0.4, -0.2, 0.9),
        ]
        self.rng = np.random.default_rng(6)

    def test_midpoint_of_members_is_member(self):
        for shape in self.shapes:
            points = self.rng.uniform(-2.0, 2.0, size=(2000, 3))
            inside = points[shape.contains_points(points)]
            assert len(inside) > 20
            first, second = inside[: len(inside) // 2], inside[len(inside) // 2 : 2 * (len(inside) // 2)]
            for weight in (0.5, 0.1, 0.9):
                assert np.all(shape.contains_points(weight * first + (1.0 - weight) * second))
