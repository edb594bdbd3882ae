import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfcam import camera
from pfcam.camera import CameraRig, Intrinsics, ParameterError

from helpers import sample_cone_directions

# Focal lengths frozen from the closed form f = (h/2)(xi + cos(vfov/2))/sin(vfov/2)
# evaluated independently at high precision.
FOCAL_CASES = [
    (90.0, 0.0, 1024, 512.0),
    (90.0, 1.0, 1024, 1236.0773439350248),
    (140.0, 0.0, 1024, 186.35275994429568),
    (140.0, 1.0, 1024, 731.2117794519628),
    (60.0, 0.5, 1024, 1398.8100134752656),
]


class TestIntrinsics:
    @pytest.mark.parametrize("vfov,xi,height,expected", FOCAL_CASES)
    def test_focal_from_vfov(self, vfov, xi, height, expected):
        intr = camera.intrinsics_from_rig(CameraRig(vfov=vfov, xi=xi, width=height, height=height))
        assert intr.f == pytest.approx(expected, rel=1e-12)

    def test_principal_point_is_raster_center(self):
        intr = camera.intrinsics_from_rig(CameraRig(width=1024, height=768))
        assert intr.u0 == 511.5
        assert intr.v0 == 383.5

    def test_boundary_ray_lands_on_vertical_edge(self):
        # The ray at vfov/2 below the axis must project exactly h/2 from the
        # principal point, for every distortion value.
        for vfov in np.linspace(15.0, 140.0, 10):
            for xi in np.linspace(0.0, 1.0, 11):
                rig = CameraRig(vfov=vfov, xi=xi, width=640, height=480)
                intr = camera.intrinsics_from_rig(rig)
                half = math.radians(vfov / 2.0)
                ray = np.array([0.0, math.sin(half), math.cos(half)])
                uv, valid = camera.project(ray, intr)
                assert valid
                assert abs(uv[1] - intr.v0 - 240.0) < 1e-6
                assert abs(uv[0] - intr.u0) < 1e-9


class TestProject:
    def test_optical_axis_hits_principal_point(self):
        intr = camera.intrinsics_from_rig(CameraRig(width=1024, height=1024))
        uv, valid = camera.project(np.array([0.0, 0.0, 1.0]), intr)
        assert valid
        np.testing.assert_allclose(uv, [511.5, 511.5], atol=1e-12)

    def test_pinhole_45deg_ray(self):
        intr = Intrinsics(f=512.0, u0=511.5, v0=511.5, xi=0.0)
        uv, valid = camera.project(np.array([1.0, 0.0, 1.0]), intr)
        assert valid
        np.testing.assert_allclose(uv, [1023.5, 511.5], atol=1e-9)

    def test_distorted_45deg_ray(self):
        # Frozen: u = 500/(sqrt(2)+1) + 511.5 with xi=1, f=500.
        intr = Intrinsics(f=500.0, u0=511.5, v0=511.5, xi=1.0)
        uv, valid = camera.project(np.array([1.0, 0.0, 1.0]), intr)
        assert valid
        np.testing.assert_allclose(uv, [718.6067811865476, 511.5], atol=1e-9)

    def test_scale_invariance(self):
        intr = Intrinsics(f=700.0, u0=400.0, v0=300.0, xi=0.6)
        p = np.array([0.3, -0.2, 0.9])
        uv1, _ = camera.project(p, intr)
        uv2, _ = camera.project(p * 3.7, intr)
        np.testing.assert_allclose(uv1, uv2, atol=1e-10)

    def test_behind_camera_flagged(self):
        pinhole = Intrinsics(f=512.0, u0=511.5, v0=511.5, xi=0.0)
        uv, valid = camera.project(np.array([0.0, 0.0, -1.0]), pinhole)
        assert not valid
        assert np.isnan(uv).all()
        # With xi=1 the valid cone opens to the full sphere minus the back pole.
        wide = Intrinsics(f=512.0, u0=511.5, v0=511.5, xi=1.0)
        _, valid = camera.project(np.array([1.0, 0.0, -0.2]), wide)
        assert valid

    def test_batched_points_mixed_validity(self):
        intr = Intrinsics(f=512.0, u0=511.5, v0=511.5, xi=0.0)
        pts = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [1.0, 0.0, 1.0]])
        uv, valid = camera.project(pts, intr)
        assert uv.shape == (3, 2)
        np.testing.assert_array_equal(valid, [True, False, True])
        assert np.isnan(uv[1]).all()
        assert np.isfinite(uv[[0, 2]]).all()


class TestUnproject:
    def test_center_pixel_is_optical_axis(self):
        intr = camera.intrinsics_from_rig(CameraRig(width=1024, height=1024))
        d = camera.unproject(np.array([511.5, 511.5]), intr)
        np.testing.assert_allclose(d, [0.0, 0.0, 1.0], atol=1e-12)

    def test_inverts_distorted_projection(self):
        intr = Intrinsics(f=500.0, u0=511.5, v0=511.5, xi=1.0)
        d = camera.unproject(np.array([718.6067811865476, 511.5]), intr)
        np.testing.assert_allclose(d, [math.sqrt(0.5), 0.0, math.sqrt(0.5)], atol=1e-9)

    def test_unit_norm(self):
        rng = np.random.default_rng(3)
        intr = Intrinsics(f=400.0, u0=511.5, v0=511.5, xi=0.85)
        px = rng.uniform(0.0, 1023.0, size=(500, 2))
        d = camera.unproject(px, intr)
        np.testing.assert_allclose(np.linalg.norm(d, axis=-1), 1.0, atol=1e-12)

    def test_pinhole_reduction(self):
        # xi = 0 must match the plain perspective divide to machine precision.
        rng = np.random.default_rng(4)
        intr = Intrinsics(f=512.0, u0=511.5, v0=383.5, xi=0.0)
        dirs = sample_cone_directions(0.0, 2000, rng)
        uv, valid = camera.project(dirs, intr)
        assert valid.all()
        ref_u = dirs[:, 0] / dirs[:, 2] * intr.f + intr.u0
        ref_v = dirs[:, 1] / dirs[:, 2] * intr.f + intr.v0
        np.testing.assert_allclose(uv[:, 0], ref_u, rtol=1e-12, atol=1e-9)
        np.testing.assert_allclose(uv[:, 1], ref_v, rtol=1e-12, atol=1e-9)

    @pytest.mark.parametrize("xi", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_round_trip_through_projection(self, xi):
        rng = np.random.default_rng(int(xi * 4) + 10)
        intr = Intrinsics(f=600.0, u0=511.5, v0=511.5, xi=xi)
        dirs = sample_cone_directions(xi, 2000, rng)
        uv, valid = camera.project(dirs, intr)
        assert valid.all()
        back = camera.unproject(uv, intr)
        dot = np.clip(np.sum(dirs * back, axis=-1), -1.0, 1.0)
        assert np.arccos(dot).max() < 1e-6

    @given(
        u=st.floats(0.0, 1023.0),
        v=st.floats(0.0, 1023.0),
        xi=st.floats(0.0, 1.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_project_inverts_unproject(self, u, v, xi):
        intr = Intrinsics(f=512.0, u0=511.5, v0=511.5, xi=xi)
        d = camera.unproject(np.array([u, v]), intr)
        uv, valid = camera.project(d, intr)
        assert valid
        np.testing.assert_allclose(uv, [u, v], atol=1e-6)


class TestRotation:
    def test_identity_rig(self):
        np.testing.assert_allclose(camera.rig_rotation(CameraRig()), np.eye(3), atol=1e-15)

    def test_pitch_lifts_forward_axis(self):
        r = camera.rig_rotation(CameraRig(pitch=30.0))
        np.testing.assert_allclose(r @ [0.0, 0.0, 1.0], [0.0, -0.5, math.sqrt(3) / 2], atol=1e-12)

    def test_yaw_pans_toward_positive_x(self):
        r = camera.rig_rotation(CameraRig(yaw=90.0))
        np.testing.assert_allclose(r @ [0.0, 0.0, 1.0], [1.0, 0.0, 0.0], atol=1e-12)

    def test_roll_spins_about_forward_axis(self):
        r = camera.rig_rotation(CameraRig(roll=89.0))
        np.testing.assert_allclose(r @ [0.0, 0.0, 1.0], [0.0, 0.0, 1.0], atol=1e-12)
        # World up, seen in camera coordinates, tilts by the roll angle.
        up_cam = r.T @ camera.WORLD_UP
        t = math.radians(89.0)
        np.testing.assert_allclose(up_cam, [math.sin(t), -math.cos(t), 0.0], atol=1e-12)

    @given(
        roll=st.floats(-89.9, 89.9),
        pitch=st.floats(-89.9, 89.9),
        yaw=st.floats(0.0, 359.9),
    )
    @settings(max_examples=80, deadline=None)
    def test_orthonormal(self, roll, pitch, yaw):
        r = camera.rig_rotation(CameraRig(roll=roll, pitch=pitch, yaw=yaw))
        np.testing.assert_allclose(r @ r.T, np.eye(3), atol=1e-12)
        assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-12)


class TestRigValidation:
    @pytest.mark.parametrize(
        "kwargs,param",
        [
            ({"roll": 90.0}, "roll"),
            ({"roll": -90.0}, "roll"),
            ({"pitch": 90.0}, "pitch"),
            ({"vfov": 14.999}, "vfov"),
            ({"vfov": 140.001}, "vfov"),
            ({"xi": -0.01}, "xi"),
            ({"xi": 1.01}, "xi"),
            ({"yaw": 360.0}, "yaw"),
            ({"yaw": -0.1}, "yaw"),
            ({"width": 1}, "width"),
            ({"height": 0}, "height"),
        ],
    )
    def test_out_of_range_rejected(self, kwargs, param):
        with pytest.raises(ParameterError) as err:
            CameraRig(**kwargs)
        assert err.value.param == param
        assert param in str(err.value)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"roll": 89.999},
            {"pitch": -89.999},
            {"vfov": 15.0},
            {"vfov": 140.0},
            {"xi": 0.0},
            {"xi": 1.0},
            {"yaw": 0.0},
            {"yaw": 359.999},
            {"width": 2, "height": 2},
        ],
    )
    def test_boundary_values_accepted(self, kwargs):
        CameraRig(**kwargs)

    def test_error_reports_value_and_range(self):
        with pytest.raises(ParameterError) as err:
            CameraRig(vfov=200.0)
        msg = str(err.value)
        assert "200" in msg and "15" in msg and "140" in msg

    def test_non_numeric_rejected(self):
        with pytest.raises((TypeError, ValueError)):
            CameraRig(vfov="wide")
