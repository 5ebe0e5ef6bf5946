import numpy as np
import pytest

from rigidwarp import pitchyaw, raster, warp
from rigidwarp.camera import rotational_homography
from rigidwarp.errors import GeometryDomainError, OutOfHemisphereError

from conftest import sample_alpha, smooth_image


def test_grid_convention_roundtrip():
    rng = np.random.default_rng(31)
    a = sample_alpha(rng, 500, 3.0)
    assert np.allclose(warp.py_from_grid(warp.grid_from_py(a)), a)
    g = rng.standard_normal((500, 2))
    assert np.allclose(warp.grid_from_py(warp.py_from_grid(g)), g)


def test_radial_maps_invert():
    rng = np.random.default_rng(32)
    u = rng.standard_normal((1000, 2)) * 2.0
    g = warp.radial_arctan(u)
    assert np.max(np.linalg.norm(g, axis=-1)) < np.pi / 2
    back, ok = warp.radial_tan(g)
    assert ok.all()
    assert np.max(np.linalg.norm(back - u, axis=-1)) < 1e-9


def test_radial_tan_unit_radius():
    # arc radius 1 lands at plane radius tan(1); quarter-circle arc radius
    # pi/4 lands at plane radius 1
    u, ok = warp.radial_tan(np.array([np.pi / 4, 0.0]))
    assert ok
    assert np.allclose(u, [1.0, 0.0], atol=1e-12)
    u2, ok2 = warp.radial_tan(np.array([0.0, 1.0]))
    assert ok2
    assert np.allclose(u2, [0.0, np.tan(1.0)], atol=1e-12)
    _, bad = warp.radial_tan(np.array([np.pi / 2, 0.0]))
    assert not bad


def test_target_roundtrip_small():
    rng = np.random.default_rng(33)
    t = rng.standard_normal((200, 3))
    t[:, 2] = np.abs(t[:, 2]) + 0.2  # in front of the camera
    for row in t:
        tgt = warp.target_to_py(row)
        assert tgt.s == pytest.approx(np.linalg.norm(row), rel=1e-12)
        back = warp.target_from_py(tgt)
        assert np.linalg.norm(back - row) < 1e-10


def test_target_hand_values():
    tgt = warp.target_to_py([0.0, 0.0, 3.0])
    assert np.allclose(tgt.alpha, 0.0) and tgt.s == pytest.approx(3.0)
    # a target on the first image axis tilts about the second component
    tgt = warp.target_to_py([1.0, 0.0, 1.0])
    assert np.allclose(tgt.alpha, [0.0, np.pi / 4], atol=1e-12)
    assert tgt.s == pytest.approx(np.sqrt(2.0))


def test_target_requires_front_hemisphere():
    with pytest.raises(OutOfHemisphereError):
        warp.PYPoseTarget(np.array([np.pi / 2, 0.0]), 1.0)
    with pytest.raises(ValueError):
        warp.PYPoseTarget(np.array([0.1, 0.0]), 0.0)
    with pytest.raises(GeometryDomainError):
        warp.target_to_py([1.0, 0.0, 0.0])


def test_warp_roundtrip_interior(cam):
    img = smooth_image(cam)
    src = raster.from_image(img, cam)
    py = warp.warp_to_py(img, cam, (128, 128))
    back = warp.warp_from_py(py, cam)
    both = back.valid & src.valid
    # trim one pixel so interpolation onto partial neighborhoods is excluded
    both[:1] = both[-1:] = False
    both[:, :1] = both[:, -1:] = False
    assert both.mean() > 0.8
    mae = np.mean(np.abs(back.pixels[both] - src.pixels[both]))
    assert mae < 0.01


def test_warp_mask_transport(cam):
    img = smooth_image(cam)
    hole = np.ones(img.shape[:2], dtype=bool)
    hole[30:40, 50:60] = False
    py = warp.warp_to_py(img, cam, (160, 160), valid=hole)
    # the hole must survive into the arc raster, surrounded by valid pixels
    assert py.valid.any()
    assert (~py.valid).sum() > (~hole).sum() // 4
    # the hole center lands on masked-out arc pixels
    u = np.linalg.solve(cam.K, [55.0, 35.0, 1.0])[:2]
    g = warp.radial_arctan(u)
    ij = np.rint(np.linalg.solve(py.A, g - py.b)).astype(int)
    assert not py.valid[ij[1], ij[0]]


def test_fit_py_grid_centers_valid_region(cam):
    img = smooth_image(cam)
    src = raster.from_image(img, cam)
    A, b = warp.fit_py_grid(src, (101, 101))
    assert A[0, 1] == 0 and A[1, 0] == 0
    assert A[0, 0] == pytest.approx(A[1, 1])
    # center pixel of the grid maps near the optical axis of this camera
    center = A @ np.array([50.0, 50.0]) + b
    assert np.linalg.norm(center) < 2 * A[0, 0]


def test_homography_warp_identity_is_exact(cam):
    img = smooth_image(cam)
    src = raster.from_image(img, cam)
    out = warp.homography_warp(src, np.eye(3))
    assert np.array_equal(out.pixels[1:-1, 1:-1], src.pixels[1:-1, 1:-1])
    assert out.valid[1:-1, 1:-1].all()


def test_homography_warp_matches_rotation_oracle(cam):
    rng = np.random.default_rng(34)
    img = smooth_image(cam)
    src = raster.from_image(img, cam)
    alpha = np.array([0.05, -0.03])
    R = pitchyaw.exp_py(alpha)
    H = rotational_homography(cam, R)
    out = warp.homography_warp(src, H)
    # warp by H then by H^-1 reproduces the interior
    back = warp.homography_warp(out, np.linalg.inv(H))
    both = back.valid & src.valid
    both[:2] = both[-2:] = False
    both[:, :2] = both[:, -2:] = False
    mae = np.mean(np.abs(back.pixels[both] - src.pixels[both]))
    assert mae < 0.01
    del rng


def test_pixel_frame_is_rotation():
    rng = np.random.default_rng(35)
    for a in sample_alpha(rng, 50, 3.0):
        theta = pitchyaw.apply_to_pole(a)
        F = warp.pixel_frame(theta)
        assert np.allclose(F @ F.T, np.eye(3), atol=1e-12)
        # the frame takes the pole to the given direction
        assert np.allclose(F @ [0, 0, 1], theta, atol=1e-12)
