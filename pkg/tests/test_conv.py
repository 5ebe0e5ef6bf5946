import numpy as np
import pytest

from rigidwarp import conv, raster
from rigidwarp.errors import DegenerateInputError, SpacingMismatchError

from conftest import smooth_image


def arc_raster(rng, n=48, spacing=0.01, channels=2):
    px = rng.uniform(0, 1, (n, n, channels))
    valid = np.ones((n, n), bool)
    A = spacing * np.eye(2)
    b = -spacing * (n - 1) / 2.0 * np.ones(2)
    return raster.Raster(px, valid, A, b)


def test_kernel_validation():
    with pytest.raises(ValueError):
        conv.PYKernel(np.ones((2, 2)), 0.01)
    with pytest.raises(ValueError):
        conv.PYKernel(np.ones((3, 5)), 0.01)
    with pytest.raises(ValueError):
        conv.PYKernel(np.full((3, 3), np.nan), 0.01)
    with pytest.raises(ValueError):
        conv.PYKernel(np.ones((3, 3)), 0.0)


def test_kernel_json_roundtrip(tmp_path):
    rng = np.random.default_rng(51)
    G = conv.PYKernel(rng.standard_normal((5, 5)), 0.03)
    p = tmp_path / "k.json"
    conv.save_kernel(G, p)
    G2 = conv.load_kernel(p)
    assert np.array_equal(G.weights, G2.weights)
    assert G.spacing == G2.spacing


def test_impulse_sifting_is_exact():
    rng = np.random.default_rng(52)
    F = arc_raster(rng)
    w = np.zeros((5, 5))
    w[2, 2] = 1.0
    out = conv.py_convolve(F, conv.PYKernel(w, 0.01))
    want = F.pixels * 0.01 ** 2
    assert np.array_equal(out.pixels[out.valid], want[out.valid])
    assert out.valid.sum() > 0


def test_uniform_kernel_center_value():
    # all-ones 3x3 at matching spacing sums the 8-neighborhood
    F = arc_raster(np.random.default_rng(53), n=9, spacing=0.01, channels=1)
    G = conv.PYKernel(np.ones((3, 3)), 0.01)
    out = conv.py_convolve(F, G)
    i = 4
    want = F.pixels[i - 1:i + 2, i - 1:i + 2, 0].sum() * 0.01 ** 2
    assert out.pixels[i, i, 0] == pytest.approx(want, rel=1e-15)


def test_spacing_quotient_sets_dilation():
    # kernel spacing 0.03 on a 0.01 grid taps every third pixel
    rng = np.random.default_rng(54)
    F = arc_raster(rng, n=15, spacing=0.01, channels=1)
    w = np.zeros((3, 3))
    w[0, 1] = 1.0  # top-row tap; convolution flips it to row offset +1
    out = conv.py_convolve(F, conv.PYKernel(w, 0.03))
    i = 7
    assert out.valid[i, i]
    want = F.pixels[i + 3, i, 0] * 0.03 ** 2
    assert out.pixels[i, i, 0] == pytest.approx(want, rel=1e-15)


def test_shift_equivariance_bit_exact():
    rng = np.random.default_rng(55)
    F = arc_raster(rng)
    G = conv.PYKernel(rng.standard_normal((5, 5)), 0.02)
    a = conv.py_convolve(raster.shift_int(F, 2, -3), G)
    b = raster.shift_int(conv.py_convolve(F, G), 2, -3)
    joint = a.valid & b.valid
    assert joint.any()
    assert np.array_equal(a.pixels[joint], b.pixels[joint])


def test_linearity():
    rng = np.random.default_rng(56)
    F1 = arc_raster(rng)
    F2 = raster.Raster(rng.uniform(0, 1, F1.pixels.shape), F1.valid,
                       F1.A, F1.b)
    G = conv.PYKernel(rng.standard_normal((3, 3)), 0.01)
    mixed = raster.Raster(2.0 * F1.pixels + 3.0 * F2.pixels, F1.valid,
                          F1.A, F1.b)
    lhs = conv.py_convolve(mixed, G)
    a = conv.py_convolve(F1, G)
    b = conv.py_convolve(F2, G)
    diff = lhs.pixels - (2.0 * a.pixels + 3.0 * b.pixels)
    assert np.max(np.abs(diff[lhs.valid])) < 1e-12


def test_kernel_commutativity():
    # two stencils at the same spacing commute on the interior
    rng = np.random.default_rng(57)
    F = arc_raster(rng, n=32)
    G1 = conv.PYKernel(rng.standard_normal((3, 3)), 0.01)
    G2 = conv.PYKernel(rng.standard_normal((3, 3)), 0.01)
    a = conv.py_convolve(conv.py_convolve(F, G1), G2)
    b = conv.py_convolve(conv.py_convolve(F, G2), G1)
    joint = a.valid & b.valid
    assert joint.any()
    assert np.max(np.abs(a.pixels[joint] - b.pixels[joint])) < 1e-12


def test_validity_erodes_by_footprint():
    rng = np.random.default_rng(58)
    F = arc_raster(rng, n=16)
    G = conv.PYKernel(np.ones((3, 3)), 0.01)
    out = conv.py_convolve(F, G)
    assert not out.valid[0].any() and not out.valid[-1].any()
    assert out.valid[1:-1, 1:-1].all()
    hole = F.valid.copy()
    hole[8, 8] = False
    out2 = conv.py_convolve(raster.Raster(F.pixels, hole, F.A, F.b), G)
    assert not out2.valid[7:10, 7:10].any()
    assert out2.valid[5, 5]


def test_spacing_mismatch_rejected():
    rng = np.random.default_rng(59)
    F = arc_raster(rng)
    with pytest.raises(SpacingMismatchError):
        conv.py_convolve(F, conv.PYKernel(np.ones((3, 3)), 0.015))
    with pytest.raises(SpacingMismatchError):
        conv.py_convolve(F, conv.PYKernel(np.ones((3, 3)), 0.005))
    aniso = raster.Raster(F.pixels, F.valid,
                          np.diag([0.01, 0.02]), F.b)
    with pytest.raises(SpacingMismatchError):
        conv.py_convolve(aniso, conv.PYKernel(np.ones((3, 3)), 0.02))


def test_equivariance_identity_tilt(cam):
    img = smooth_image(cam)
    G = conv.PYKernel(np.ones((3, 3)) / 9.0, 3.0 / cam.K[0, 0])
    rep = conv.equivariance_report(img, cam, G, np.zeros(2), py_size=(96, 96))
    assert rep.err_py == 0.0
    assert rep.err_p2 == 0.0


def test_equivariance_favors_arc_grid(cam):
    img = smooth_image(cam)
    G = conv.PYKernel(np.ones((3, 3)) / 9.0, 3.0 / cam.K[0, 0])
    alpha = np.array([0.2, 0.0])
    rep = conv.equivariance_report(img, cam, G, alpha, py_size=(96, 96))
    assert rep.n_py > 300 and rep.n_p2 > 300
    assert rep.err_py < rep.err_p2


def test_empty_joint_mask_raises():
    rng = np.random.default_rng(60)
    F = arc_raster(rng, n=8)
    none = raster.Raster(F.pixels, np.zeros_like(F.valid), F.A, F.b)
    with pytest.raises(DegenerateInputError):
        conv._mean_joint_diff(none, none)
