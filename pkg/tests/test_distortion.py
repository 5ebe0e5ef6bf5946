import numpy as np
import pytest

from rigidwarp import distortion, pitchyaw

from conftest import sample_alpha, unit2


def test_actions_return_unit_directions():
    rng = np.random.default_rng(41)
    alpha = np.array([0.3, -0.2])
    beta = sample_alpha(rng, 200, 1.2)
    theta = pitchyaw.apply_to_pole(beta)
    for act in (distortion.psi, distortion.phi_act):
        out = act(alpha, theta)
        assert np.max(np.abs(np.linalg.norm(out, axis=-1) - 1)) < 1e-12
    # translation action needs forward inputs
    front = theta[theta[:, 2] > 0.1]
    out = distortion.chi_act(alpha, front)
    assert np.max(np.abs(np.linalg.norm(out, axis=-1) - 1)) < 1e-12


def test_shift_action_is_additive():
    rng = np.random.default_rng(42)
    for _ in range(100):
        a1 = sample_alpha(rng, 1, 0.8)[0]
        a2 = sample_alpha(rng, 1, 0.8)[0]
        beta = sample_alpha(rng, 1, 0.8)[0]
        theta = pitchyaw.apply_to_pole(beta)
        once = distortion.phi_act(a1 + a2, theta)
        twice = distortion.phi_act(a2, distortion.phi_act(a1, theta))
        assert np.linalg.norm(once - twice) < 1e-10


def test_shift_equals_rotation_on_aligned_circle():
    # when the lifted angle pair of theta is parallel to alpha, the shift
    # action agrees with the exact rotation
    rng = np.random.default_rng(43)
    for _ in range(100):
        a = unit2(rng, 1)[0] * rng.uniform(0.1, 1.2)
        c = rng.uniform(-1.0, 1.0)
        theta = pitchyaw.apply_to_pole(c * a)
        err = np.linalg.norm(
            distortion.phi_act(a, theta) - distortion.psi(a, theta))
        assert err < 1e-12


def test_translation_equals_rotation_at_back_target():
    # chi matches the rotation exactly at the direction whose image is -t
    rng = np.random.default_rng(44)
    for _ in range(100):
        a = unit2(rng, 1)[0] * rng.uniform(0.1, 1.2)
        t = distortion.t_of_alpha(a)
        theta = pitchyaw.from_plane(-t)
        theta = pitchyaw.apply_to_pole(theta)
        err = np.linalg.norm(
            distortion.chi_act(a, theta) - distortion.psi(a, theta))
        assert err < 1e-12


def test_t_of_alpha_values():
    assert np.allclose(distortion.t_of_alpha(np.array([0.0, np.pi / 4])),
                       [1.0, 0.0], atol=1e-12)
    assert np.allclose(distortion.t_of_alpha(np.array([np.pi / 4, 0.0])),
                       [0.0, -1.0], atol=1e-12)
    assert np.allclose(distortion.t_linear(np.array([0.3, 0.1])),
                       [0.1, -0.3], atol=1e-15)


def test_error_field_zero_alpha():
    f = distortion.error_field(np.zeros(2), "py", n=41)
    assert np.nanmax(f.err) < 1e-12
    g = distortion.error_field(np.zeros(2), "translation", n=41)
    assert np.nanmax(g.err[g.valid]) < 1e-12


def test_error_field_marks_invalid():
    f = distortion.error_field(np.array([0.2, 0.0]), "translation",
                               n=81, window=2.0)
    # window 2.0 > pi/2 puts grid corners behind the camera
    assert (~f.valid).any()
    assert np.isnan(f.err[~f.valid]).all()
    assert np.isfinite(f.err[f.valid]).all()


def test_fov_ratio_favors_shift_action():
    for r in (np.pi / 9, np.pi / 6):
        alpha = np.array([r / np.sqrt(2), r / np.sqrt(2)])
        ratio, mean_py, mean_tr = distortion.fov_error_ratio(alpha, n=101)
        assert mean_py < mean_tr
        assert ratio < 0.8


def test_taylor_third_order():
    rng = np.random.default_rng(45)
    for prop in ("p10", "p12", "p14", "eq9"):
        for _ in range(3):
            if prop == "p10":
                d = (unit2(rng, 1)[0], unit2(rng, 1)[0])
            elif prop == "p12":
                d = (unit2(rng, 1)[0], unit2(rng, 1)[0])
            elif prop == "p14":
                d = (unit2(rng, 1)[0], float(rng.uniform(0.2, 1.0)))
            else:
                d = unit2(rng, 1)[0]
            fit = distortion.taylor_order_check(prop, d)
            assert not fit.exact
            assert 2.7 < fit.slope < 3.5


def test_taylor_reports_exact_on_aligned_pair():
    a = np.array([1.0, 0.0])
    fit = distortion.taylor_order_check("p10", (a, a))
    assert fit.exact
    assert fit.slope is None
    assert fit.residuals[0] < 1e-13


def test_taylor_rejects_unknown_tag():
    with pytest.raises(ValueError):
        distortion.taylor_order_check("p99", np.array([1.0, 0.0]))
