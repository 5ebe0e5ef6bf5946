import numpy as np
import pytest

from rigidwarp import camera


def unit2(rng, n):
    v = rng.standard_normal((n, 2))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def sample_alpha(rng, n, rmax, rmin=0.0):
    return unit2(rng, n) * rng.uniform(rmin, rmax, n)[:, None]


def random_rotation(rng):
    # pitch-yaw times roll reaches all of SO(3)
    from rigidwarp import pitchyaw
    from rigidwarp.augment import rot_z

    a = sample_alpha(rng, 1, 3.0)[0]
    return pitchyaw.exp_py(a) @ rot_z(rng.uniform(-np.pi, np.pi))


@pytest.fixture
def cam():
    K = np.array([[90.0, 0.0, 47.5], [0.0, 90.0, 47.5], [0.0, 0.0, 1.0]])
    return camera.Camera(K, 96, 96)


def smooth_image(cam, freq=3.0):
    H, W = cam.height, cam.width
    ys, xs = np.mgrid[0:H, 0:W].astype(float)
    u = cam.pix_to_cal(np.stack([xs, ys], axis=-1))
    v0 = 0.5 + 0.25 * np.sin(freq * u[..., 0] * 2 * np.pi) * np.cos(
        freq * u[..., 1] * 2 * np.pi)
    v1 = 0.5 + 0.5 * np.clip(u[..., 0], -0.5, 0.5)
    v2 = 0.5 + 0.5 * np.clip(u[..., 1], -0.5, 0.5)
    return np.stack([v0, v1, v2], axis=-1)
