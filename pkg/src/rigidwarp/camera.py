"""Pinhole cameras, projection, and rotational homographies.

Points live in the camera frame with the optical axis along e2; only
positive-depth points project.  The homographies built here are exactly
the ones that commute with rigid scene motion: K' R K^-1 for a rotation
R of the camera about its center (optionally with new intrinsics K').
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BehindCameraError, DegenerateInputError
from .jsonio import dump_json, load_json


def project(x):
    """Perspective projection (..., 3) -> (..., 2); depth must be positive."""
    x = np.asarray(x, dtype=float)
    if np.any(x[..., 2] <= 0):
        raise BehindCameraError("projection needs positive depth")
    return x[..., :2] / x[..., 2:3]


def unproject(u):
    """Unit direction in the forward hemisphere projecting to u."""
    u = np.asarray(u, dtype=float)
    w = np.concatenate([u, np.ones_like(u[..., :1])], axis=-1)
    return w / np.linalg.norm(w, axis=-1, keepdims=True)


def apply_homography(H, p):
    """Apply a 3x3 homography to inhomogeneous 2-vectors (..., 2)."""
    H = np.asarray(H, dtype=float)
    p = np.asarray(p, dtype=float)
    q = p @ H[:2, :2].T + H[:2, 2]
    w = p @ H[2, :2] + H[2, 2]
    if np.any(np.abs(w) < 1e-12):
        raise DegenerateInputError("homography sends a point to infinity")
    return q / w[..., None]


@dataclass(frozen=True)
class Camera:
    """Intrinsics plus the pixel extent of the sensor."""

    K: np.ndarray = field(repr=False)
    width: int
    height: int

    def __post_init__(self):
        K = np.asarray(self.K, dtype=float).reshape(3, 3)
        if not np.all(np.isfinite(K)):
            raise ValueError("intrinsics must be finite")
        if K[0, 0] <= 0 or K[1, 1] <= 0:
            raise ValueError("focal lengths must be positive")
        if np.any(np.abs(K[2] - (0.0, 0.0, 1.0)) > 1e-12):
            raise ValueError("last intrinsics row must be (0, 0, 1)")
        object.__setattr__(self, "K", K)
        if self.width < 1 or self.height < 1:
            raise ValueError("sensor extent must be positive")

    def cal_to_pix(self, u):
        u = np.asarray(u, dtype=float)
        return u @ self.K[:2, :2].T + self.K[:2, 2]

    def pix_to_cal(self, p):
        A, b = self.pix2cal()
        return np.asarray(p, dtype=float) @ A.T + b

    def pix2cal(self):
        """Affine map (A, b) taking pixel coords to calibrated coords."""
        Ki = np.linalg.inv(self.K)
        return Ki[:2, :2].copy(), Ki[:2, 2].copy()

    def project_pixels(self, x):
        return self.cal_to_pix(project(x))


def rotational_homography(cam, R, cam_out=None):
    """Pixel homography realizing a camera rotation R, K' R K^-1."""
    out = cam if cam_out is None else cam_out
    R = np.asarray(R, dtype=float)
    return out.K @ R @ np.linalg.inv(cam.K)


def relabel_camera_pose(R, c, R_aug):
    """Transport a camera-frame pose annotation through a camera rotation.

    The camera center c is unchanged; the world-to-camera rotation picks
    up the applied rotation on the left.
    """
    return np.asarray(R_aug, float) @ np.asarray(R, float), np.asarray(c, float).copy()


def relabel_object_pose(R, t, R_aug):
    """Transport an object pose (R, t), both expressed in the camera frame."""
    R_aug = np.asarray(R_aug, dtype=float)
    return R_aug @ np.asarray(R, float), R_aug @ np.asarray(t, float)


def load_camera(path):
    data = load_json(path)
    K = np.asarray(data["K"], dtype=float).reshape(3, 3)
    return Camera(K, int(data["width"]), int(data["height"]))


def save_camera(cam, path):
    dump_json(
        {"K": cam.K.reshape(-1), "width": cam.width, "height": cam.height}, path
    )


def load_pose(path):
    """Read a pose file; returns (R, vec, kind) with kind "t" or "c"."""
    data = load_json(path)
    R = np.asarray(data["R"], dtype=float).reshape(3, 3)
    has_t = "t" in data
    has_c = "c" in data
    if has_t == has_c:
        raise ValueError("pose file needs exactly one of 't' or 'c'")
    kind = "t" if has_t else "c"
    vec = np.asarray(data[kind], dtype=float).reshape(3)
    return R, vec, kind


def save_pose(path, R, vec, kind):
    if kind not in ("t", "c"):
        raise ValueError("pose kind must be 't' or 'c'")
    dump_json({"R": np.asarray(R, float).reshape(-1), kind: np.asarray(vec, float)}, path)
