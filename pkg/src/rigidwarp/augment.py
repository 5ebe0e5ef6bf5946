"""Pose-consistent training augmentation by camera rotation and zoom.

Each sample combines an in-plane roll, an off-axis tilt, and a focal
scale into one pixel homography, so the image is resampled exactly once.
Labels ride along: object poses are relabeled exactly for the rotation
parts, and by the stated depth and pitch-yaw scale rules for the zoom
part (those are approximations by construction).
"""

from dataclasses import dataclass, field

import numpy as np

from . import camera as cam_mod
from . import pitchyaw, warp
from .errors import OutOfHemisphereError
from .raster import from_image
from .warp import PYPoseTarget


@dataclass(frozen=True)
class AugConfig:
    scale_range: tuple = (0.7, 1.3)
    roll_range_deg: tuple = (-180.0, 180.0)
    tilt_max_deg: float = 20.0
    seed: int = 0

    def __post_init__(self):
        lo, hi = self.scale_range
        if not (0 < lo <= hi):
            raise ValueError("scale range must be positive and ordered")
        rlo, rhi = self.roll_range_deg
        if rlo > rhi:
            raise ValueError("roll range must be ordered")
        if not (0 <= self.tilt_max_deg < 90):
            raise ValueError("tilt bound must be in [0, 90) degrees")
        if not (0 <= int(self.seed) < 2 ** 64):
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class AugSample:
    f: float
    roll: float
    tilt_alpha: np.ndarray
    H: np.ndarray = field(repr=False)


def rot_z(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def aug_rotation(sample):
    """The 3D rotation a sample applies: tilt after roll."""
    return pitchyaw.exp_py(sample.tilt_alpha) @ rot_z(sample.roll)


def aug_homography(cam, f, roll, tilt_alpha):
    """Pixel homography for scale f, roll, and tilt, in one resample."""
    Kp = np.diag([f, f, 1.0]) @ cam.K
    R = pitchyaw.exp_py(tilt_alpha) @ rot_z(roll)
    return Kp @ R @ np.linalg.inv(cam.K)


def aug_camera(cam, f):
    """Intrinsics of the augmented image (zoomed by f)."""
    return cam_mod.Camera(np.diag([f, f, 1.0]) @ cam.K, cam.width, cam.height)


def sample_aug(cfg, index, cam):
    """Draw the augmentation for one dataset index.

    Deterministic in (cfg.seed, index): the generator is keyed by the
    pair and the draw slots come in a fixed order, so any worker
    partitioning reproduces identical samples.
    """
    rng = np.random.default_rng(np.random.SeedSequence([int(cfg.seed), int(index)]))
    f = rng.uniform(*cfg.scale_range)
    roll = np.deg2rad(rng.uniform(*cfg.roll_range_deg))
    tilt_r = np.deg2rad(rng.uniform(0.0, cfg.tilt_max_deg))
    tilt_d = rng.uniform(0.0, 2.0 * np.pi)
    tilt_alpha = tilt_r * np.array([np.cos(tilt_d), np.sin(tilt_d)])
    return AugSample(
        f=float(f),
        roll=float(roll),
        tilt_alpha=tilt_alpha,
        H=aug_homography(cam, f, roll, tilt_alpha),
    )


def apply_aug_p2(img, R_obj, t_obj, cam, sample):
    """Warp an image by a sample and transport its object pose.

    Rotation parts update the pose exactly; the zoom part divides the
    depth coordinate by f (the stated approximation).  Returns the
    warped raster (carrying the zoomed camera's pixel frame) and the
    new (R, t).
    """
    src = img if hasattr(img, "pixels") else from_image(img, cam)
    out_affine = aug_camera(cam, sample.f).pix2cal()
    warped = warp.homography_warp(
        src, sample.H, (cam.height, cam.width), out_affine
    )
    R2, t2 = cam_mod.relabel_object_pose(R_obj, t_obj, aug_rotation(sample))
    t2[2] /= sample.f
    return warped, R2, t2


def apply_aug_py(tgt, R_obj, sample):
    """Transport a warped-coordinate pose target through a sample.

    Mirrors the homography's factor order: roll turns the angle pair and
    the rotation label exactly; tilt adds its angle pair (translation in
    warped coordinates); zoom scales the pair by f, the range by 1/f,
    and pays for the scaling with an extra rotation relabel.
    """
    c, s = np.cos(sample.roll), np.sin(sample.roll)
    a1 = np.array([c * tgt.alpha[0] - s * tgt.alpha[1],
                   s * tgt.alpha[0] + c * tgt.alpha[1]])
    R1 = rot_z(sample.roll) @ np.asarray(R_obj, float)
    a2 = a1 + sample.tilt_alpha
    R2 = pitchyaw.exp_py(sample.tilt_alpha) @ R1
    a3 = sample.f * a2
    if np.linalg.norm(a3) >= np.pi / 2:
        raise OutOfHemisphereError("augmented target leaves the field of view")
    R3 = pitchyaw.exp_py(a2 * (1.0 - sample.f)) @ R2
    return PYPoseTarget(a3, tgt.s / sample.f), R3
