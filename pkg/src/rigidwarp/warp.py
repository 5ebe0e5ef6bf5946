"""Resampling between the image plane and the pitch-yaw grid.

The forward warp rescales each pixel's radius from the principal point
by tan(r) -> r while keeping its polar angle, i.e. plane coordinates
become arc lengths on the sphere.  Warped rasters live on a regular
grid in these arc coordinates; grid coordinate g corresponds to the
pitch-yaw pair (-g1, g0) (the warp leaves out the quarter-turn that the
strict pitch-yaw convention carries).
"""

from dataclasses import dataclass

import numpy as np

from . import camera as cam_mod
from . import kernels, pitchyaw
from .errors import DegenerateInputError, OutOfHemisphereError
from .raster import Raster, from_image


@dataclass(frozen=True)
class PYPoseTarget:
    """A pose-regression target in warped coordinates: direction + range."""

    alpha: np.ndarray
    s: float

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=float).reshape(2)
        object.__setattr__(self, "alpha", alpha)
        if not np.all(np.isfinite(alpha)) or np.linalg.norm(alpha) >= np.pi / 2:
            raise OutOfHemisphereError("target direction leaves the field of view")
        if not (self.s > 0):
            raise ValueError("target range must be positive")


def grid_from_py(alpha):
    """Warp-grid coordinate of a pitch-yaw pair: (a1, -a0)."""
    alpha = np.asarray(alpha, dtype=float)
    return np.stack([alpha[..., 1], -alpha[..., 0]], axis=-1)


def py_from_grid(g):
    """Inverse of grid_from_py: (-g1, g0)."""
    g = np.asarray(g, dtype=float)
    return np.stack([-g[..., 1], g[..., 0]], axis=-1)


def radial_arctan(u):
    """Plane point to arc coordinates: radius r -> arctan(r), angle kept."""
    u = np.asarray(u, dtype=float)
    m = np.linalg.norm(u, axis=-1)
    return u * pitchyaw._atanc(m)[..., None]


def radial_tan(g):
    """Arc coordinates back to the plane; returns (u, ok) with ok false
    where the arc radius reaches pi/2 (rays orthogonal to the axis)."""
    g = np.asarray(g, dtype=float)
    m = np.linalg.norm(g, axis=-1)
    ok = m < np.pi / 2
    safe = np.where(ok, m, 0.0)
    u = g * pitchyaw._tanc(safe)[..., None]
    u = np.where(ok[..., None], u, np.nan)
    return u, ok


def fit_py_grid(src, out_size):
    """Choose an isotropic arc-coordinate grid covering the warped content.

    The bounding box of the valid region (corners plus edge midpoints,
    pushed through the warp) is centered in the output with a uniform
    scale, so as little of the output as possible is dead space.
    """
    H, W = out_size
    ys, xs = np.nonzero(src.valid)
    if len(xs) == 0:
        raise DegenerateInputError("raster has no valid pixels")
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    mx, my = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    probe = np.array(
        [
            [x0, y0], [x1, y0], [x0, y1], [x1, y1],
            [mx, y0], [mx, y1], [x0, my], [x1, my],
        ]
    )
    cal = probe @ src.A.T + src.b
    g = radial_arctan(cal)
    gmin = g.min(axis=0)
    gmax = g.max(axis=0)
    span = gmax - gmin
    s = max(span[0] / max(W - 1, 1), span[1] / max(H - 1, 1))
    s = max(s, 1e-9)
    center = 0.5 * (gmin + gmax)
    b = center - s * np.array([(W - 1) / 2.0, (H - 1) / 2.0])
    return s * np.eye(2), b


def warp_to_py_grid(src, out_size, A, b):
    """Resample a plane raster onto a given arc-coordinate grid."""
    H, W = out_size
    out = Raster(np.zeros((H, W) + src.pixels.shape[2:]), np.zeros((H, W), bool), A, b)
    g = out.coords()
    u, ok = radial_tan(g)
    u = np.where(ok[..., None], u, 0.0)
    pix = src.pix_from_coords(u)
    xs = np.where(ok, pix[..., 0], -1.0)
    ys = np.where(ok, pix[..., 1], -1.0)
    pixels, valid = kernels.remap_bilinear(src.pixels, src.valid, xs, ys)
    return Raster(pixels, valid, A, b)


def warp_to_py(img, cam, out_size, valid=None):
    """Warp a camera image to arc (pitch-yaw grid) coordinates.

    The output grid is fitted to the valid content; its pixel-to-
    coordinate affine rides along on the returned raster.
    """
    src = img if isinstance(img, Raster) else from_image(img, cam, valid)
    A, b = fit_py_grid(src, out_size)
    return warp_to_py_grid(src, out_size, A, b)


def warp_from_py(img_py, cam, out_size=None):
    """Resample an arc-coordinate raster back onto a camera's pixel grid."""
    if out_size is None:
        out_size = (cam.height, cam.width)
    H, W = out_size
    A, b = cam.pix2cal()
    out = Raster(np.zeros((H, W) + img_py.pixels.shape[2:]), np.zeros((H, W), bool), A, b)
    u = out.coords()
    g = radial_arctan(u)
    pix = img_py.pix_from_coords(g)
    pixels, valid = kernels.remap_bilinear(
        img_py.pixels, img_py.valid, pix[..., 0], pix[..., 1]
    )
    return Raster(pixels, valid, A, b)


def homography_warp(src, Hmat, out_size=None, out_affine=None):
    """Warp a raster by a pixel homography (output pixel p samples the
    source at dehomogenized inv(H) p)."""
    Hmat = np.asarray(Hmat, dtype=float)
    if out_size is None:
        out_size = src.valid.shape
    H, W = out_size
    if out_affine is None:
        out_affine = (src.A, src.b)
    Hi = np.linalg.inv(Hmat)
    xs, ys = np.meshgrid(np.arange(W, dtype=float), np.arange(H, dtype=float))
    w = Hi[2, 0] * xs + Hi[2, 1] * ys + Hi[2, 2]
    ok = np.abs(w) > 1e-12
    wsafe = np.where(ok, w, 1.0)
    qx = (Hi[0, 0] * xs + Hi[0, 1] * ys + Hi[0, 2]) / wsafe
    qy = (Hi[1, 0] * xs + Hi[1, 1] * ys + Hi[1, 2]) / wsafe
    qx = np.where(ok, qx, -1.0)
    qy = np.where(ok, qy, -1.0)
    pixels, valid = kernels.remap_bilinear(src.pixels, src.valid, qx, qy)
    return Raster(pixels, valid, out_affine[0], out_affine[1])


def target_to_py(t, cam=None):
    """Convert a camera-frame target position to warped form (alpha, s).

    alpha is the pitch-yaw pair whose rotated pole looks at t; s = |t|.
    The conversion happens in calibrated coordinates, so cam is accepted
    for call-site symmetry but never affects the result.
    """
    t = np.asarray(t, dtype=float).reshape(3)
    u = cam_mod.project(t)
    return PYPoseTarget(alpha=pitchyaw.from_plane(u), s=float(np.linalg.norm(t)))


def target_from_py(tgt):
    """Inverse of target_to_py."""
    return tgt.s * pitchyaw.apply_to_pole(tgt.alpha)


def pixel_frame(theta):
    """Roll-free rotation aligning the axis with the unit direction theta."""
    return pitchyaw.exp_py(pitchyaw.min_py_log(theta))
