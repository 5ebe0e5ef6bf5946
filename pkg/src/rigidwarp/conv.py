"""Group convolution on arc-coordinate (pitch-yaw) grids.

A kernel carries its own tap spacing in radians; convolving a raster
whose grid spacing divides it applies the stencil with the matching
integer dilation and weights each tap by the grid cell area.  On these
grids an in-frame camera tilt is (approximately) a translation, so this
convolution is the equivariant linear layer for tilts; the report at
the bottom measures that equivariance end to end against the plain
pixel-grid alternative.
"""

from dataclasses import dataclass, field

import numpy as np

from . import camera as cam_mod
from . import distortion, kernels, pitchyaw, warp
from .errors import DegenerateInputError, SpacingMismatchError
from .jsonio import dump_json, load_json
from .raster import Raster, from_image, shift_bilinear


@dataclass(frozen=True)
class PYKernel:
    """Square odd-sized stencil with a physical tap spacing in radians."""

    weights: np.ndarray = field(repr=False)
    spacing: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] % 2 == 0:
            raise ValueError("kernel must be square with odd side")
        if not np.all(np.isfinite(w)):
            raise ValueError("kernel weights must be finite")
        if not (self.spacing > 0):
            raise ValueError("kernel spacing must be positive")
        object.__setattr__(self, "weights", w)


def load_kernel(path):
    data = load_json(path)
    k = int(data["k"])
    w = np.asarray(data["weights"], dtype=float).reshape(k, k)
    return PYKernel(w, float(data["spacing"]))


def save_kernel(G, path):
    dump_json(
        {"k": G.weights.shape[0], "spacing": G.spacing, "weights": G.weights.reshape(-1)},
        path,
    )


def py_convolve(F, G):
    """Convolve a raster with a kernel, Riemann-sum style.

    The raster grid must be isotropic with spacing dividing G.spacing
    (relative tolerance 1e-9); the quotient becomes the tap dilation.
    Output validity is the input mask eroded by the kernel footprint.
    """
    s = F.grid_spacing()
    if s is None:
        raise SpacingMismatchError("convolution needs an isotropic grid")
    ratio = G.spacing / s
    d = int(round(ratio))
    if d < 1 or abs(ratio - d) > 1e-9 * ratio:
        raise SpacingMismatchError(
            "kernel spacing %g is not an integer multiple of grid spacing %g"
            % (G.spacing, s)
        )
    out, outv = kernels.grid_convolve(F.pixels, F.valid, G.weights, d)
    out = out * (G.spacing * G.spacing)
    return Raster(out, outv, F.A, F.b)


@dataclass(frozen=True)
class EquivarianceReport:
    err_py: float
    err_p2: float
    n_py: int
    n_p2: int


def _mean_joint_diff(a, b):
    joint = a.valid & b.valid
    if not joint.any():
        raise DegenerateInputError("no jointly valid pixels to compare")
    diff = np.abs(a.pixels - b.pixels)
    if diff.ndim == 3:
        diff = diff.mean(axis=2)
    return float(diff[joint].mean()), int(joint.sum())


def equivariance_report(img, cam, G, alpha, py_size=None):
    """Tilt-equivariance error of convolution on both grids.

    Convolve-then-shift is compared with warp-then-convolve for a camera
    tilt by alpha: once on a fixed arc-coordinate grid (shift by the
    grid image of alpha) and once on the raw pixel grid (shift by the
    translation matched at the principal point).  Means of absolute
    differences over the jointly valid pixels are returned.
    """
    src = img if isinstance(img, Raster) else from_image(img, cam)
    if py_size is None:
        py_size = src.valid.shape
    Hp, Wp = py_size
    Afit, bfit = warp.fit_py_grid(src, py_size)
    center = bfit + Afit[0, 0] * np.array([(Wp - 1) / 2.0, (Hp - 1) / 2.0])
    A = G.spacing * np.eye(2)
    b = center - G.spacing * np.array([(Wp - 1) / 2.0, (Hp - 1) / 2.0])

    Hmat = cam_mod.rotational_homography(cam, pitchyaw.exp_py(alpha))
    moved = warp.homography_warp(src, Hmat, src.valid.shape)

    base = py_convolve(warp.warp_to_py_grid(src, py_size, A, b), G)
    gshift = warp.grid_from_py(np.asarray(alpha, float)) / G.spacing
    shifted = shift_bilinear(base, gshift[0], gshift[1])
    conv_moved = py_convolve(warp.warp_to_py_grid(moved, py_size, A, b), G)
    err_py, n_py = _mean_joint_diff(conv_moved, shifted)

    base_p = py_convolve(src, G)
    t = distortion.t_of_alpha(np.asarray(alpha, float))
    tpix = np.linalg.solve(src.A, t)
    shifted_p = shift_bilinear(base_p, tpix[0], tpix[1])
    conv_moved_p = py_convolve(moved, G)
    err_p2, n_p2 = _mean_joint_diff(conv_moved_p, shifted_p)

    return EquivarianceReport(err_py, err_p2, n_py, n_p2)
