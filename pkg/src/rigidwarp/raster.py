"""Rasters: pixel arrays tied to a coordinate frame by an affine map.

A pixel at column x, row y sits at coordinate A @ (x, y) + b.  For
camera images those coordinates are calibrated image-plane coordinates;
for warped rasters they are pitch-yaw grid coordinates.  The validity
mask travels with the pixels through every resampling.
"""

from dataclasses import dataclass, field

import numpy as np
from PIL import Image

from . import kernels
from .jsonio import dump_json, load_json


@dataclass
class Raster:
    pixels: np.ndarray = field(repr=False)
    valid: np.ndarray = field(repr=False)
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=float)
        self.valid = np.asarray(self.valid, dtype=bool)
        if self.pixels.shape[:2] != self.valid.shape:
            raise ValueError("pixel and mask shapes disagree")
        self.A = np.asarray(self.A, dtype=float).reshape(2, 2)
        self.b = np.asarray(self.b, dtype=float).reshape(2)
        if abs(np.linalg.det(self.A)) < 1e-300:
            raise ValueError("pixel-to-coordinate map must be invertible")

    @property
    def shape(self):
        return self.valid.shape

    def coords(self):
        """Coordinate of every pixel, shape (H, W, 2)."""
        H, W = self.valid.shape
        xs, ys = np.meshgrid(np.arange(W, dtype=float), np.arange(H, dtype=float))
        pix = np.stack([xs, ys], axis=-1)
        return pix @ self.A.T + self.b

    def pix_from_coords(self, u):
        """Fractional pixel positions (x, y) of coordinate points u."""
        Ai = np.linalg.inv(self.A)
        return (np.asarray(u, dtype=float) - self.b) @ Ai.T

    def grid_spacing(self, rtol=1e-9):
        """Spacing s of an isotropic axis-aligned grid (A = s I), else None."""
        s = self.A[0, 0]
        if s <= 0:
            return None
        if np.max(np.abs(self.A - s * np.eye(2))) > rtol * s:
            return None
        return float(s)


def from_image(pixels, cam, valid=None):
    """Wrap an image array in a raster carrying the camera's pixel frame."""
    pixels = np.asarray(pixels, dtype=float)
    if valid is None:
        valid = np.ones(pixels.shape[:2], dtype=bool)
    A, b = cam.pix2cal()
    return Raster(pixels, valid, A, b)


def shift_int(r, dy, dx):
    """Move raster content by whole pixels, zero-filling; grid unchanged."""
    out = np.zeros_like(r.pixels)
    val = np.zeros_like(r.valid)
    H, W = r.valid.shape
    y0, y1 = max(dy, 0), min(H, H + dy)
    x0, x1 = max(dx, 0), min(W, W + dx)
    if y0 < y1 and x0 < x1:
        out[y0:y1, x0:x1] = r.pixels[y0 - dy:y1 - dy, x0 - dx:x1 - dx]
        val[y0:y1, x0:x1] = r.valid[y0 - dy:y1 - dy, x0 - dx:x1 - dx]
    return Raster(out, val, r.A, r.b)


def shift_bilinear(r, dx, dy):
    """Move raster content by fractional pixels with bilinear resampling."""
    H, W = r.valid.shape
    xs, ys = np.meshgrid(np.arange(W, dtype=float), np.arange(H, dtype=float))
    out, val = kernels.remap_bilinear(r.pixels, r.valid, xs - dx, ys - dy)
    return Raster(out, val, r.A, r.b)


def load_image(path):
    """PNG or similar to float array in [0, 1]; grayscale stays 2-d."""
    img = Image.open(path)
    if img.mode in ("L", "I;16", "I"):
        arr = np.asarray(img.convert("L"), dtype=float) / 255.0
    else:
        arr = np.asarray(img.convert("RGB"), dtype=float) / 255.0
    return arr

def save_image(path, pixels):
    arr = np.asarray(pixels, dtype=float)
    q = np.rint(np.clip(arr, 0.0, 1.0) * 255.0).astype(np.uint8)
    if q.ndim == 2:
        Image.fromarray(q, "L").save(path)
    elif q.ndim == 3 and q.shape[2] == 3:
        Image.fromarray(q, "RGB").save(path)
    elif q.ndim == 3 and q.shape[2] == 1:
        Image.fromarray(q[:, :, 0], "L").save(path)
    else:
        raise ValueError("only 1- or 3-channel images can be saved")


def load_mask(path):
    return np.asarray(Image.open(path).convert("L")) >= 128


def save_mask(path, valid):
    Image.fromarray(np.where(valid, 255, 0).astype(np.uint8), "L").save(path)


def save_sidecar(path, r):
    """Write the pixel-to-coordinate affine next to an exported raster."""
    dump_json({"A": r.A.reshape(-1), "b": r.b}, path)


def load_sidecar(path):
    data = load_json(path)
    return np.asarray(data["A"], float).reshape(2, 2), np.asarray(data["b"], float)
