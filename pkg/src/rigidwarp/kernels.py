"""Backend selection for the hot resampling and convolution loops.

The compiled extension is used when importable; setting the environment
variable RIGIDWARP_PURE_PYTHON=1 forces the numpy fallback.  Both
backends are bit-identical by construction, so the choice never changes
results, only speed.
"""

import os

import numpy as np

from . import _kernels_np

if os.environ.get("RIGIDWARP_PURE_PYTHON", "") == "1":
    _impl = _kernels_np
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_cy as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_np
        BACKEND = "numpy"


def _image3(arr):
    a = np.ascontiguousarray(arr, dtype=np.float64)
    if a.ndim == 2:
        a = a[:, :, None]
    if a.ndim != 3:
        raise ValueError("expected an H x W or H x W x C array")
    if a.shape[0] < 2 or a.shape[1] < 2:
        raise ValueError("image must be at least 2 x 2")
    return a


def remap_bilinear(src, src_valid, xs, ys):
    """Bilinear lookup of src at float pixel coords; see _kernels_np."""
    src3 = _image3(src)
    valid = np.ascontiguousarray(src_valid, dtype=np.uint8)
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    out, outv = _impl.remap_bilinear(src3, valid, xs, ys)
    out = np.asarray(out)
    if np.asarray(src).ndim == 2:
        out = out[:, :, 0]
    return out, np.asarray(outv).astype(bool)


def grid_convolve(src, valid, weights, dilation):
    """Dilated stencil convolution with validity erosion; see _kernels_np."""
    src3 = _image3(src)
    validu = np.ascontiguousarray(valid, dtype=np.uint8)
    w = np.ascontiguousarray(weights, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] % 2 == 0:
        raise ValueError("stencil must be square with odd side")
    d = int(dilation)
    if d < 1:
        raise ValueError("dilation must be a positive integer")
    out, outv = _impl.grid_convolve(src3, validu, w, d)
    out = np.asarray(out)
    if np.asarray(src).ndim == 2:
        out = out[:, :, 0]
    return out, np.asarray(outv).astype(bool)
