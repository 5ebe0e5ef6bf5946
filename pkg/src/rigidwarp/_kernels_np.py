"""Pure-numpy resampling and convolution kernels.

The compiled backend mirrors these routines operation for operation
(same clamping, same left-to-right accumulation order), so the two give
bit-identical results; keep any edit in lockstep with _kernels_cy.pyx.
"""

import numpy as np


def remap_bilinear(src, src_valid, xs, ys):
    """Sample src at (xs, ys) with bilinear weights.

    Returns (out, out_valid): out is zero where the sample point leaves
    the image, out_valid is the nearest-neighbor lookup of src_valid and
    zero out of bounds.
    """
    H, W, _ = src.shape
    inb = (xs >= 0.0) & (xs <= W - 1.0) & (ys >= 0.0) & (ys <= H - 1.0)
    xsafe = np.where(inb, xs, 0.0)
    ysafe = np.where(inb, ys, 0.0)
    x0 = np.minimum(np.floor(xsafe), W - 2).astype(np.intp)
    y0 = np.minimum(np.floor(ysafe), H - 2).astype(np.intp)
    dx = xsafe - x0
    dy = ysafe - y0
    w00 = (1.0 - dy) * (1.0 - dx)
    w01 = (1.0 - dy) * dx
    w10 = dy * (1.0 - dx)
    w11 = dy * dx
    out = (
        w00[..., None] * src[y0, x0]
        + w01[..., None] * src[y0, x0 + 1]
        + w10[..., None] * src[y0 + 1, x0]
        + w11[..., None] * src[y0 + 1, x0 + 1]
    )
    out[~inb] = 0.0
    xn = np.floor(xsafe + 0.5).astype(np.intp)
    yn = np.floor(ysafe + 0.5).astype(np.intp)
    outv = src_valid[yn, xn].astype(bool) & inb
    return out, outv.astype(np.uint8)


def _shift2d(arr, valid, dy, dx):
    # out[y, x] = arr[y - dy, x - dx], zero-filled; inb tracks source validity
    H, W = valid.shape
    out = np.zeros_like(arr)
    inb = np.zeros((H, W), dtype=bool)
    y0, y1 = max(dy, 0), min(H, H + dy)
    x0, x1 = max(dx, 0), min(W, W + dx)
    if y0 < y1 and x0 < x1:
        out[y0:y1, x0:x1] = arr[y0 - dy:y1 - dy, x0 - dx:x1 - dx]
        inb[y0:y1, x0:x1] = valid[y0 - dy:y1 - dy, x0 - dx:x1 - dx].astype(bool)
    return out, inb


def grid_convolve(src, valid, weights, dilation):
    """True convolution with a dilated odd-sized stencil.

    Invalid or out-of-bounds taps contribute zero to the sum; the output
    validity mask is the erosion of the input mask by the full footprint.
    """
    H, W, _ = src.shape
    k = weights.shape[0]
    half = k // 2
    Fz = src * valid.astype(src.dtype)[:, :, None]
    out = np.zeros_like(src)
    okay = np.ones((H, W), dtype=bool)
    for ti in range(k):
        for tj in range(k):
            dy = dilation * (ti - half)
            dx = dilation * (tj - half)
            shifted, inb = _shift2d(Fz, valid, dy, dx)
            out = out + weights[ti, tj] * shifted
            okay &= inb
    return out, okay.astype(np.uint8)
