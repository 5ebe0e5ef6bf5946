# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled resampling and convolution kernels.

Mirrors _kernels_np.py operation for operation; the two backends must
stay bit-identical (same clamping, same left-to-right accumulation, no
fp contraction), so keep any edit in lockstep.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()


def remap_bilinear(double[:, :, ::1] src, unsigned char[:, ::1] src_valid,
                   double[:, ::1] xs, double[:, ::1] ys):
    cdef Py_ssize_t H = src.shape[0], W = src.shape[1], C = src.shape[2]
    cdef Py_ssize_t Ho = xs.shape[0], Wo = xs.shape[1]
    out = np.zeros((Ho, Wo, C), dtype=np.float64)
    outv = np.zeros((Ho, Wo), dtype=np.uint8)
    cdef double[:, :, ::1] o = out
    cdef unsigned char[:, ::1] ov = outv
    cdef Py_ssize_t i, j, c, x0, y0
    cdef double x, y, dx, dy, w00, w01, w10, w11
    with nogil:
        for i in range(Ho):
            for j in range(Wo):
                x = xs[i, j]
                y = ys[i, j]
                if not (x >= 0.0 and x <= W - 1.0 and y >= 0.0 and y <= H - 1.0):
                    continue
                x0 = <Py_ssize_t>floor(x)
                if x0 > W - 2:
                    x0 = W - 2
                y0 = <Py_ssize_t>floor(y)
                if y0 > H - 2:
                    y0 = H - 2
                dx = x - x0
                dy = y - y0
                w00 = (1.0 - dy) * (1.0 - dx)
                w01 = (1.0 - dy) * dx
                w10 = dy * (1.0 - dx)
                w11 = dy * dx
                for c in range(C):
                    o[i, j, c] = (w00 * src[y0, x0, c] + w01 * src[y0, x0 + 1, c]
                                  + w10 * src[y0 + 1, x0, c] + w11 * src[y0 + 1, x0 + 1, c])
                ov[i, j] = src_valid[<Py_ssize_t>floor(y + 0.5), <Py_ssize_t>floor(x + 0.5)]
    return out, outv


def grid_convolve(double[:, :, ::1] src, unsigned char[:, ::1] valid,
                  double[:, ::1] weights, Py_ssize_t dilation):
    cdef Py_ssize_t H = src.shape[0], W = src.shape[1], C = src.shape[2]
    cdef Py_ssize_t k = weights.shape[0], half = weights.shape[0] // 2
    out = np.zeros((H, W, C), dtype=np.float64)
    outv = np.zeros((H, W), dtype=np.uint8)
    cdef double[:, :, ::1] o = out
    cdef unsigned char[:, ::1] ov = outv
    cdef Py_ssize_t i, j, c, ti, tj, sy, sx
    cdef double acc, val
    cdef unsigned char good
    with nogil:
        for i in range(H):
            for j in range(W):
                good = 1
                for ti in range(k):
                    for tj in range(k):
                        sy = i - dilation * (ti - half)
                        sx = j - dilation * (tj - half)
                        if sy < 0 or sy >= H or sx < 0 or sx >= W:
                            good = 0
                        elif not valid[sy, sx]:
                            good = 0
                ov[i, j] = good
                for c in range(C):
                    acc = 0.0
                    for ti in range(k):
                        for tj in range(k):
                            sy = i - dilation * (ti - half)
                            sx = j - dilation * (tj - half)
                            if sy < 0 or sy >= H or sx < 0 or sx >= W or not valid[sy, sx]:
                                val = 0.0
                            else:
                                val = src[sy, sx, c]
                            acc = acc + weights[ti, tj] * val
                    o[i, j, c] = acc
    return out, outv
