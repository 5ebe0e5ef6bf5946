"""Pitch-yaw rotations: the roll-free plane inside SO(3).

A pitch-yaw angle pair ``alpha = (a0, a1)`` names the rotation
``exp(hat(a0, a1, 0))``.  These rotations move the optical axis ``e2``
around the sphere without introducing roll, and this module provides the
exponential, the minimal log, the wrapped (indexed-sphere) inverse, and
the gnomonic conversions to and from the image plane.

All functions broadcast over leading axes.
"""

import numpy as np

from .errors import NonInjectiveError, OutOfHemisphereError

E2 = np.array([0.0, 0.0, 1.0])

# series kick in below this; 4 terms keep the switch transparent at 1e-6
_SMALL = 1e-6


def _sinc(x):
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _SMALL
    xs = np.where(small, 0.0, x)
    x2 = x * x
    series = 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0
    with np.errstate(invalid="ignore", divide="ignore"):
        exact = np.sin(xs) / xs
    return np.where(small, series, exact)


def _versinc(x):
    # (1 - cos x) / x^2, via the cancellation-free half-angle form
    x = np.asarray(x, dtype=float)
    h = _sinc(0.5 * x)
    return 0.5 * h * h


def _tanc(x):
    # tan(x) / x on (-pi/2, pi/2)
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _SMALL
    xs = np.where(small, 1.0, x)
    x2 = x * x
    series = 1.0 + x2 / 3.0 + 2.0 * x2 * x2 / 15.0 + 17.0 * x2 * x2 * x2 / 315.0
    exact = np.tan(xs) / xs
    return np.where(small, series, exact)


def _atanc(x):
    # arctan(x) / x
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _SMALL
    xs = np.where(small, 1.0, x)
    x2 = x * x
    series = 1.0 - x2 / 3.0 + x2 * x2 / 5.0 - x2 * x2 * x2 / 7.0
    exact = np.arctan(xs) / xs
    return np.where(small, series, exact)


def py_matrix(alpha):
    """Skew matrix hat(a0, a1, 0) for a pitch-yaw pair, broadcast over (..., 2)."""
    alpha = np.asarray(alpha, dtype=float)
    a0 = alpha[..., 0]
    a1 = alpha[..., 1]
    z = np.zeros_like(a0)
    rows = [
        np.stack([z, z, a1], axis=-1),
        np.stack([z, z, -a0], axis=-1),
        np.stack([-a1, a0, z], axis=-1),
    ]
    return np.stack(rows, axis=-2)


def exp_py(alpha):
    """Rotation matrix exp(hat(a0, a1, 0)), shape (..., 3, 3)."""
    alpha = np.asarray(alpha, dtype=float)
    K = py_matrix(alpha)
    r = np.linalg.norm(alpha, axis=-1)
    eye = np.broadcast_to(np.eye(3), K.shape)
    s = _sinc(r)[..., None, None]
    v = _versinc(r)[..., None, None]
    return eye + s * K + v * (K @ K)


def apply_to_pole(alpha):
    """exp_py(alpha) @ e2 without building the matrix; shape (..., 3)."""
    alpha = np.asarray(alpha, dtype=float)
    r = np.linalg.norm(alpha, axis=-1)
    s = _sinc(r)
    return np.stack(
        [alpha[..., 1] * s, -alpha[..., 0] * s, np.cos(r)], axis=-1
    )


def min_py_log(theta):
    """Smallest pitch-yaw pair sending e2 to the unit direction theta.

    Defined everywhere except the antipode -e2, where no unique minimal
    pair exists; that raises NonInjectiveError.
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(1.0 + theta[..., 2] < 1e-12):
        raise NonInjectiveError("minimal log undefined at the antipode of e2")
    # atan2 keeps the angle well conditioned near the antipode, where
    # arccos of the axis component would lose half the digits
    m = np.hypot(theta[..., 0], theta[..., 1])
    b = np.arctan2(m, theta[..., 2])
    msafe = np.where(m > 0, m, 1.0)
    scale = np.where(m > 0, b / msafe, 1.0 / _sinc(b))
    return np.stack([-theta[..., 1] * scale, theta[..., 0] * scale], axis=-1)


def _wrap_count(r):
    # crossings of the pole-to-antipode seam; errors exactly on the seam
    n = np.floor(r / np.pi).astype(np.int64)
    near = np.abs(r - np.pi * np.round(r / np.pi)) <= 1e-12 * np.maximum(1.0, r)
    if np.any(near & (np.round(r / np.pi) >= 1)):
        raise NonInjectiveError("angle magnitude at a positive multiple of pi")
    return n


def to_indexed_sphere(alpha):
    """Lift a pitch-yaw pair to (winding count, unit direction).

    The count is floor(|alpha| / pi): how many times the rotated pole has
    crossed between hemispheres.  Magnitudes at positive multiples of pi
    raise NonInjectiveError; the lift loses the direction there.
    """
    alpha = np.asarray(alpha, dtype=float)
    r = np.linalg.norm(alpha, axis=-1)
    n = _wrap_count(r)
    point = apply_to_pole(alpha)
    if alpha.ndim == 1:
        return int(n), point
    return n, point


def from_indexed_sphere(n, point):
    """Invert the indexed-sphere lift.

    (0, e2) maps to the zero pair; any other input with a pole direction
    raises NonInjectiveError, as does a negative count.
    """
    point = np.asarray(point, dtype=float)
    n = np.asarray(n)
    if np.any(n < 0):
        raise NonInjectiveError("winding count must be nonnegative")
    norm = np.linalg.norm(point, axis=-1)
    if np.any(np.abs(norm - 1.0) > 1e-6):
        raise ValueError("directions must be unit vectors")
    beta = min_py_log(point)  # rejects the antipode for every count
    b = np.linalg.norm(beta, axis=-1)
    at_pole = b < 1e-12
    if np.any(at_pole & (n > 0)):
        raise NonInjectiveError("pole direction with nonzero winding count")
    nb = np.broadcast_to(np.asarray(n, dtype=float), b.shape)
    odd = np.broadcast_to(n % 2 == 1, b.shape)
    mag = np.where(odd, np.pi * (nb + 1.0) - b, b + np.pi * nb)
    sign = np.where(odd, -1.0, 1.0)
    bsafe = np.where(at_pole, 1.0, b)
    alpha = (sign * mag / bsafe)[..., None] * beta
    alpha = np.where(at_pole[..., None], 0.0, alpha)
    return alpha


def to_plane(alpha):
    """Gnomonic image of the rotated pole: tanc(|alpha|) * (a1, -a0).

    Only defined while the pole stays in the open forward hemisphere,
    i.e. |alpha| < pi/2.
    """
    alpha = np.asarray(alpha, dtype=float)
    r = np.linalg.norm(alpha, axis=-1)
    if np.any(r >= np.pi / 2):
        raise OutOfHemisphereError("pitch-yaw magnitude reaches pi/2")
    t = _tanc(r)
    return np.stack([alpha[..., 1] * t, -alpha[..., 0] * t], axis=-1)


def from_plane(u):
    """Inverse of to_plane: the pitch-yaw pair whose pole projects to u."""
    u = np.asarray(u, dtype=float)
    m = np.linalg.norm(u, axis=-1)
    a = _atanc(m)
    return np.stack([-u[..., 1] * a, u[..., 0] * a], axis=-1)
