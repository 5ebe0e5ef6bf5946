"""How well translation-like actions approximate true rotation.

Three actions on unit directions are compared: the exact rotation, the
shift action in pitch-yaw coordinates (via the indexed-sphere lift),
and the plain image-plane translation.  Error fields, exact-identity
special cases, and order-of-accuracy ladders quantify the gap between
them.
"""

from dataclasses import dataclass, field

import numpy as np

from . import camera, pitchyaw
from .errors import OutOfHemisphereError


def psi(alpha, theta):
    """Exact rotation action: apply exp of alpha to theta."""
    R = pitchyaw.exp_py(alpha)
    theta = np.asarray(theta, dtype=float)
    return (R @ theta[..., None])[..., 0]


def phi_act(alpha, theta):
    """Shift action in pitch-yaw coordinates.

    Lift theta to its minimal angle pair, add alpha, return the rotated
    pole.  Undefined at the antipode and where the sum's magnitude hits
    a positive multiple of pi.
    """
    alpha = np.asarray(alpha, dtype=float)
    gamma = pitchyaw.min_py_log(theta) + alpha
    r = np.linalg.norm(gamma, axis=-1)
    pitchyaw._wrap_count(r)  # raises on the degenerate shell
    return pitchyaw.apply_to_pole(gamma)


def t_of_alpha(alpha):
    """Image-plane translation equivalent to alpha at the principal point.

    Exact value pi(exp(alpha) e2); its linearization is t_linear.
    """
    return pitchyaw.to_plane(alpha)


def t_linear(alpha):
    alpha = np.asarray(alpha, dtype=float)
    return np.stack([alpha[..., 1], -alpha[..., 0]], axis=-1)


def chi_act(alpha, theta):
    """Image-plane translation action: project, add t, unproject."""
    t = t_of_alpha(alpha)
    u = camera.project(theta)
    return camera.unproject(u + t)


@dataclass(frozen=True)
class SphereField:
    """Pointwise action-vs-rotation error over a parameter grid."""

    which: str
    alpha: np.ndarray
    param: np.ndarray = field(repr=False)  # (n, n, 2) pitch-yaw pairs
    coords: np.ndarray = field(repr=False)  # native coords of each sample
    err: np.ndarray = field(repr=False)
    valid: np.ndarray = field(repr=False)


def error_field(alpha, which, n=201, window=np.pi / 2):
    """Chord-distance error of the chosen action against exact rotation.

    The grid parameterizes sphere points by pitch-yaw pairs beta over
    [-window, window]^2; theta = exp(beta) e2.  For which="translation"
    only the open forward hemisphere is valid and coords hold the plane
    points; for which="py" coords are the beta pairs themselves.
    """
    alpha = np.asarray(alpha, dtype=float).reshape(2)
    axes = np.linspace(-window, window, n)
    gx, gy = np.meshgrid(axes, axes)
    beta = np.stack([gx, gy], axis=-1)
    theta = pitchyaw.apply_to_pole(beta)
    exact = psi(alpha, theta)
    if which == "py":
        gamma = pitchyaw.min_py_log(theta) + alpha
        r = np.linalg.norm(gamma, axis=-1)
        k = np.round(r / np.pi)
        degenerate = (k >= 1) & (np.abs(r - np.pi * k) <= 1e-12 * np.maximum(1.0, r))
        moved = pitchyaw.apply_to_pole(gamma)
        err = np.linalg.norm(moved - exact, axis=-1)
        err = np.where(degenerate, np.nan, err)
        return SphereField(which, alpha, beta, beta.copy(), err, ~degenerate)
    if which == "translation":
        ok = theta[..., 2] > 0.0
        t = t_of_alpha(alpha)
        z = np.where(ok, theta[..., 2], 1.0)
        u = theta[..., :2] / z[..., None]
        moved = camera.unproject(u + t)
        err = np.linalg.norm(moved - exact, axis=-1)
        err = np.where(ok, err, np.nan)
        coords = np.where(ok[..., None], u, np.nan)
        return SphereField(which, alpha, beta, coords, err, ok)
    raise ValueError("which must be 'py' or 'translation'")


def fov_error_ratio(alpha, window=np.pi / 6, n=201):
    """Mean pitch-yaw-shift error over a field-of-view disc, divided by
    the mean translation error over the same disc of directions."""
    fpy = error_field(alpha, "py", n=n, window=window)
    ftr = error_field(alpha, "translation", n=n, window=window)
    disc = np.linalg.norm(fpy.param, axis=-1) <= window
    mask = disc & fpy.valid & ftr.valid
    mean_py = float(np.mean(fpy.err[mask]))
    mean_tr = float(np.mean(ftr.err[mask]))
    return mean_py / mean_tr, mean_py, mean_tr


@dataclass(frozen=True)
class TaylorFit:
    prop: str
    hs: np.ndarray
    residuals: np.ndarray
    exact: bool
    slope: float | None


_EPS_FLOOR = 10.0 * np.finfo(float).eps


def taylor_order_check(prop, direction, h_list=(0.2, 0.1, 0.05, 0.025)):
    """Fit the decay order of an approximation residual over an h-ladder.

    prop selects the residual:
      "p10": |shift action - rotation| at alpha = h a, theta = exp(h b) e2
      "p12": |translation action - rotation| at alpha = h a, theta over
             the plane point h v
      "p14": same map, with theta on the circle where the translation's
             first-order mismatch cancels (offset s along the turned t)
      "eq9": |exact t - linearized t| at alpha = h a
    direction supplies (a, b), (a, v), (a, s), or a respectively, with
    unit 2-vectors.  Residuals at the largest h below 1e-13 report the
    leading term as exact; h values with residual at the noise floor are
    excluded from the fit.
    """
    hs = np.asarray(sorted(h_list, reverse=True), dtype=float)
    res = []
    for h in hs:
        if prop == "p10":
            a, b = direction
            alpha = h * np.asarray(a, float)
            theta = pitchyaw.apply_to_pole(h * np.asarray(b, float))
            r = np.linalg.norm(phi_act(alpha, theta) - psi(alpha, theta))
        elif prop == "p12":
            a, v = direction
            alpha = h * np.asarray(a, float)
            theta = camera.unproject(h * np.asarray(v, float))
            r = np.linalg.norm(chi_act(alpha, theta) - psi(alpha, theta))
        elif prop == "p14":
            a, s = direction
            alpha = h * np.asarray(a, float)
            t = t_of_alpha(alpha)
            that = t / np.linalg.norm(t)
            u = -0.5 * t + s * np.array([-that[1], that[0]])
            theta = camera.unproject(u)
            r = np.linalg.norm(chi_act(alpha, theta) - psi(alpha, theta))
        elif prop == "eq9":
            a = np.asarray(direction, float)
            r = np.linalg.norm(t_of_alpha(h * a) - h * t_linear(a))
        else:
            raise ValueError("unknown proposition tag %r" % prop)
        res.append(float(r))
    res = np.asarray(res)
    if res[0] < 1e-13:
        return TaylorFit(prop, hs, res, True, None)
    use = res > _EPS_FLOOR
    lh = np.log(hs[use])
    lr = np.log(res[use])
    slope = float(np.polyfit(lh, lr, 1)[0])
    return TaylorFit(prop, hs, res, False, slope)
