"""Which image maps commute with rigid scene motion.

Two tools: a counterexample witness showing that a pixel translation is
not rigidity preserving (it disagrees with the projected rigid motion
along some viewing ray), and a solver for the exceptional set where a
translation does coincide with a projected rigid motion, classified per
eigenvalue of the relevant pencil.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError
from . import camera


@dataclass(frozen=True)
class RigidityWitness:
    u: np.ndarray
    lam: float
    cross_norm: float


def rigidity_witness(R, v, seed=0):
    """Find a ray where the motion x -> Rx + v breaks projective collinearity.

    Scaling a scene point along its viewing ray by lam = 2 changes its
    projection under the motion unless Ru and v are parallel; the witness
    u is chosen to make the cross product |(Ru) x v| large.  A motion
    with v = 0 has no witness and raises DegenerateInputError.
    """
    R = np.asarray(R, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.linalg.norm(v) == 0.0:
        raise DegenerateInputError("pure rotation admits no witness")
    rng = np.random.default_rng(seed)
    cands = [
        np.array([0.0, 0.0, 1.0]),
        np.array([1.0, 0.0, 1.0]),
        np.array([0.0, 1.0, 1.0]),
        np.array([1.0, 1.0, 1.0]),
        np.array([-1.0, -1.0, 1.0]),
    ]
    draws = rng.standard_normal((32, 3))
    draws[:, 2] = np.abs(draws[:, 2]) + 0.1  # keep candidates in front
    best = None
    for u in cands + list(draws):
        cn = np.linalg.norm(np.cross(R @ u, v))
        if best is None or cn > best[1]:
            best = (u, cn)
    u, cn = best
    return RigidityWitness(u=np.asarray(u, float), lam=2.0, cross_norm=float(cn))


def translation_homography(tau):
    tau = np.asarray(tau, dtype=float)
    H = np.eye(3)
    H[0, 2] = tau[0]
    H[1, 2] = tau[1]
    return H


def _real_cubic_roots(a2, a1, a0):
    """Real roots of x^3 + a2 x^2 + a1 x + a0, closed form plus polish."""
    shift = -a2 / 3.0
    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 - a2 * a1 / 3.0 + a0
    disc = -4.0 * p ** 3 - 27.0 * q * q
    scale = max(1.0, abs(p) ** 1.5, abs(q))
    if abs(p) < 1e-14 * scale and abs(q) < 1e-14 * scale:
        ys = [0.0]
    elif disc >= 0.0 and p < 0.0:
        m = 2.0 * np.sqrt(-p / 3.0)
        arg = np.clip(3.0 * q / (p * m), -1.0, 1.0)
        th = np.arccos(arg)
        ys = [m * np.cos(th / 3.0 - 2.0 * np.pi * k / 3.0) for k in range(3)]
    else:
        rad = np.sqrt(max(q * q / 4.0 + p ** 3 / 27.0, 0.0))
        ys = [np.cbrt(-q / 2.0 + rad) + np.cbrt(-q / 2.0 - rad)]
    roots = []
    for y in ys:
        x = y + shift
        for _ in range(3):  # Newton polish
            f = ((x + a2) * x + a1) * x + a0
            df = (3.0 * x + 2.0 * a2) * x + a1
            if abs(df) < 1e-300:
                break
            x -= f / df
        roots.append(x)
    roots.sort()
    out = []
    for r in roots:
        if not out or abs(r - out[-1]) > 1e-6 * max(1.0, abs(r)):
            out.append(r)
    return out


@dataclass(frozen=True)
class SSetCase:
    lam: float
    kind: str  # "line", "plane", or "empty"
    basepoint: np.ndarray | None
    directions: np.ndarray  # (k, 3), k in {0, 1, 2}


@dataclass(frozen=True)
class SSetResult:
    tau: np.ndarray = field(repr=False)
    R: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)
    eigenvalues: list
    cases: list
    curve_lambdas: np.ndarray = field(repr=False)
    curve_points: np.ndarray = field(repr=False)


RANK_RTOL = 1e-9  # relative singular-value / residual threshold; tunable


def sset_solve(tau, R, v, n_curve=1000, lam_max=1e3, lam_min=1e-3):
    """Solve for all scene points where the image translation tau agrees
    with the projected motion x -> Rx + v.

    Solutions of (lam*H - R) x = v over all real lam: a curve sampled on a
    symmetric log grid away from the real eigenvalues of inv(H) R, plus a
    classified case (line / plane / empty) at each eigenvalue.
    """
    tau = np.asarray(tau, dtype=float)
    if np.linalg.norm(tau) == 0.0:
        raise DegenerateInputError("zero translation is the identity map")
    R = np.asarray(R, dtype=float)
    v = np.asarray(v, dtype=float)
    H = translation_homography(tau)
    M = np.linalg.inv(H) @ R
    tr = np.trace(M)
    tr2 = np.trace(M @ M)
    c1 = 0.5 * (tr * tr - tr2)
    det = np.linalg.det(M)
    eigs = _real_cubic_roots(-tr, c1, -det)

    cases = []
    for lam in eigs:
        A = lam * H - R
        U, S, Vt = np.linalg.svd(A)
        thr = RANK_RTOL * S[0]
        rank = int(np.sum(S > thr))
        directions = Vt[rank:].copy()
        x, *_ = np.linalg.lstsq(A, v, rcond=None)
        res = np.linalg.norm(A @ x - v)
        solvable = res <= RANK_RTOL * max(1.0, np.linalg.norm(v))
        if not solvable:
            cases.append(SSetCase(lam, "empty", None, np.zeros((0, 3))))
        elif rank == 2:
            cases.append(SSetCase(lam, "line", x, directions))
        else:
            cases.append(SSetCase(lam, "plane", x, directions))

    pos = np.logspace(np.log10(lam_min), np.log10(lam_max), n_curve)
    lams = np.concatenate([-pos[::-1], [0.0], pos])
    keep = np.ones(lams.shape, dtype=bool)
    for lam in eigs:
        keep &= np.abs(lams - lam) > 1e-4
    lams = lams[keep]
    A = lams[:, None, None] * H - R
    rhs = np.broadcast_to(v, (len(lams), 3))[..., None]
    pts = np.linalg.solve(A, rhs)[..., 0]
    return SSetResult(
        tau=tau,
        R=R,
        v=v,
        eigenvalues=[float(e) for e in eigs],
        cases=cases,
        curve_lambdas=lams,
        curve_points=pts,
    )


def sset_grid_check(result, n=101, lo=-5.0, hi=5.0, min_depth=0.01,
                    eq_tol=1e-6, cover_tol=1e-4):
    """Brute-force audit of an SSetResult over a dense scene-point grid.

    Every grid point where the translated projection matches the moved
    projection must lie within cover_tol of a reported set.  Returns a
    report dict; ok is False if any satisfying point is uncovered.
    """
    R, v, tau = result.R, result.v, result.tau
    H = translation_homography(tau)
    ax = np.linspace(lo, hi, n)
    X = np.stack(np.meshgrid(ax, ax, ax, indexing="ij"), axis=-1).reshape(-1, 3)
    X = X[X[:, 2] > min_depth]
    moved = X @ R.T + v
    front = moved[:, 2] > 0.0
    X = X[front]
    moved = moved[front]
    proj = X[:, :2] / X[:, 2:3] + tau
    projm = moved[:, :2] / moved[:, 2:3]
    sat = np.linalg.norm(proj - projm, axis=-1) < eq_tol
    Xs = X[sat]
    if len(Xs) == 0:
        return {"n_satisfying": 0, "max_dist": 0.0, "ok": True}

    dist = np.full(len(Xs), np.inf)
    # distance to the curve: best-fitting lam per point, then exact solve
    HX = Xs @ H.T
    mv = Xs @ R.T + v
    lam_hat = np.sum(HX * mv, axis=-1) / np.sum(HX * HX, axis=-1)
    away = np.ones(len(Xs), dtype=bool)
    for e in result.eigenvalues:
        away &= np.abs(lam_hat - e) > 1e-7
    if np.any(away):
        A = lam_hat[away, None, None] * H - R
        sol = np.linalg.solve(A, np.broadcast_to(v, (int(away.sum()), 3)))
        dist[away] = np.linalg.norm(Xs[away] - sol, axis=-1)
    # distance to eigenvalue cases
    for case in result.cases:
        if case.kind == "empty":
            continue
        d = Xs - case.basepoint
        if len(case.directions):
            Q, _ = np.linalg.qr(case.directions.T)
            d = d - (d @ Q) @ Q.T
        dist = np.minimum(dist, np.linalg.norm(d, axis=-1))
    return {
        "n_satisfying": int(len(Xs)),
        "max_dist": float(dist.max()),
        "ok": bool(dist.max() <= cover_tol),
    }
