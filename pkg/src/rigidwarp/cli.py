"""Command-line front end.

Subcommands: warp (image to or from arc coordinates), augment (one
pose-consistent augmentation draw), distort (action-error field CSV),
sset (translation-vs-rigid-motion level sets), verify (invariant
suite).  Exit codes: 0 success, 2 bad arguments or unreadable inputs,
3 geometry domain error, 4 verification failure.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import augment as aug_mod
from . import camera as cam_mod
from . import distortion, jsonio, rigidity, verify, warp
from .errors import GeometryDomainError
from .jsonio import dump_csv, dump_json, load_json
from .raster import (Raster, from_image, load_image, load_mask, load_sidecar,
                     save_image, save_mask, save_sidecar)


def _size(text):
    try:
        h, w = text.lower().split("x")
        h, w = int(h), int(w)
    except Exception:
        raise argparse.ArgumentTypeError("size must look like 256x256")
    if h < 2 or w < 2:
        raise argparse.ArgumentTypeError("size must be at least 2x2")
    return h, w


def _floats(n):
    def parse(text):
        parts = text.split(",")
        if len(parts) != n:
            raise argparse.ArgumentTypeError("expected %d comma-separated numbers" % n)
        try:
            return np.array([float(p) for p in parts])
        except ValueError:
            raise argparse.ArgumentTypeError("expected numbers, got %r" % text)

    return parse


def cmd_warp(args):
    cam = cam_mod.load_camera(args.camera)
    img = load_image(args.infile)
    size = args.size if args.size else (cam.height, cam.width)
    mask = load_mask(args.mask) if args.mask else None
    if args.direction == "to-py":
        if mask is None:
            mask = np.ones(img.shape[:2], bool)
        out = warp.warp_to_py(from_image(img, cam, mask), cam, size)
    else:
        stem = os.path.splitext(args.infile)[0]
        A, b = load_sidecar(stem + ".pix2cal.json")
        if mask is None:
            mpath = stem + ".mask.png"
            mask = load_mask(mpath) if os.path.exists(mpath) else np.ones(
                img.shape[:2], bool)
        out = warp.warp_from_py(Raster(img, mask, A, b), cam, size)
    ostem = os.path.splitext(args.out)[0]
    save_image(args.out, out.pixels)
    save_mask(ostem + ".mask.png", out.valid)
    save_sidecar(ostem + ".pix2cal.json", out)
    return 0


def cmd_augment(args):
    cam = cam_mod.load_camera(args.camera)
    img = load_image(args.infile)
    R, vec, kind = cam_mod.load_pose(args.ann)
    cfgd = load_json(args.config) if args.config else {}
    cfg = aug_mod.AugConfig(
        scale_range=tuple(cfgd.get("scale_range", (0.7, 1.3))),
        roll_range_deg=tuple(cfgd.get("roll_range_deg", (-180.0, 180.0))),
        tilt_max_deg=float(cfgd.get("tilt_max_deg", 20.0)),
        seed=int(cfgd.get("seed", 0)),
    )
    sample = aug_mod.sample_aug(cfg, args.index, cam)
    if kind == "t":
        warped, R2, vec2 = aug_mod.apply_aug_p2(img, R, vec, cam, sample)
    else:
        src = from_image(img, cam)
        warped = warp.homography_warp(
            src, sample.H, (cam.height, cam.width),
            aug_mod.aug_camera(cam, sample.f).pix2cal())
        R2, vec2 = cam_mod.relabel_camera_pose(R, vec, aug_mod.aug_rotation(sample))
    os.makedirs(args.out_dir, exist_ok=True)
    stem = os.path.join(args.out_dir, "aug_%06d" % args.index)
    save_image(stem + ".png", warped.pixels)
    save_mask(stem + ".mask.png", warped.valid)
    cam_mod.save_pose(stem + ".pose.json", R2, vec2, kind)
    dump_json(
        {
            "seed": cfg.seed,
            "index": args.index,
            "f": sample.f,
            "roll_rad": sample.roll,
            "tilt_alpha": sample.tilt_alpha,
            "H": sample.H.reshape(-1),
        },
        stem + ".meta.json",
    )
    return 0


def cmd_distort(args):
    h, w = args.grid
    if h != w:
        print("distort: grid must be square", file=sys.stderr)
        return 2
    f = distortion.error_field(args.alpha, args.which, n=w)
    rows = []
    n = f.err.shape[0]
    for i in range(n):
        for j in range(n):
            rows.append(
                (f.coords[i, j, 0], f.coords[i, j, 1], f.err[i, j],
                 int(f.valid[i, j]))
            )
    dump_csv(args.out, ["u0", "u1", "error", "valid"], rows)
    other = "translation" if args.which == "py" else "py"
    g = distortion.error_field(args.alpha, other, n=w)
    joint = f.valid & g.valid
    means = {args.which: float(f.err[joint].mean()),
             other: float(g.err[joint].mean())}
    print("mean error vs rotation: py %.6e, translation %.6e"
          % (means["py"], means["translation"]))
    return 0


def cmd_sset(args):
    R = args.R.reshape(3, 3) if args.R is not None else np.eye(3)
    res = rigidity.sset_solve(args.tau, R, args.v)
    cases = []
    for c in res.cases:
        entry = {"lambda": c.lam, "kind": c.kind}
        if c.basepoint is not None:
            entry["basepoint"] = c.basepoint
        entry["directions"] = [d for d in c.directions]
        cases.append(entry)
    doc = {
        "eigenvalues": res.eigenvalues,
        "cases": cases,
        "curve": [
            [res.curve_lambdas[i]] + list(res.curve_points[i])
            for i in range(len(res.curve_lambdas))
        ],
    }
    code = 0
    if args.check:
        rep = rigidity.sset_grid_check(res)
        doc["check"] = rep
        if not rep["ok"]:
            code = 4
    if args.out:
        dump_json(doc, args.out)
    else:
        sys.stdout.write(jsonio.dumps(doc))
    return code


def cmd_verify(args):
    failed, lines = verify.run(args.filter)
    for line in lines:
        print(line)
    total = len(lines)
    print("%d/%d checks passed" % (total - failed, total))
    return 4 if failed else 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="rigidwarp",
        description="Rigidity-preserving warps, pose-consistent augmentation, "
        "and arc-coordinate convolution tools.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("warp", help="resample an image to or from arc coordinates")
    w.add_argument("--in", dest="infile", required=True)
    w.add_argument("--camera", required=True)
    w.add_argument("--out", required=True)
    w.add_argument("--size", type=_size, default=None, help="output HxW")
    w.add_argument("--direction", choices=["to-py", "from-py"], default="to-py")
    w.add_argument("--mask", default=None, help="validity mask PNG")
    w.set_defaults(func=cmd_warp)

    a = sub.add_parser("augment", help="draw and apply one augmentation")
    a.add_argument("--in", dest="infile", required=True)
    a.add_argument("--ann", required=True, help="pose JSON to transport")
    a.add_argument("--camera", required=True)
    a.add_argument("--config", default=None, help="augmentation config JSON")
    a.add_argument("--index", type=int, required=True)
    a.add_argument("--out-dir", required=True)
    a.set_defaults(func=cmd_augment)

    d = sub.add_parser("distort", help="action-vs-rotation error field as CSV")
    d.add_argument("--alpha", type=_floats(2), required=True)
    d.add_argument("--which", choices=["py", "translation"], required=True)
    d.add_argument("--grid", type=_size, default=(201, 201))
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_distort)

    s = sub.add_parser("sset", help="level sets where a pixel translation "
                       "matches a rigid motion")
    s.add_argument("--tau", type=_floats(2), required=True)
    s.add_argument("--R", type=_floats(9), default=None, help="row-major rotation")
    s.add_argument("--v", type=_floats(3), required=True)
    s.add_argument("--out", default=None)
    s.add_argument("--check", action="store_true", help="run the grid audit")
    s.set_defaults(func=cmd_sset)

    v = sub.add_parser("verify", help="run the invariant suite")
    v.add_argument("--filter", default=None, help="substring of check names")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GeometryDomainError as exc:
        print("geometry error: %s" % exc, file=sys.stderr)
        return 3
    except (OSError, KeyError, json.JSONDecodeError, ValueError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
