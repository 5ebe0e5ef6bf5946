import json
import subprocess
import sys

import numpy as np
import pytest

from rigidwarp import augment, camera, cli, warp
from rigidwarp.jsonio import dump_json, load_json
from rigidwarp.raster import Raster, from_image, load_image, load_mask, load_sidecar, save_image

from conftest import smooth_image


@pytest.fixture
def workdir(tmp_path, cam):
    camera.save_camera(cam, tmp_path / "cam.json")
    img = smooth_image(cam)
    save_image(tmp_path / "in.png", img)
    return tmp_path


def run_cli(*argv):
    return cli.main([str(a) for a in argv])


def test_warp_roundtrip_via_files(workdir, cam):
    code = run_cli("warp", "--in", workdir / "in.png",
                   "--camera", workdir / "cam.json",
                   "--out", workdir / "py.png", "--size", "128x128")
    assert code == 0
    assert (workdir / "py.mask.png").exists()
    assert (workdir / "py.pix2cal.json").exists()
    A, b = load_sidecar(workdir / "py.pix2cal.json")
    assert A.shape == (2, 2) and b.shape == (2,)
    code = run_cli("warp", "--in", workdir / "py.png",
                   "--camera", workdir / "cam.json",
                   "--out", workdir / "back.png", "--direction", "from-py")
    assert code == 0
    src = load_image(workdir / "in.png")
    back = load_image(workdir / "back.png")
    ok = load_mask(workdir / "back.mask.png")
    ok[:2] = ok[-2:] = False
    ok[:, :2] = ok[:, -2:] = False
    # quantization adds about 1/2 of 1/255 on top of resampling error
    assert np.mean(np.abs(back[ok] - src[ok])) < 0.02


def test_warp_missing_camera(workdir):
    code = run_cli("warp", "--in", workdir / "in.png",
                   "--camera", workdir / "nope.json",
                   "--out", workdir / "py.png")
    assert code == 2


def test_warp_bad_size_argument(workdir):
    with pytest.raises(SystemExit) as e:
        run_cli("warp", "--in", workdir / "in.png",
                "--camera", workdir / "cam.json",
                "--out", workdir / "py.png", "--size", "128")
    assert e.value.code == 2


def test_augment_outputs_and_determinism(workdir, cam):
    camera.save_pose(workdir / "pose.json", np.eye(3),
                     np.array([0.1, -0.05, 2.0]), "t")
    args = ("augment", "--in", workdir / "in.png",
            "--ann", workdir / "pose.json",
            "--camera", workdir / "cam.json",
            "--index", "3", "--out-dir", workdir / "out")
    assert run_cli(*args) == 0
    stem = workdir / "out" / "aug_000003"
    paths = [stem.with_suffix(s) for s in (".png", ".mask.png", ".pose.json", ".meta.json")]
    for p in paths:
        assert p.exists(), p
    first = [p.read_bytes() for p in paths]
    assert run_cli(*args) == 0
    second = [p.read_bytes() for p in paths]
    assert first == second

    meta = load_json(stem.with_suffix(".meta.json"))
    assert meta["index"] == 3
    assert 0.7 <= meta["f"] <= 1.3
    H = np.asarray(meta["H"], float).reshape(3, 3)
    want = augment.aug_homography(
        cam, meta["f"], meta["roll_rad"], np.asarray(meta["tilt_alpha"]))
    assert np.max(np.abs(H - want)) < 1e-12


def test_augment_meta_reproduces_warp(workdir, cam):
    camera.save_pose(workdir / "pose.json", np.eye(3),
                     np.array([0.0, 0.0, 2.0]), "t")
    assert run_cli("augment", "--in", workdir / "in.png",
                   "--ann", workdir / "pose.json",
                   "--camera", workdir / "cam.json",
                   "--index", "0", "--out-dir", workdir / "out") == 0
    stem = workdir / "out" / "aug_000000"
    meta = load_json(stem.with_suffix(".meta.json"))
    H = np.asarray(meta["H"], float).reshape(3, 3)
    src = from_image(load_image(workdir / "in.png"), cam)
    redo = warp.homography_warp(
        src, H, (cam.height, cam.width),
        augment.aug_camera(cam, meta["f"]).pix2cal())
    png = load_image(stem.with_suffix(".png"))
    mask = load_mask(stem.with_suffix(".mask.png"))
    both = mask & redo.valid
    assert both.any()
    # the stored image is the same warp, up to 8-bit quantization
    assert np.max(np.abs(png[both] - redo.pixels[both])) <= 0.5 / 255 + 1e-9


def test_augment_zero_ranges_pass_through(workdir, cam):
    camera.save_pose(workdir / "pose.json", np.eye(3),
                     np.array([0.0, 0.0, 2.0]), "t")
    dump_json({"scale_range": [1.0, 1.0], "roll_range_deg": [0.0, 0.0],
               "tilt_max_deg": 0.0, "seed": 9}, workdir / "cfg.json")
    assert run_cli("augment", "--in", workdir / "in.png",
                   "--ann", workdir / "pose.json",
                   "--camera", workdir / "cam.json",
                   "--config", workdir / "cfg.json",
                   "--index", "5", "--out-dir", workdir / "out") == 0
    out = load_image(workdir / "out" / "aug_000005.png")
    src = load_image(workdir / "in.png")
    assert np.array_equal(out[1:-1, 1:-1], src[1:-1, 1:-1])
    R2, vec2, kind = camera.load_pose(workdir / "out" / "aug_000005.pose.json")
    assert kind == "t"
    assert np.allclose(R2, np.eye(3)) and np.allclose(vec2, [0, 0, 2.0])


def test_augment_camera_pose_kind(workdir, cam):
    camera.save_pose(workdir / "pose.json", np.eye(3),
                     np.array([0.0, 1.0, 0.5]), "c")
    assert run_cli("augment", "--in", workdir / "in.png",
                   "--ann", workdir / "pose.json",
                   "--camera", workdir / "cam.json",
                   "--index", "1", "--out-dir", workdir / "out") == 0
    R2, vec2, kind = camera.load_pose(workdir / "out" / "aug_000001.pose.json")
    assert kind == "c"
    meta = load_json(workdir / "out" / "aug_000001.meta.json")
    R_aug = augment.aug_rotation(augment.AugSample(
        f=meta["f"], roll=meta["roll_rad"],
        tilt_alpha=np.asarray(meta["tilt_alpha"]),
        H=np.asarray(meta["H"], float).reshape(3, 3)))
    assert np.allclose(R2, R_aug @ np.eye(3), atol=1e-12)
    assert np.allclose(vec2, [0.0, 1.0, 0.5])  # camera center is unchanged


def test_distort_zero_alpha_csv(workdir, capsys):
    code = run_cli("distort", "--alpha", "0,0", "--which", "py",
                   "--grid", "21x21", "--out", workdir / "field.csv")
    assert code == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("mean error vs rotation: py ")
    assert "translation" in line
    rows = (workdir / "field.csv").read_text().strip().split("\n")
    assert rows[0] == "u0,u1,error,valid"
    assert len(rows) == 1 + 21 * 21
    for r in rows[1:]:
        u0, u1, err, ok = r.split(",")
        if int(ok):
            assert abs(float(err)) < 1e-12


def test_distort_rejects_rectangles(workdir):
    code = run_cli("distort", "--alpha", "0.1,0", "--which", "translation",
                   "--grid", "10x20", "--out", workdir / "f.csv")
    assert code == 2


def test_sset_worked_case(workdir, capsys):
    code = run_cli("sset", "--tau", "1,0", "--v", "1,0,0", "--check",
                   "--out", workdir / "sset.json")
    assert code == 0
    doc = load_json(workdir / "sset.json")
    assert doc["eigenvalues"] == pytest.approx([1.0])
    [case] = doc["cases"]
    assert case["kind"] == "plane"
    assert case["basepoint"] == pytest.approx([0.0, 0.0, 1.0])
    assert doc["check"]["ok"] is True
    curve = np.asarray(doc["curve"])
    assert curve.shape[1] == 4
    lam, pts = curve[:, 0], curve[:, 1:]
    assert np.max(np.abs(pts[:, 0] - 1.0 / (lam - 1.0))) < 1e-8


def test_sset_stdout_and_degenerate(workdir, capsys):
    code = run_cli("sset", "--tau", "0.5,0.25", "--v", "0,0,1")
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert "eigenvalues" in doc and "curve" in doc
    code = run_cli("sset", "--tau", "0,0", "--v", "1,0,0")
    assert code == 3


def test_verify_full_suite(capsys):
    assert run_cli("verify") == 0
    out = capsys.readouterr().out
    assert "checks passed" in out.splitlines()[-1]
    assert "FAIL" not in out


def test_verify_filter_selects_taylor_only(capsys):
    assert run_cli("verify", "--filter", "prop10") == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l]
    assert lines[-1] == "1/1 checks passed"
    assert "taylor-prop10" in lines[0]


def test_verify_injected_failure(capsys):
    assert run_cli("verify", "--filter", "selftest-injected-failure") == 4
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_installed_entry_point():
    out = subprocess.run([sys.executable, "-m", "rigidwarp.cli",
                          "verify", "--filter", "pitchyaw-plane-maps"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "1/1 checks passed" in out.stdout
