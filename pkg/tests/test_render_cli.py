import io
import json

import numpy as np
import pytest

from teapot.cli import main
from teapot.render import (
    ConfigError,
    RenderSpec,
    SliceImage,
    Settings,
    classify_pixel,
    parse_config,
    render_slice,
    write_csv,
    write_ppm,
)

ZSTAR = (1 - 5 ** 0.5) / 2


def test_ppm_bytes():
    spec = RenderSpec(resolution=(2, 1))
    img = SliceImage(spec, np.array([[0, 1]], np.int8), np.zeros((1, 2), int), np.ones((1, 2)))
    assert write_ppm(img) == b"P6\n2 1\n255\n" + bytes([255, 255, 255, 0, 0, 0])


def test_pixel_centers_orientation():
    zs = RenderSpec(region=(-1, -1, 1, 1), resolution=(2, 2)).pixel_centers()
    assert zs[0, 0] == complex(-0.5, 0.5) and zs[1, 1] == complex(0.5, -0.5)


def test_render_golden_small(golden, golden_G):
    spec = RenderSpec(resolution=(64, 64), depth=20)
    img = render_slice(golden, spec)
    row, col = spec.pixel_of(ZSTAR)
    # certificates apply to pixel centres, so check the z* pixel through the overlay
    over = render_slice(golden, RenderSpec(resolution=(64, 64), depth=20, overlay_witnesses=True))
    assert over.result(row, col).verdict == "WitnessedIn"
    zero = RenderSpec(region=(-0.01, -0.01, 0.01, 0.01), resolution=(1, 1), depth=5)
    assert render_slice(golden, zero).result(0, 0).verdict == "Out"
    edge = RenderSpec(region=(0.98, -0.01, 1.0, 0.01), resolution=(1, 1), depth=6)
    assert render_slice(golden, edge).result(0, 0).verdict == "Unknown"
    outside = np.abs(spec.pixel_centers()) > 1
    assert np.all(img.status[outside] == 0)


def test_classify_pixel(golden_G):
    spec = RenderSpec(depth=20)
    r = classify_pixel(1.2, golden_G, spec)
    assert r.verdict == "Out" and r.depth == 0
    assert classify_pixel(0, golden_G, spec).depth == 1
    assert classify_pixel(ZSTAR, golden_G, spec).verdict != "Out"


def test_render_deterministic(golden):
    spec = RenderSpec(resolution=(48, 40), depth=18, region=(-1, -0.8, 0.6, 1))
    a, b = render_slice(golden, spec), render_slice(golden, spec)
    assert write_ppm(a) == write_ppm(b) and write_csv(a) == write_csv(b)


def test_render_thread_independent(golden):
    from teapot import _kernel

    spec = RenderSpec(resolution=(32, 32), depth=16)
    _kernel.set_threads(1)
    a = write_ppm(render_slice(golden, spec))
    _kernel.set_threads("auto")
    assert write_ppm(render_slice(golden, spec)) == a


def test_depth_monotone(golden):
    imgs = [render_slice(golden, RenderSpec(resolution=(48, 48), depth=d)) for d in (12, 16, 20)]
    for lo, hi in zip(imgs, imgs[1:]):
        assert not np.any((lo.status == 0) & (hi.status != 0))
        assert hi.non_out_fraction() <= lo.non_out_fraction()


def test_csv_rows(golden):
    spec = RenderSpec(region=(ZSTAR - 1e-3, -1e-3, ZSTAR + 1e-3, 1e-3), resolution=(1, 1), depth=20)
    rows = write_csv(render_slice(golden, spec)).splitlines()
    assert rows[0] == "re_z,im_z,verdict,depth,margin_or_residual"
    assert rows[1].split(",")[2] != "Out"


def test_config_defaults_and_parse(tmp_path):
    assert parse_config("") == Settings()
    s = parse_config("depth = 40\n# comment\nlambda_prime_offsets = 2^-10, 2^-20\nthreads = 2\n")
    assert s.depth == 40 and s.lambda_prime_offsets == (10, 20) and s.threads == 2
    assert s.precision_bits == 128 and s.slack_bits == 40
    with pytest.raises(ConfigError):
        parse_config("colour = blue\n")
    with pytest.raises(ConfigError):
        parse_config("depth = deep\n")


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_cli_graph_build():
    code, text = run(["graph", "build", "--word", "101"])
    assert code == 0
    assert "x^2 - x - 1" in text
    assert "e1: v1 -> v1 [R]" in text and "e2: v1 -> v0 [L]" in text and "e3: v0 -> v1 [R]" in text
    code, text = run(["graph", "build", "--word", "101", "--json"])
    assert json.loads(text)["direction"] == "G"


def test_cli_exit_codes(tmp_path):
    assert run(["graph", "build", "--word", "10"])[0] == 2
    assert run(["graph", "build", "--word", "12"])[0] == 2
    assert run(["witness", "--word", "101", "--gamma1", "1,3"])[0] == 3
    assert run(["certify", "--word", "101", "--z", "1.5,0", "--depth", "3"])[0] == 3
    bad = tmp_path / "missing" / "x.ppm"
    assert run(["render", "--word", "101", "--resolution", "4x4", "--out", str(bad)])[0] == 4


def test_cli_certify_witness_selfsim():
    code, text = run(["certify", "--word", "101", "--z", "0,0", "--depth", "4"])
    assert code == 0 and text.startswith("Out depth=1")
    code, text = run(["certify", "--word", "101", "--z", "0.3,0.5", "--depth", "20", "--rigorous"])
    assert code == 0 and text.startswith("Out")
    code, text = run(["witness", "--word", "101", "--gamma1", "1,2,3"])
    assert code == 0 and text.startswith("-0.618033988749895")
    code, text = run(["selfsim", "--word", "101", "--gamma1", "1,2,3", "--eps", "0.05",
                      "--levels", "2", "--resolution", "40", "--uniqueness-depth", "10"])
    assert code == 0 and "simple=True" in text and "kappa -4.23606797749979" in text


def test_cli_render_and_oracle(tmp_path):
    ppm = tmp_path / "s.ppm"
    csvp = tmp_path / "s.csv"
    code, _ = run(["render", "--word", "101", "--resolution", "16x12", "--depth", "12",
                   "--out", str(ppm), "--csv", str(csvp), "--overlay-witnesses"])
    assert code == 0
    assert ppm.read_bytes().startswith(b"P6\n16 12\n255\n")
    side = json.loads((tmp_path / "s.json").read_text())
    assert side["word"] == "101" and side["depth"] == 12 and len(side["graph_sha1"]) == 40
    assert len(csvp.read_text().splitlines()) == 16 * 12 + 1
    out = tmp_path / "t.csv"
    code, text = run(["oracle", "--max-period", "4", "--out", str(out)])
    assert code == 0 and out.read_text().count("\n1001,") == 3


def test_cli_config_file(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("depth = 3\n")
    code, text = run(["--config", str(cfg), "certify", "--word", "101", "--z", "0.5,0.5"])
    assert code == 0 and "depth=" in text
    cfg.write_text("nonsense\n")
    assert run(["--config", str(cfg), "certify", "--word", "101", "--z", "0,0"])[0] == 3
