"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import math
import random
import time
from itertools import product

import numpy as np
import pytest

from teapot import _kernel
from teapot.cli import main
from teapot.gifs import (
    EDGE_MAPS,
    PathSpec,
    all_witnesses,
    certify_exclusion,
    classify_many,
    enumerate_pathspecs,
    finite_value,
    hausdorff_selfsim_check,
    limit_value,
    limit_value_rational,
    magnification,
    power_series_value,
    renormalization_map,
    selfsim_center,
    selfsim_windows,
    witness_roots,
)
from teapot.exact_arith import RationalPoly
from teapot.markov import build_graphs, path_vertex_words
from teapot.oracle import conjugates, cross_check_slice, enumerate_words, teapot_cloud
from teapot.render import RenderSpec, render_slice
from teapot.tent import realize_lambda, suitability_check
from teapot.words import BinaryWord

ZSTAR = (1 - 5 ** 0.5) / 2
X = RationalPoly.x()
RESULTS: list[str] = []


def report(n: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS.append(line)
    print(line)


def golden_G():
    return build_graphs(realize_lambda("101"))[2]


# ---------------------------------------------------------------------------


def criterion_1():
    t = time.perf_counter()
    import io

    out = io.StringIO()
    code = main(["graph", "build", "--word", "101"], out)
    p = realize_lambda("101")
    mp, gamma, G = build_graphs(p)
    elapsed = time.perf_counter() - t
    K = p.field
    lam = K.gen()
    checks = {
        "exit": code == 0,
        "minpoly": p.field.modulus.monic() == X * X - X - 1,
        "breakpoints": [b.poly for b in mp.breakpoints] == [K(0).poly, (2 - lam).poly, K(1).poly],
        # A = v0 = [0, 2-lam], B = v1 = [2-lam, 1]: A->B, B->A, B->B
        "Gamma": {(e.src, e.dst) for e in gamma.edges} == {(0, 1), (1, 0), (1, 1)},
        # e1 = B->B with z - zx, e2 = B->A with zx + 2 - z, e3 = A->B with z - zx
        "G": [(e.src, e.dst, e.label) for e in G.edges] == [(1, 1, "R"), (1, 0, "L"), (0, 1, "R")],
        "maps": [(EDGE_MAPS[e.label].slope, EDGE_MAPS[e.label].intercept) for e in G.edges]
        == [(-X, X), (X, 2 - X), (-X, X)],
        "runtime": elapsed < 1.0,
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"graph build 101 in {elapsed:.2f}s" + (f"; failed {bad}" if bad else "")


def criterion_2():
    t = time.perf_counter()
    G = golden_G()
    ps = PathSpec(G, (), (1, 2, 3))
    roots = witness_roots(ps, 1)
    ok = len(roots) == 1 and abs(roots[0].z - ZSTAR) < 1e-12
    z = roots[0].z if roots else ZSTAR
    resid = abs(limit_value(ps, z) - 1)
    ok &= resid < 1e-12
    verdicts = {certify_exclusion(z, 1, d, G).verdict for d in range(0, 61)}
    ok &= "Out" not in verdicts
    elapsed = time.perf_counter() - t
    ok &= elapsed < 5
    return ok, f"z={z.real:.12f} residual={resid:.1e} verdicts={sorted(verdicts)} {elapsed:.2f}s"


def criterion_3():
    t = time.perf_counter()
    p = realize_lambda("101")
    G = build_graphs(p)[2]
    diffs = []
    for n in range(0, 15):
        acc = {BinaryWord(w) for w in product((0, 1), repeat=n) if suitability_check(w, n, p).accepted}
        diffs.append(len(acc ^ path_vertex_words(G, n)))
    elapsed = time.perf_counter() - t
    ok = sum(diffs) == 0 and elapsed < 30
    return ok, f"symmetric differences n=0..14: {diffs} {elapsed:.2f}s"


def criterion_4():
    t = time.perf_counter()
    rng = random.Random(20240601)
    worst = 0.0
    for _ in range(1000):
        w = "".join(rng.choice("LR") for _ in range(rng.randint(0, 60)))
        z = complex(*(rng.uniform(-1, 1) for _ in range(2)))
        while abs(z) > 0.9:
            z = complex(*(rng.uniform(-1, 1) for _ in range(2)))
        worst = max(worst, abs(finite_value(z, w) - power_series_value(w, z)))
    elapsed = time.perf_counter() - t
    return worst < 1e-10 and elapsed < 5, f"max deviation {worst:.2e} over 1000 pairs {elapsed:.2f}s"


def criterion_5():
    t = time.perf_counter()
    G = golden_G()
    wits = all_witnesses(G, 4, 6)
    zs = np.array([w.z for _, w in wits])
    out_hits = 0
    for d in range(0, 41):
        status, _, _, _ = classify_many(zs, 1, d, G)
        out_hits += int(np.count_nonzero(status == _kernel.STATUS_OUT))
    # 500 random Out-certified points must not sit on any eventually periodic witness
    rng = np.random.default_rng(5)
    cands = rng.uniform(-1, 1, 6000) + 1j * rng.uniform(-1, 1, 6000)
    cands = cands[np.abs(cands) < 1]
    status, _, _, _ = classify_many(cands, 1, 40, G)
    outs = cands[status == _kernel.STATUS_OUT][:500]
    specs = enumerate_pathspecs(G, 4, 6)
    near = 0
    for ps in specs:
        num, den = limit_value_rational(ps)
        nv = np.polyval([float(c) for c in reversed(num.coeffs)], outs)
        dv = np.polyval([float(c) for c in reversed(den.coeffs)], outs)
        near += int(np.count_nonzero(np.abs(nv / dv - 1) < 1e-9))
    elapsed = time.perf_counter() - t
    ok = out_hits == 0 and len(outs) == 500 and near == 0 and elapsed < 120
    return ok, (f"{len(wits)} witnesses x depths 0..40: {out_hits} Out; "
                f"{len(outs)} Out points vs {len(specs)} paths: {near} within 1e-9; {elapsed:.1f}s")


def criterion_6():
    t = time.perf_counter()
    p = realize_lambda("101")
    imgs = {d: render_slice(p, RenderSpec(resolution=(512, 512), depth=d, overlay_witnesses=True))
            for d in (32, 36)}
    elapsed = time.perf_counter() - t
    img = imgs[32]
    zs = img.spec.pixel_centers()
    inside = not np.any(img.non_out_mask() & (np.abs(zs) > 1))
    row, col = img.spec.pixel_of(complex(ZSTAR))
    has_zstar = bool(img.non_out_mask()[row, col])
    a, b = imgs[32].non_out_fraction(), imgs[36].non_out_fraction()
    rel = abs(a - b) / a
    ok = inside and has_zstar and rel < 0.02 and elapsed < 300
    return ok, (f"non-Out fraction {a:.4f} -> {b:.4f} (relative change {rel:.2%}), inside disc={inside}, "
                f"z* pixel non-Out={has_zstar}, {elapsed:.1f}s on {_kernel.numba.get_num_threads()} thread(s)")


def criterion_7():
    t = time.perf_counter()
    G = golden_G()
    ps = PathSpec(G, (), (1, 2, 3))
    c = selfsim_center(ps, 1, 30)
    kappa = magnification(ps, c.z)
    x = limit_value(ps, c.z)
    phi = renormalization_map(ps, c.z)
    h = 1e-5
    fd = (phi(x + h) - phi(x - h)) / (2 * h)
    eps, levels = 0.05, 3
    clouds = selfsim_windows(ps, c.z, kappa, eps, levels, resolution=200, base_depth=12)
    dists = hausdorff_selfsim_check(clouds, c.z, kappa, eps, levels)
    elapsed = time.perf_counter() - t
    decreasing = all(a > b for a, b in zip(dists, dists[1:]))
    ok = (abs(c.z - ZSTAR) < 1e-12 and c.simple and abs(kappa - (-4.2360679775)) < 1e-6
          and abs(fd - kappa) < 1e-6 and decreasing and elapsed < 120)
    return ok, (f"center {c.z.real:.12f} simple={c.simple} unique_to_depth={c.unique_to_depth} "
                f"kappa={kappa.real:.8f} fd={fd.real:.8f} hausdorff={[round(d, 5) for d in dists]} {elapsed:.1f}s")


def criterion_8():
    t = time.perf_counter()
    words = {str(w) for w in enumerate_words(12)}
    membership = "101" in words and "1001" in words and "10" not in words and "1011" not in words
    trib = realize_lambda("1001")
    # independent oracle: numpy companion-matrix roots of lam^3 - lam^2 - lam - 1
    ref = np.roots([1, -1, -1, -1])
    ref_lam = max(r.real for r in ref if abs(r.imag) < 1e-12)
    ref_mod = abs([r for r in ref if abs(r.imag) > 1e-12][0])
    ours = conjugates(trib)
    lam_ok = abs(max(z.real for z in ours if abs(z.imag) < 1e-12) - ref_lam) < 1e-6 and abs(ref_lam - 1.839287) < 1e-6
    mod_ok = all(abs(abs(z) - ref_mod) < 1e-4 for z in ours if abs(z.imag) > 1e-12) and abs(ref_mod - 0.73735) < 1e-4
    golden = realize_lambda("101")
    G = build_graphs(golden)[2]
    cloud = teapot_cloud(0, [BinaryWord.parse("101")])
    rep = cross_check_slice(cloud, golden, 0.0, lambda z: certify_exclusion(z, 1, 40, G))
    elapsed = time.perf_counter() - t
    ok = membership and lam_ok and mod_ok and rep.passed and len(rep.hard) > 0 and elapsed < 60
    return ok, (f"{len(words)} words to period 12, lambda(1001)={ref_lam:.7f}, |z|={ref_mod:.5f}, "
                f"hard cross-check {sum(r.ok for r in rep.hard)}/{len(rep.hard)} non-Out, {elapsed:.1f}s")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("n", range(1, 9))
def test_acceptance(n):
    ok, detail = CRITERIA[n - 1]()
    report(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for i, crit in enumerate(CRITERIA, 1):
        report(i, *crit())
