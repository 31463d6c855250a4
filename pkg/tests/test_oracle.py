import math

import pytest

from teapot.gifs import certify_exclusion
from teapot.oracle import conjugates, cross_check_slice, enumerate_words, teapot_cloud, write_cloud_csv
from teapot.words import BinaryWord


def test_small_enumerations():
    assert enumerate_words(2) == []
    assert [str(w) for w in enumerate_words(3)] == ["101"]
    four = [str(w) for w in enumerate_words(4)]
    assert "1001" in four and "1011" not in four
    assert teapot_cloud(1) == []


def test_golden_cloud():
    pts = teapot_cloud(3)
    zs = sorted(p.z.real for p in pts)
    assert zs == pytest.approx([(1 - 5 ** 0.5) / 2, (1 + 5 ** 0.5) / 2])
    assert [p.inside_disc for p in pts if p.z.real < 0] == [True]


def test_tribonacci_conjugates(tribonacci):
    zs = conjugates(tribonacci)
    real = [z for z in zs if abs(z.imag) < 1e-12]
    assert real[0].real == pytest.approx(1.839287, abs=1e-6)
    pair = [z for z in zs if abs(z.imag) > 1e-12]
    assert len(pair) == 2
    for z in pair:
        assert abs(z) == pytest.approx(0.73735, abs=1e-4)
        assert abs(z) ** 2 == pytest.approx(1 / real[0].real)


def test_product_of_moduli_is_one():
    for pt_word in ("101", "1001", "10001", "100001"):
        pts = teapot_cloud(0, [BinaryWord.parse(pt_word)])
        assert math.prod(abs(p.z) for p in pts) == pytest.approx(1)


def test_cloud_deterministic():
    assert write_cloud_csv(teapot_cloud(6)) == write_cloud_csv(teapot_cloud(6))


def test_csv_header():
    text = write_cloud_csv(teapot_cloud(3))
    assert text.splitlines()[0] == "word,lambda,re_z,im_z,abs_z,inside_disc"


def test_cross_check(golden, golden_G):
    cloud = teapot_cloud(5)
    rep = cross_check_slice(cloud, golden, 0.0, lambda z: certify_exclusion(z, 1, 30, golden_G))
    assert rep.passed and len(rep.hard) == 1 and rep.diagnostic == []
    diag = cross_check_slice(cloud, golden, 0.3, lambda z: certify_exclusion(z, 1, 20, golden_G))
    assert all(r.ok is None for r in diag.diagnostic)
    assert cross_check_slice([], golden, 0.1, None).hard == []
