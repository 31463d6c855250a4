"""Slice rendering, configuration and output formats (PPM, CSV, provenance sidecar)."""
from __future__ import annotations

import configparser
import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import _kernel
from .errors import TeapotError
from .gifs import (
    DEFAULT_BUDGET,
    ClassificationResult,
    all_witnesses,
    certify_exclusion,
    classify_many,
    to_csr,
)
from .markov import GifsGraph, build_graphs, content_hash, export
from .tent import TentParameter

OUT, UNKNOWN, WITNESSED = 0, 1, 2
VERDICTS = {OUT: "Out", UNKNOWN: "Unknown", WITNESSED: "WitnessedIn"}
COLORS = {OUT: (255, 255, 255), UNKNOWN: (0, 0, 0), WITNESSED: (220, 40, 40)}


class ConfigError(TeapotError, ValueError):
    """Malformed configuration file."""


@dataclass(frozen=True)
class Settings:
    precision_bits: int = 128
    depth: int = 32
    slack_bits: int = 40
    g0max: int = 4
    g1max: int = 6
    lambda_prime_offsets: tuple[int, ...] = (8, 12, 16)
    threads: Union[str, int] = "auto"

    @property
    def slack(self) -> float:
        return 2.0 ** -self.slack_bits


def _offsets(text: str) -> tuple[int, ...]:
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        if not tok.startswith("2^-"):
            raise ConfigError(f"offset {tok!r} is not of the form 2^-k")
        out.append(int(tok[3:]))
    return tuple(out)


def parse_config(text: str) -> Settings:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        cp.read_string("[teapot]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    sec = cp["teapot"]
    known = {f for f in Settings.__dataclass_fields__}
    for key in sec:
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
    kw = {}
    try:
        for key in ("precision_bits", "depth", "slack_bits", "g0max", "g1max"):
            if key in sec:
                kw[key] = int(sec[key])
        if "lambda_prime_offsets" in sec:
            kw["lambda_prime_offsets"] = _offsets(sec["lambda_prime_offsets"].strip("\"'"))
        if "threads" in sec:
            t = sec["threads"].strip()
            kw["threads"] = "auto" if t == "auto" else int(t)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return Settings(**kw)


def read_config(path) -> Settings:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


@dataclass(frozen=True)
class RenderSpec:
    region: tuple[float, float, float, float] = (-1.0, -1.0, 1.0, 1.0)  # re_lo, im_lo, re_hi, im_hi
    resolution: tuple[int, int] = (512, 512)
    depth: int = 32
    C: complex = 1
    overlay_witnesses: bool = False
    rigorous: bool = False
    slack: float = 2.0 ** -40
    budget: int = DEFAULT_BUDGET
    g0max: int = 4
    g1max: int = 6
    precision_bits: int = 128

    def __post_init__(self):
        a, b, c, d = self.region
        if not (a < c and b < d):
            raise ValueError("region must be nonempty")
        if min(self.resolution) < 1:
            raise ValueError("resolution must be positive")

    def pixel_centers(self) -> np.ndarray:
        """Row-major complex array of shape (height, width); row 0 is the top (largest imaginary part)."""
        a, b, c, d = self.region
        w, h = self.resolution
        re = a + (np.arange(w) + 0.5) * (c - a) / w
        im = d - (np.arange(h) + 0.5) * (d - b) / h
        return re[None, :] + 1j * im[:, None]

    def pixel_of(self, z: complex) -> Optional[tuple[int, int]]:
        """(row, col) of the pixel containing z, or None outside the region."""
        a, b, c, d = self.region
        w, h = self.resolution
        col = math.floor((z.real - a) / (c - a) * w)
        row = math.floor((d - z.imag) / (d - b) * h)
        if 0 <= col < w and 0 <= row < h:
            return row, col
        return None


@dataclass
class SliceImage:
    spec: RenderSpec
    status: np.ndarray  # int8 (height, width)
    depth: np.ndarray
    value: np.ndarray
    provenance: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)  # (row, col) -> (PathSpec, z, residual)

    def result(self, row: int, col: int) -> ClassificationResult:
        s = int(self.status[row, col])
        d = int(self.depth[row, col])
        v = float(self.value[row, col])
        if s == OUT:
            return ClassificationResult("Out", d, margin=v)
        if s == WITNESSED:
            ps, _, res = self.witnesses[(row, col)]
            return ClassificationResult("WitnessedIn", d, residual=res, path=ps)
        return ClassificationResult("Unknown", d, residual=None if math.isinf(v) else v)

    def non_out_mask(self) -> np.ndarray:
        return self.status != OUT

    def disc_mask(self) -> np.ndarray:
        return np.abs(self.spec.pixel_centers()) <= 1

    def non_out_fraction(self) -> float:
        """Share of pixel centres in the closed unit disc that are not certified Out."""
        disc = self.disc_mask()
        return float(np.count_nonzero(self.non_out_mask() & disc) / np.count_nonzero(disc))

    def non_out_points(self) -> np.ndarray:
        return self.spec.pixel_centers()[self.non_out_mask()]


def provenance(p: TentParameter, g: GifsGraph, spec: RenderSpec) -> dict:
    return {
        "word": str(p.kneading.period) if not len(p.kneading.preperiod) else str(p.kneading),
        "lambda": p.lam.to_decimal(30),
        "depth": spec.depth,
        "slack": spec.slack,
        "budget": spec.budget,
        "rigorous": spec.rigorous,
        "graph_sha1": content_hash(export(g, "json")),
        "region": list(spec.region),
        "resolution": list(spec.resolution),
        "C": [complex(spec.C).real, complex(spec.C).imag],
    }


def classify_pixel(z: complex, g: Union[GifsGraph, TentParameter], spec: RenderSpec) -> ClassificationResult:
    """certify_exclusion with the |z| >= 1 fast path (|z| > 1 is Out at depth 0)."""
    if isinstance(g, TentParameter):
        g = build_graphs(g)[2]
    z = complex(z)
    az = abs(z)
    if az > 1:
        return ClassificationResult("Out", 0, margin=az - 1)
    if az == 1:
        return ClassificationResult("Unknown", 0)
    return certify_exclusion(z, spec.C, spec.depth, g, slack=spec.slack, budget=spec.budget,
                             rigorous=spec.rigorous, precision_bits=spec.precision_bits)


def render_slice(p: TentParameter, spec: RenderSpec, g: Optional[GifsGraph] = None) -> SliceImage:
    if g is None:
        g = build_graphs(p)[2]
    zs = spec.pixel_centers()
    h, w = zs.shape
    if spec.rigorous:
        status = np.empty((h, w), np.int8)
        depth = np.empty((h, w), np.int64)
        value = np.empty((h, w), np.float64)
        for idx, z in np.ndenumerate(zs):
            r = classify_pixel(z, g, spec)
            status[idx] = OUT if r.verdict == "Out" else UNKNOWN
            depth[idx] = r.depth
            v = r.value
            value[idx] = math.inf if v is None else v
    else:
        s, d, v, _ = classify_many(zs.ravel(), spec.C, spec.depth, to_csr(g), spec.slack, spec.budget)
        status = np.where(s == _kernel.STATUS_OUT, OUT, UNKNOWN).astype(np.int8).reshape(h, w)
        depth = d.reshape(h, w)
        value = v.reshape(h, w)
    img = SliceImage(spec, status, depth, value, provenance(p, g, spec))
    if spec.overlay_witnesses:
        for ps, wit in all_witnesses(g, spec.g0max, spec.g1max, spec.C):
            pix = spec.pixel_of(wit.z)
            if pix is None:
                continue
            prev = img.witnesses.get(pix)
            if prev is None or wit.residual < prev[2]:
                img.witnesses[pix] = (ps, wit.z, wit.residual)
                img.status[pix] = WITNESSED
        img.provenance["witnesses"] = len(img.witnesses)
    return img


def write_ppm(img: SliceImage) -> bytes:
    h, w = img.status.shape
    lut = np.array([COLORS[OUT], COLORS[UNKNOWN], COLORS[WITNESSED]], np.uint8)
    return b"P6\n%d %d\n255\n" % (w, h) + lut[img.status].tobytes()


def write_csv(img: SliceImage) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["re_z", "im_z", "verdict", "depth", "margin_or_residual"])
    zs = img.spec.pixel_centers()
    for (row, col), z in np.ndenumerate(zs):
        v = float(img.value[row, col])
        if img.status[row, col] == WITNESSED:
            v = img.witnesses[(row, col)][2]
        wr.writerow([repr(float(z.real)), repr(float(z.imag)), VERDICTS[int(img.status[row, col])],
                     int(img.depth[row, col]), "" if math.isinf(v) else repr(v)])
    return buf.getvalue()


def write_sidecar(img: SliceImage) -> str:
    return json.dumps(img.provenance, indent=2, sort_keys=True) + "\n"


def spec_from_settings(settings: Settings, **kw) -> RenderSpec:
    base = dict(depth=settings.depth, slack=settings.slack, g0max=settings.g0max,
                g1max=settings.g1max, precision_bits=settings.precision_bits)
    base.update(kw)
    return RenderSpec(**base)
