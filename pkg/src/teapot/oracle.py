"""Brute-force point cloud of the Master Teapot over critically periodic tent maps.

Each realized kneading word contributes every complex root of the minimal
polynomial of its slope, paired with that slope.
"""
from __future__ import annotations

import cmath
import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Optional, Sequence

import mpmath
import numpy as np

from .tent import TentParameter, realize_lambda
from .words import BinaryWord, EventuallyPeriodicWord, is_admissible

ROOT_DPS = 40
ROOT_RESIDUAL = mpmath.mpf(10) ** -20


@dataclass(frozen=True)
class TeapotPoint:
    z: complex
    lambda_value: float
    lambda_error: float
    word: BinaryWord
    inside_disc: bool


def _candidates(max_period: int) -> list[tuple[int, ...]]:
    out = []
    for n in range(1, max_period + 1):
        for tail in product((0, 1), repeat=n - 1):
            w = (1,) + tail
            e = EventuallyPeriodicWord.periodic(w)
            if len(e.period) == n and is_admissible(e):
                out.append(w)
    return out


def _realize(w: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    return w if realize_lambda(w) is not None else None


def enumerate_words(max_period: int, workers: int = 1) -> list[BinaryWord]:
    """Primitive words starting with 1, of length <= max_period, that realize a slope in (sqrt2, 2)."""
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    cands = _candidates(max_period)
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            found = list(ex.map(_realize, cands, chunksize=16))
    else:
        found = [_realize(w) for w in cands]
    return [BinaryWord(w) for w in found if w is not None]


def conjugates(p: TentParameter, dps: int = ROOT_DPS) -> list[complex]:
    """All roots of the minimal polynomial of lambda, ordered by angle, residual-checked."""
    coeffs = p.field.modulus.primitive()
    hi_first = [mpmath.mpf(c) for c in reversed(coeffs)]
    with mpmath.workdps(dps):
        if len(hi_first) == 2:
            roots = [-hi_first[1] / hi_first[0]]
        else:
            roots = mpmath.polyroots(hi_first, maxsteps=200, extraprec=4 * dps)
        scale = max(abs(c) for c in hi_first)
        for r in roots:
            if abs(mpmath.polyval(hi_first, r)) > ROOT_RESIDUAL * scale:
                raise ArithmeticError(f"root {r} fails the residual check")
        out = [complex(r) for r in roots]
    return sorted(out, key=lambda z: (cmath.phase(z), abs(z)))


def points_for(p: TentParameter, word: BinaryWord) -> list[TeapotPoint]:
    r = p.lam.refine(Fraction(1, 2 ** 60))
    lo, hi = r.lo, r.hi
    lam = float((lo + hi) / 2)
    err = float(hi - lo)
    return [TeapotPoint(z, lam, err, word, abs(z) < 1) for z in conjugates(p)]


def teapot_cloud(max_period: int, words: Optional[Sequence[BinaryWord]] = None) -> list[TeapotPoint]:
    """Deterministic cloud: words in enumeration order, roots by angle."""
    ws = enumerate_words(max_period) if words is None else words
    out = []
    for w in ws:
        p = realize_lambda(w)
        if p is None or p.kneading != EventuallyPeriodicWord.periodic(w):
            raise AssertionError(f"word {w} no longer realizes its kneading")
        out.extend(points_for(p, w))
    return out


def write_cloud_csv(points: Sequence[TeapotPoint]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["word", "lambda", "re_z", "im_z", "abs_z", "inside_disc"])
    for pt in points:
        wr.writerow([str(pt.word), repr(pt.lambda_value), repr(pt.z.real), repr(pt.z.imag),
                     repr(abs(pt.z)), str(pt.inside_disc).lower()])
    return buf.getvalue()


@dataclass(frozen=True)
class CrossCheckRow:
    point: TeapotPoint
    verdict: str
    ok: Optional[bool]  # None for diagnostic rows
    distance: Optional[float] = None


@dataclass(frozen=True)
class CrossCheckReport:
    hard: list[CrossCheckRow]
    diagnostic: list[CrossCheckRow]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.hard)


def cross_check_slice(cloud: Sequence[TeapotPoint], p: TentParameter, delta: float,
                      classify: Callable, non_out: Optional[np.ndarray] = None) -> CrossCheckReport:
    """Hard: conjugates of this very slope inside the disc must not be Out.
    Diagnostic: points at nearby heights, with distance to the nearest non-Out sample."""
    lam = float(p)
    hard, diag = [], []
    for pt in cloud:
        if not pt.inside_disc:
            continue
        same = EventuallyPeriodicWord.periodic(pt.word) == p.kneading
        if same:
            v = classify(pt.z).verdict
            hard.append(CrossCheckRow(pt, v, v != "Out"))
        elif delta > 0 and abs(pt.lambda_value - lam) <= delta:
            v = classify(pt.z).verdict
            d = None
            if non_out is not None and len(non_out):
                d = float(np.min(np.abs(np.asarray(non_out) - pt.z)))
            diag.append(CrossCheckRow(pt, v, None, d))
    return CrossCheckReport(hard, diag)
