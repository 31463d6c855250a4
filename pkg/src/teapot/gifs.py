"""Parametrized GIFS over the reversed Markov graph: composites, limit values,
exclusion certificates, membership witnesses and self-similarity numerics.

Every edge carries one of two affine maps in ``x`` whose coefficients are
polynomials in the parameter ``z``::

    L: x -> z*x + (2 - z)        R: x -> -z*x + z

A path ``e0 e1 ... e_{n-1}`` composes with the first edge outermost, so the
finite value of the path is ``F(0) = f_{e0}(f_{e1}(... f_{e_{n-1}}(0)))``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import mpmath
import numpy as np
from scipy.spatial.distance import directed_hausdorff

from . import _kernel
from .errors import PreconditionError
from .exact_arith import RationalPoly
from .markov import Edge, GifsGraph

DEFAULT_SLACK = 2.0 ** -40
DEFAULT_BUDGET = 20_000
WITNESS_TOL = 1e-10
SIMPLE_TOL = 1e-8
CLUSTER_TOL = 1e-6

Z = RationalPoly.x()
ONE = RationalPoly.const(1)


@dataclass(frozen=True)
class EdgeMap:
    label: str

    def __post_init__(self):
        if self.label not in ("L", "R"):
            raise ValueError(f"edge label must be L or R, got {self.label!r}")

    @property
    def sign(self) -> int:
        return 1 if self.label == "L" else -1

    @property
    def slope(self) -> RationalPoly:
        return Z if self.label == "L" else -Z

    @property
    def intercept(self) -> RationalPoly:
        return 2 - Z if self.label == "L" else Z

    def __call__(self, z, x):
        if self.label == "L":
            return z * x + 2 - z
        return z - z * x


EDGE_MAPS = {"L": EdgeMap("L"), "R": EdgeMap("R")}


@dataclass(frozen=True)
class AffineComposite:
    """``x -> a(z)*x + b(z)`` with ``a = sign * z**n``."""

    sign: int = 1
    n: int = 0
    b: RationalPoly = RationalPoly()

    @property
    def a(self) -> RationalPoly:
        return self.sign * Z ** self.n

    def then(self, other: "AffineComposite") -> "AffineComposite":
        """``self`` applied after ``other`` (``self`` outermost)."""
        return AffineComposite(
            self.sign * other.sign, self.n + other.n, self.b + self.a * other.b
        )

    def __call__(self, z, x=0):
        return self.sign * z ** self.n * x + self.b(z)

    def inverse_at(self, z, y):
        return (y - self.b(z)) / (self.sign * z ** self.n)


def _labels(edges) -> list[str]:
    if isinstance(edges, str):
        return list(edges)
    out = []
    prev: Optional[Edge] = None
    for e in edges:
        if isinstance(e, Edge):
            if prev is not None and prev.dst != e.src:
                raise PreconditionError(f"edges {prev} and {e} are not consecutive")
            prev = e
            out.append(e.label)
        else:
            out.append(str(e))
    return out


def compose(edges) -> AffineComposite:
    """Composite of a label string, a list of labels or a list of consecutive Edge objects."""
    acc = AffineComposite()
    for lab in reversed(_labels(edges)):
        m = EDGE_MAPS[lab]
        acc = AffineComposite(m.sign * acc.sign, acc.n + 1, m.intercept + m.slope * acc.b)
    return acc


def finite_value(z: complex, edges) -> complex:
    """b_n(z): the composite applied to the innermost seed 0."""
    val = 0
    for lab in reversed(_labels(edges)):
        val = EDGE_MAPS[lab](z, val)
    return val


def power_series_value(w, z: complex) -> complex:
    """sum_k z^k sigma_k c_{w_k}(z) with sigma_k = (-1)^(number of R before k)."""
    if isinstance(w, (tuple, list)) and w and isinstance(w[0], int):
        labels = ["L" if s == 0 else "R" for s in w]
    else:
        labels = _labels(w)
    total = 0
    zk = 1
    sigma = 1
    for lab in labels:
        c = 2 - z if lab == "L" else z
        total += sigma * zk * c
        zk *= z
        if lab == "R":
            sigma = -sigma
    return total


def tail_radius(z: complex) -> float:
    """Bound on |value| of every infinite path: max(|2-z|, |z|) / (1 - |z|)."""
    az = abs(z)
    if az >= 1:
        raise PreconditionError("tail radius needs |z| < 1")
    return max(abs(2 - z), az) / (1 - az)


# ---------------------------------------------------------------------------
# eventually periodic paths


@dataclass(frozen=True)
class PathSpec:
    """The infinite path gamma0 gamma1 gamma1 ... given by 1-based edge indices of ``graph``."""

    graph: GifsGraph = field(repr=False, compare=False)
    gamma0: tuple[int, ...]
    gamma1: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gamma0", tuple(int(i) for i in self.gamma0))
        object.__setattr__(self, "gamma1", tuple(int(i) for i in self.gamma1))
        if not self.gamma1:
            raise PreconditionError("gamma1 must be nonempty")
        g = self.graph
        v = g.base
        for k in self.gamma0 + self.gamma1:
            e = g.edge(k)
            if e.src != v:
                raise PreconditionError(f"edge e{k} does not start at vertex {v}")
            v = e.dst
        if v != g.edge(self.gamma1[0]).src:
            raise PreconditionError("gamma1 is not a closed cycle")

    @property
    def labels0(self) -> list[str]:
        return [self.graph.edge(k).label for k in self.gamma0]

    @property
    def labels1(self) -> list[str]:
        return [self.graph.edge(k).label for k in self.gamma1]

    def composites(self) -> tuple[AffineComposite, AffineComposite]:
        return compose(self.labels0), compose(self.labels1)

    def unrolled(self, periods: int) -> list[str]:
        return self.labels0 + self.labels1 * periods


def parse_edge_list(text: str) -> tuple[int, ...]:
    """``"1,2,3"`` or ``"e1,e2,e3"``; an empty string is the empty list."""
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t.strip().lstrip("eE")) for t in text.split(","))


def limit_value(ps: PathSpec, z: complex) -> complex:
    if abs(z) >= 1:
        raise PreconditionError("limit values need |z| < 1")
    F0, F1 = ps.composites()
    a1 = F1.sign * z ** F1.n
    if a1 == 1:
        raise ZeroDivisionError("cycle composite has slope 1")
    xstar = F1.b(z) / (1 - a1)
    return F0(z, xstar)


def limit_value_rational(ps: PathSpec) -> tuple[RationalPoly, RationalPoly]:
    """(num, den) with f_gamma = num/den and den = 1 - a1."""
    F0, F1 = ps.composites()
    den = 1 - F1.a
    return F0.a * F1.b + F0.b * den, den


@dataclass(frozen=True)
class WitnessRoot:
    z: complex
    residual: float
    multiplicity: int = 1


def _cleared(ps: PathSpec, C) -> list:
    num, den = limit_value_rational(ps)
    n = max(len(num.coeffs), len(den.coeffs))
    cn = list(num.coeffs) + [Fraction(0)] * (n - len(num.coeffs))
    cd = list(den.coeffs) + [Fraction(0)] * (n - len(den.coeffs))
    C = complex(C)
    if C.imag == 0:
        cr = Fraction(C.real)
        coeffs = [x - cr * y for x, y in zip(cn, cd)]
    else:
        coeffs = [complex(x) - C * complex(y) for x, y in zip(cn, cd)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _polish(coeffs, z0: complex, dps: int = 50) -> complex:
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpc(c) for c in coeffs]
        hi_first = cs[::-1]
        z = mpmath.mpc(z0)
        for _ in range(60):
            p, dp = mpmath.polyval(hi_first, z, derivative=True)
            if dp == 0:
                break
            step = p / dp
            z -= step
            if abs(step) < mpmath.mpf(10) ** (-dps + 5):
                break
        return complex(z)


def _roots(coeffs) -> list[tuple[complex, int]]:
    """Roots with multiplicities; clustered numerical roots are merged at their centroid."""
    if len(coeffs) <= 1:
        return []
    raw = np.roots(np.array([complex(c) for c in reversed(coeffs)]))
    raw = sorted(raw, key=lambda r: (round(abs(r), 12), round(cmath.phase(r), 12)))
    clusters: list[list[complex]] = []
    for r in raw:
        for cl in clusters:
            if abs(cl[0] - r) < CLUSTER_TOL:
                cl.append(complex(r))
                break
        else:
            clusters.append([complex(r)])
    out = []
    for cl in clusters:
        centre = sum(cl) / len(cl)
        z = _polish(coeffs, centre) if len(cl) == 1 else centre
        out.append((z, len(cl)))
    return out


def witness_roots(ps: PathSpec, C=1) -> list[WitnessRoot]:
    """Roots of num - C*den in the open unit disc that pass the residual check."""
    coeffs = _cleared(ps, C)
    if not coeffs:
        raise PreconditionError("f_gamma - C vanishes identically")
    out = []
    for z, mult in _roots(coeffs):
        if abs(z) >= 1:
            continue
        res = abs(limit_value(ps, z) - complex(C))
        if res < WITNESS_TOL / (1 - abs(z)):
            out.append(WitnessRoot(z, res, mult))
    out.sort(key=lambda w: (abs(w.z), cmath.phase(w.z)))
    return out


def enumerate_pathspecs(g: GifsGraph, g0max: int, g1max: int) -> list[PathSpec]:
    """All (gamma0, gamma1) with |gamma0| <= g0max, 1 <= |gamma1| <= g1max."""
    out = []
    heads = [((), g.base)]
    prefixes = [((), g.base)]
    for _ in range(g0max):
        heads = [(p + (i,), e.dst) for p, v in heads for i, e in g.out_edges(v)]
        prefixes.extend(heads)
    for p0, v in prefixes:
        walks = [((), v)]
        for _ in range(g1max):
            walks = [(p + (i,), e.dst) for p, u in walks for i, e in g.out_edges(u)]
            out.extend(PathSpec(g, p0, p1) for p1, u in walks if u == v)
    return out


def all_witnesses(g: GifsGraph, g0max: int, g1max: int, C=1) -> list[tuple[PathSpec, WitnessRoot]]:
    out = []
    for ps in enumerate_pathspecs(g, g0max, g1max):
        try:
            roots = witness_roots(ps, C)
        except PreconditionError:
            continue
        out.extend((ps, w) for w in roots)
    return out


# ---------------------------------------------------------------------------
# exclusion certificates


@dataclass(frozen=True)
class ClassificationResult:
    """``Out`` carries the pruning margin, the other verdicts a residual."""

    verdict: str  # "Out", "WitnessedIn" or "Unknown"
    depth: int
    margin: Optional[float] = None
    residual: Optional[float] = None
    path: Optional[PathSpec] = None
    nodes: int = 0
    budget_exhausted: bool = False

    def __post_init__(self):
        if self.verdict == "Out" and not (self.margin is not None and self.margin > 0):
            raise ValueError("Out needs a positive margin")

    @property
    def value(self) -> float:
        return self.margin if self.verdict == "Out" else self.residual


@dataclass(frozen=True)
class CsrGraph:
    out_start: np.ndarray
    out_dst: np.ndarray
    out_lab: np.ndarray
    base: int


def to_csr(g: GifsGraph) -> CsrGraph:
    n = len(g.vertices)
    start = [0]
    dst, lab = [], []
    for v in range(n):
        for _, e in g.out_edges(v):
            dst.append(e.dst)
            lab.append(0 if e.label == "L" else 1)
        start.append(len(dst))
    return CsrGraph(np.array(start, np.int64), np.array(dst, np.int64), np.array(lab, np.int8), g.base)


def _result(status: int, depth: int, value: float, nodes: int) -> ClassificationResult:
    if status == _kernel.STATUS_OUT:
        return ClassificationResult("Out", int(depth), margin=float(value), nodes=int(nodes))
    res = None if math.isinf(value) else float(value)
    return ClassificationResult("Unknown", int(depth), residual=res, nodes=int(nodes),
                                budget_exhausted=status == _kernel.STATUS_BUDGET)


def classify_many(zs, C, depth: int, g: Union[GifsGraph, CsrGraph], slack: float = DEFAULT_SLACK,
                  budget: int = DEFAULT_BUDGET):
    """Vectorized float-mode classification; returns raw arrays (status, depth, value, nodes)."""
    csr = g if isinstance(g, CsrGraph) else to_csr(g)
    zs = np.ascontiguousarray(np.asarray(zs, np.complex128).ravel())
    return _kernel.classify_many(zs, complex(C), int(depth), float(slack), csr.out_start,
                                 csr.out_dst, csr.out_lab, csr.base, int(budget))


def certify_exclusion(z: complex, C, depth: int, g: GifsGraph, *, slack: float = DEFAULT_SLACK,
                      budget: int = DEFAULT_BUDGET, rigorous: bool = False,
                      precision_bits: int = 128) -> ClassificationResult:
    """Branch-and-prune search for a proof that no infinite path of ``g`` reaches ``C`` at ``z``."""
    z = complex(z)
    if abs(z) >= 1:
        raise PreconditionError("certify_exclusion needs |z| < 1")
    if rigorous:
        return _certify_rigorous(z, complex(C), depth, g, slack, budget, precision_bits)
    csr = to_csr(g)
    s, d, v, k = _kernel.classify_one(z, complex(C), int(depth), float(slack), csr.out_start,
                                      csr.out_dst, csr.out_lab, csr.base, int(budget))
    return _result(s, d, v, k)


def _certify_rigorous(z, C, depth, g, slack, budget, prec) -> ClassificationResult:
    old = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        return _rigorous_search(z, C, depth, g, slack, budget)
    finally:
        mpmath.iv.prec = old


def _rigorous_search(z, C, depth, g, slack, budget) -> ClassificationResult:
    # exact Gaussian rationals for the composites, outward-rounded intervals for the roots
    iv = mpmath.iv
    zr, zi = Fraction(z.real), Fraction(z.imag)
    cr, ci = Fraction(C.real), Fraction(C.imag)

    def ivq(q: Fraction):
        return iv.mpf(q.numerator) / iv.mpf(q.denominator)

    def modulus(re: Fraction, im: Fraction):
        return iv.sqrt(ivq(re * re + im * im))

    az = modulus(zr, zi)
    m1, m2 = modulus(2 - zr, -zi), az
    M = iv.mpf([max(m1.a, m2.a), max(m1.b, m2.b)])
    R = M / (1 - az)
    slack_iv = iv.mpf(slack)

    def excess(br, bi, n):
        return modulus(br - cr, bi - ci) - az ** n * R

    ex0 = excess(Fraction(0), Fraction(0), 0)
    if ex0.a > slack_iv.b:
        return ClassificationResult("Out", 0, margin=float(ex0.a), nodes=1)
    if depth == 0:
        return ClassificationResult("Unknown", 0, residual=float(abs(complex(cr, ci))), nodes=1)
    out_edges = [[(e.dst, e.label) for _, e in g.out_edges(v)] for v in range(len(g.vertices))]
    two_r, two_i = 2 - zr, -zi
    nodes = 1
    margin = None
    best = math.inf
    deepest = 0
    # stack of (vertex, level, b_re, b_im, a_re, a_im)
    stack = [(g.base, 0, Fraction(0), Fraction(0), Fraction(1), Fraction(0))]
    while stack:
        v, lvl, br, bi, ar, ai = stack.pop()
        for dst, lab in reversed(out_edges[v]):
            if lab == "L":
                tr, ti = two_r, two_i
                nar, nai = ar * zr - ai * zi, ar * zi + ai * zr
            else:
                tr, ti = zr, zi
                nar, nai = -(ar * zr - ai * zi), -(ar * zi + ai * zr)
            nbr = br + ar * tr - ai * ti
            nbi = bi + ar * ti + ai * tr
            nodes += 1
            if nodes > budget:
                return ClassificationResult("Unknown", lvl + 1, residual=None if math.isinf(best) else best,
                                            nodes=nodes, budget_exhausted=True)
            ex = excess(nbr, nbi, lvl + 1)
            if ex.a > slack_iv.b:
                lo = float(ex.a)
                margin = lo if margin is None else min(margin, lo)
                deepest = max(deepest, lvl + 1)
                continue
            if lvl + 1 == depth:
                best = min(best, float(abs(complex(float(nbr - cr), float(nbi - ci)))))
                continue
            stack.append((dst, lvl + 1, nbr, nbi, nar, nai))
    if math.isinf(best):
        return ClassificationResult("Out", deepest, margin=margin, nodes=nodes)
    return ClassificationResult("Unknown", depth, residual=best, nodes=nodes)


# ---------------------------------------------------------------------------
# limit sets


def sample_limit_set(z: complex, depth: int, g: GifsGraph, mode: str = "exhaustive",
                     count: int = 1000, seed: int = 0) -> np.ndarray:
    """Depth-n finite values over all paths (deduplicated) or over ``count`` seeded random walks."""
    z = complex(z)
    if abs(z) >= 1:
        raise PreconditionError("limit sets need |z| < 1")
    csr = to_csr(g)
    if mode == "exhaustive":
        # forward accumulation: b += a*c, a *= slope
        level = [(g.base, 0j, 1 + 0j)]
        for _ in range(depth):
            nxt = []
            for v, b, a in level:
                for e in range(csr.out_start[v], csr.out_start[v + 1]):
                    if csr.out_lab[e] == 0:
                        nxt.append((int(csr.out_dst[e]), b + a * (2 - z), a * z))
                    else:
                        nxt.append((int(csr.out_dst[e]), b + a * z, -a * z))
            level = nxt
        return np.unique(np.round(np.array([b for _, b, _ in level], np.complex128), 14))
    if mode == "random":
        rng = np.random.default_rng(seed)
        out = np.empty(count, np.complex128)
        for i in range(count):
            v, b, a = g.base, 0j, 1 + 0j
            for _ in range(depth):
                lo, hi = csr.out_start[v], csr.out_start[v + 1]
                e = lo + int(rng.integers(hi - lo))
                if csr.out_lab[e] == 0:
                    b, a = b + a * (2 - z), a * z
                else:
                    b, a = b + a * z, -a * z
                v = int(csr.out_dst[e])
            out[i] = b
        return out
    raise ValueError(f"unknown sampling mode {mode!r}")


# ---------------------------------------------------------------------------
# self-similarity


@dataclass(frozen=True)
class SelfSimCenter:
    """``unique_to_depth = k``: every path leaving gamma within its first k edges
    was excluded by the search (a report, not a proof)."""

    z: complex
    simple: bool
    unique_to_depth: int
    derivative: complex
    competitors_alive: Optional[int] = None


def _competitors(ps: PathSpec, z: complex, C: complex, depth: int, slack: float,
                 budget: int) -> Optional[tuple[int, int]]:
    """(survivors off gamma at ``depth``, earliest level at which a survivor left gamma).

    Branches that leave gamma late cannot be pruned within a fixed depth, so the
    divergence level is what measures uniqueness.  Returns None on budget.
    """
    g = ps.graph
    gamma = ps.gamma0 + ps.gamma1 * (depth // len(ps.gamma1) + 1)
    R = tail_radius(z)
    az = abs(z)
    alive = 0
    first_split = depth + 1
    nodes = 0
    stack = [(g.base, 0, 0j, 1 + 0j, 0)]  # split level 0 means still on gamma
    while stack:
        v, lvl, b, a, split = stack.pop()
        for i, e in g.out_edges(v):
            if e.label == "L":
                nb, na = b + a * (2 - z), a * z
            else:
                nb, na = b + a * z, -a * z
            nodes += 1
            if nodes > budget:
                return None
            if abs(nb - C) - az ** (lvl + 1) * R > slack:
                continue
            child = split if split or gamma[lvl] == i else lvl + 1
            if lvl + 1 == depth:
                if child:
                    alive += 1
                    first_split = min(first_split, child)
                continue
            stack.append((e.dst, lvl + 1, nb, na, child))
    return alive, first_split


def selfsim_center(ps: PathSpec, C=1, uniqueness_depth: int = 0, near: Optional[complex] = None, *,
                   slack: float = DEFAULT_SLACK, budget: int = 200_000) -> SelfSimCenter:
    coeffs = _cleared(ps, C)
    if not coeffs:
        raise PreconditionError("f_gamma - C vanishes identically")
    roots = [(z, m) for z, m in _roots(coeffs) if abs(z) < 1]
    if not roots:
        raise PreconditionError("no root of f_gamma = C in the open unit disc")
    if near is not None:
        z, mult = min(roots, key=lambda r: abs(r[0] - near))
    else:
        z, mult = roots[0]
    dp = RationalPoly(tuple(c for c in coeffs)).derivative() if all(isinstance(c, Fraction) for c in coeffs) else None
    deriv = complex(dp(z)) if dp is not None else complex(np.polyval(np.polyder(np.array(coeffs[::-1], complex)), z))
    simple = mult == 1 and abs(deriv) > SIMPLE_TOL
    if uniqueness_depth <= 0:
        return SelfSimCenter(z, simple, 0, deriv)
    found = _competitors(ps, z, complex(C), uniqueness_depth, slack, budget)
    if found is None:
        return SelfSimCenter(z, simple, 0, deriv, None)
    alive, first_split = found
    return SelfSimCenter(z, simple, min(first_split - 1, uniqueness_depth), deriv, alive)


def renormalization_map(ps: PathSpec, z: complex):
    """Phi = F0 o F1^-1 o F0^-1, which strips the first gamma1 block off the path."""
    F0, F1 = ps.composites()
    return lambda x: F0(z, F1.inverse_at(z, F0.inverse_at(z, x)))


def magnification(ps: PathSpec, z: complex, h: float = 1e-4) -> complex:
    """kappa = 1/a1(z), checked against a central difference of the renormalization map."""
    z = complex(z)
    if z == 0:
        raise PreconditionError("magnification is undefined at z = 0")
    if abs(z) >= 1:
        raise PreconditionError("magnification needs |z| < 1")
    _, F1 = ps.composites()
    kappa = 1 / (F1.sign * z ** F1.n)
    x = limit_value(ps, z)
    phi = renormalization_map(ps, z)
    fd = (phi(x + h) - phi(x - h)) / (2 * h)
    if abs(fd - kappa) > 1e-6 * max(1.0, abs(kappa)):
        raise ArithmeticError(f"finite difference {fd} disagrees with 1/a1 = {kappa}")
    return kappa


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two planar clouds given as complex arrays."""
    pa = np.column_stack([a.real, a.imag])
    pb = np.column_stack([b.real, b.imag])
    return max(directed_hausdorff(pa, pb)[0], directed_hausdorff(pb, pa)[0])


def hausdorff_selfsim_check(points, center: complex, kappa: complex, eps: float, levels: int) -> list[float]:
    """Distances between consecutive windows kappa^l (points - center) cut to the eps-disc, l = 0..levels.

    ``points`` is one cloud used at every level, or a sequence of ``levels + 1``
    clouds (one per level, e.g. rendered at matching resolution).
    """
    if levels < 2:
        raise PreconditionError("need at least 2 levels")
    if isinstance(points, np.ndarray) or (points and np.isscalar(points[0])):
        clouds = [np.asarray(points, np.complex128)] * (levels + 1)
    else:
        clouds = [np.asarray(p, np.complex128) for p in points]
        if len(clouds) != levels + 1:
            raise PreconditionError(f"expected {levels + 1} clouds, got {len(clouds)}")
    windows = []
    for l, cloud in enumerate(clouds):
        w = kappa ** l * (cloud - center)
        w = w[np.abs(w) <= eps]
        if w.size == 0:
            raise PreconditionError(f"window {l} is empty")
        windows.append(w)
    return [hausdorff(windows[l], windows[l + 1]) for l in range(levels)]


def selfsim_windows(ps: PathSpec, center: complex, kappa: complex, eps: float, levels: int, *,
                    C=1, resolution: int = 200, base_depth: int = 12, slack: float = DEFAULT_SLACK,
                    budget: int = DEFAULT_BUDGET) -> list[np.ndarray]:
    """Non-Out pixel centres of the windows center + eps*u/kappa^l, u on a square grid over [-1,1]^2.

    Level ``l`` is classified at depth ``base_depth + l*|gamma1|`` so the
    search resolves the same relative scale at every level.
    """
    u = (np.arange(resolution) + 0.5) / resolution * 2 - 1
    U = (u[None, :] + 1j * u[::-1, None]).ravel()
    csr = to_csr(ps.graph)
    out = []
    for l in range(levels + 1):
        zs = center + eps * U / kappa ** l
        status, _, _, _ = classify_many(zs, C, base_depth + l * len(ps.gamma1), csr, slack, budget)
        out.append(zs[status != _kernel.STATUS_OUT])
    return out
