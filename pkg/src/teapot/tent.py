"""Tent maps f(x) = lam*x + 2 - lam (x <= c), lam - lam*x (x > c), c = 1 - 1/lam.

Everything here is exact: points of the critical orbit live in Q(lam) and
branch decisions use exact signs.  Ties at the critical point are resolved by
following a one-sided perturbation ``x + s*eps`` (``s = -1`` from the left,
``+1`` from the right); the left branch preserves ``s`` and the right branch
flips it.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath

from .errors import OrbitNotFinite, PreconditionError, TieError
from .exact_arith import (
    AlgebraicNumber,
    FieldElement,
    NumberField,
    RationalPoly,
    isolate_real_roots,
    minimal_polynomial,
)
from .words import (
    BinaryWord,
    EventuallyPeriodicWord,
    Order,
    WordView,
    flip_last,
    is_admissible,
    ones_parity,
    symbols,
    twisted_lex_compare,
)

SIDES = ("from_left", "from_right", "exact_or_fail")
DEFAULT_OFFSETS = (8, 12, 16)
DEFAULT_MAX_STEPS = 1000


# ---------------------------------------------------------------------------
# one step of the map for an arbitrary slope in a number field


def _side(slope: FieldElement, x: FieldElement) -> int:
    """Sign of x - (1 - 1/slope), computed without dividing (slope > 0)."""
    return (slope * x - slope + 1).sign()


def _branch(slope: FieldElement, x: FieldElement, symbol: int) -> FieldElement:
    if symbol == 0:
        return slope * x + 2 - slope
    return slope - slope * x


def _check_unit(x: FieldElement) -> None:
    if x.sign() < 0 or (x - 1).sign() > 0:
        raise PreconditionError("point outside [0, 1]")


def _one_sided_symbols(slope: FieldElement, x: FieldElement, s: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        d = _side(slope, x)
        if d == 0:
            if s == 0:
                raise TieError("orbit hits the critical point")
            sym = 1 if s > 0 else 0
        else:
            sym = 1 if d > 0 else 0
        out.append(sym)
        x = _branch(slope, x, sym)
        if sym == 1:
            s = -s
    return out


def _initial_sign(x: FieldElement, side: str) -> int:
    if side not in SIDES:
        raise PreconditionError(f"unknown side convention {side!r}")
    s = {"from_left": -1, "from_right": 1, "exact_or_fail": 0}[side]
    # perturbations at the ends of [0, 1] always point inward
    if s < 0 and x.is_zero():
        s = 1
    elif s > 0 and (x - 1).is_zero():
        s = -1
    return s


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True, eq=False)
class TentParameter:
    lam: AlgebraicNumber
    kneading: EventuallyPeriodicWord
    critical_orbit: tuple[FieldElement, ...]
    field: NumberField = field(repr=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TentParameter)
            and self.field.modulus == other.field.modulus
            and self.kneading == other.kneading
        )

    def __hash__(self) -> int:
        return hash((self.field.modulus, self.kneading))

    @property
    def slope(self) -> FieldElement:
        return self.field.gen()

    @property
    def critical_point(self) -> FieldElement:
        lam = self.slope
        return 1 - lam.inverse()

    def __float__(self) -> float:
        return float(self.lam)

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "kneading": str(self.kneading),
            "orbit_size": len(self.critical_orbit),
        }

    @classmethod
    def from_lambda(cls, lam: AlgebraicNumber, max_steps: int = DEFAULT_MAX_STEPS) -> "TentParameter":
        """Build a parameter from a postcritically finite slope in (sqrt2, 2)."""
        K = NumberField(lam)
        lam = K.alpha
        if K.sign(RationalPoly.from_ints([-2, 0, 1])) <= 0 or K.sign(RationalPoly.from_ints([-2, 1])) >= 0:
            raise PreconditionError("slope must lie strictly between sqrt(2) and 2")
        orbit = _critical_orbit(K.gen(), max_steps)
        if orbit is None:
            raise OrbitNotFinite(f"critical orbit not closed after {max_steps} steps")
        knead = _kneading(K.gen(), max_steps)
        return cls(K.alpha, knead, tuple(orbit), K)


def _critical_orbit(slope: FieldElement, max_steps: int) -> Optional[list[FieldElement]]:
    x = slope.field(1)
    orbit = [x]
    seen = {x}
    for _ in range(max_steps):
        d = _side(slope, x)
        x = _branch(slope, x, 1 if d > 0 else 0)
        if x in seen:
            return orbit
        seen.add(x)
        orbit.append(x)
    return None


def _kneading(slope: FieldElement, max_steps: int) -> EventuallyPeriodicWord:
    x = slope.field(1)
    s = -1
    states: dict = {}
    syms: list[int] = []
    for i in range(max_steps + 1):
        key = (x, s)
        if key in states:
            k = states[key]
            return EventuallyPeriodicWord(BinaryWord(tuple(syms[:k])), BinaryWord(tuple(syms[k:])))
        states[key] = i
        d = _side(slope, x)
        sym = (1 if s > 0 else 0) if d == 0 else (1 if d > 0 else 0)
        syms.append(sym)
        x = _branch(slope, x, sym)
        if sym == 1:
            s = -s
    raise OrbitNotFinite(f"kneading sequence not periodic after {max_steps} steps")


def is_pcf(lam: Union[AlgebraicNumber, NumberField], max_steps: int = DEFAULT_MAX_STEPS):
    """Critical orbit (starting at the critical value 1) if it closes within ``max_steps`` steps."""
    K = lam if isinstance(lam, NumberField) else NumberField(lam)
    if K.sign(RationalPoly.from_ints([-2, 0, 1])) <= 0 or K.sign(RationalPoly.from_ints([-2, 1])) >= 0:
        raise PreconditionError("slope must lie strictly between sqrt(2) and 2")
    orbit = _critical_orbit(K.gen(), max_steps)
    return None if orbit is None else tuple(orbit)


def kneading_sequence(p: TentParameter) -> EventuallyPeriodicWord:
    return p.kneading


def tent_eval(p: TentParameter, x):
    """Image of ``x`` under the tent map.

    ``x`` in Q(lam) gives an exact result.  A real ``x`` (float, string, mpf)
    is evaluated in outward-rounded interval arithmetic and an mpmath interval
    is returned; an interval straddling the critical point raises TieError.
    """
    if isinstance(x, FieldElement):
        _check_unit(x)
        d = _side(p.slope, x)
        return _branch(p.slope, x, 1 if d > 0 else 0)
    iv = mpmath.iv
    lo, hi = p.field.interval(RationalPoly.x(), Fraction(1, 2 ** (iv.prec + 8)))
    lam = iv.mpf([mpmath.mpf(lo.numerator) / lo.denominator, mpmath.mpf(hi.numerator) / hi.denominator])
    xi = iv.mpf(x)
    if xi.a < 0 or xi.b > 1:
        raise PreconditionError("point outside [0, 1]")
    c = 1 - 1 / lam
    if xi.b <= c.a:
        return lam * xi + 2 - lam
    if xi.a >= c.b:
        return lam - lam * xi
    if xi.a == xi.b:
        # both branches agree at the critical point
        return (lam * xi + 2 - lam) | (lam - lam * xi)
    raise TieError("interval straddles the critical point")


def itinerary(p: TentParameter, x, n: int, side: str = "from_left") -> BinaryWord:
    """First ``n`` symbols of the itinerary of ``x`` (I0 = [0, c], I1 = [c, 1])."""
    x = p.field(x)
    _check_unit(x)
    return BinaryWord(tuple(_one_sided_symbols(p.slope, x, _initial_sign(x, side), n)))


def parry_polynomial(word: WordView) -> RationalPoly:
    """Polynomial in lam vanishing when the critical value returns to 1 along ``word``."""
    w = symbols(word, len(word)) if not isinstance(word, EventuallyPeriodicWord) else None
    if w is None:
        raise PreconditionError("parry_polynomial needs a finite word")
    if not w:
        raise PreconditionError("word must be nonempty")
    lam = RationalPoly.x()
    p = RationalPoly.const(1)
    for sym in w:
        p = lam * p + 2 - lam if sym == 0 else lam - lam * p
    return p - 1


def realize_lambda(word: WordView, max_steps: Optional[int] = None) -> Optional[TentParameter]:
    """The PCF parameter whose kneading sequence is ``word`` repeated forever, if any."""
    w = BinaryWord(symbols(word, len(word)))
    if not len(w):
        raise PreconditionError("word must be nonempty")
    target = EventuallyPeriodicWord.periodic(w)
    if not is_admissible(target):
        return None
    P = parry_polynomial(w)
    if P.is_zero():
        return None
    steps = max_steps if max_steps is not None else 4 * len(w) + 8
    for root in isolate_real_roots(P, 1, 2):
        K = NumberField(minimal_polynomial(root), check_irreducible=False)
        if K.sign(RationalPoly.from_ints([-2, 0, 1])) <= 0 or K.sign(RationalPoly.from_ints([-2, 1])) >= 0:
            continue
        try:
            param = TentParameter.from_lambda(K.alpha, steps)
        except OrbitNotFinite:
            continue
        if param.kneading == target and is_admissible(param.kneading):
            return param
    return None


# ---------------------------------------------------------------------------
# suitability


@dataclass(frozen=True)
class SuitabilityVerdict:
    """Outcome of a suitability check.

    ``failed_condition`` is 1, 2 or 3 for the three suitability conditions and
    0 for the base-vertex anchor (first symbol must be 1 under vertex indexing).
    ``failure_index`` is the offending symbol index for conditions 0 and 1 and
    the length of the offending prefix for conditions 2 and 3.
    """

    accepted: bool
    failed_condition: Optional[int] = None
    failure_index: Optional[int] = None

    def __post_init__(self):
        if self.accepted != (self.failed_condition is None):
            raise ValueError("failed_condition must be present iff not accepted")


def run_bound(p: TentParameter) -> Optional[int]:
    """m such that the kneading sequence starts with 1 0^m 1 (None if it never returns to 1)."""
    k = p.kneading
    horizon = len(k.preperiod) + 2 * len(k.period) + 1
    s = k.take(horizon)
    if s[0] != 1:
        raise AssertionError("kneading sequence must start with 1")
    for i in range(1, horizon):
        if s[i] == 1:
            return i - 1
    return None


def upper_kneading_limit(p: TentParameter) -> EventuallyPeriodicWord:
    """Limit of kneading sequences of slopes decreasing to lam.

    For purely periodic kneading beta^inf this is beta' beta^inf, with beta'
    equal to beta with its last letter flipped; otherwise the kneading
    sequence itself.
    """
    k = p.kneading
    if len(k.preperiod):
        return k
    return EventuallyPeriodicWord(flip_last(k.period), k.period)


@functools.lru_cache(maxsize=256)
def sampled_kneading_prefix(p: TentParameter, offset_bits: int, n: int) -> BinaryWord:
    """First ``n`` kneading symbols of the slope lam + 2**-offset_bits (exact, in Q(lam))."""
    slope = p.slope + Fraction(1, 2 ** offset_bits)
    if (slope - 2).sign() >= 0:
        raise PreconditionError("sampled slope must stay below 2")
    one = p.field(1)
    return BinaryWord(tuple(_one_sided_symbols(slope, one, -1, n)))


def suitability_targets(p: TentParameter, n: int, mode: str = "exact",
                        offsets: Sequence[int] = DEFAULT_OFFSETS) -> list[BinaryWord]:
    if mode == "exact":
        return [BinaryWord(upper_kneading_limit(p).take(n))]
    if mode == "sampled":
        return [sampled_kneading_prefix(p, int(j), n) for j in offsets]
    raise PreconditionError(f"unknown mode {mode!r}")


def suitability_check(w: WordView, n: int, p: TentParameter, mode: str = "exact", *,
                      offsets: Sequence[int] = DEFAULT_OFFSETS, bound_ones: bool = False,
                      indexing: str = "vertex") -> SuitabilityVerdict:
    """Check the three suitability conditions on the first ``n`` symbols of ``w``.

    Condition 1 bounds runs of 0s by m where the kneading sequence starts with
    1 0^m 1; ``bound_ones=True`` bounds runs of 1s instead.  Conditions 2 and
    3 compare every reversed prefix with the kneading prefixes of slopes just
    above lam (``mode="exact"``: the one-sided limit; ``mode="sampled"``:
    lam + 2**-j for each j in ``offsets``); equality is allowed only with an
    odd number of 1s.

    ``indexing="edge"`` applies the conditions to ``w`` as given, i.e. to the
    labels of a path in G.  ``indexing="vertex"`` (default) reads ``w`` as the
    sides of the vertices along the path: ``w[0]`` must be 1 (the base block)
    and the conditions apply to ``w[1:]``.  Failure indices always refer to
    positions in ``w``.
    """
    s = symbols(w, n)
    shift = 0
    if indexing == "vertex":
        if n == 0:
            return SuitabilityVerdict(True)
        if s[0] != 1:
            return SuitabilityVerdict(False, 0, 0)
        s, shift = s[1:], 1
    elif indexing != "edge":
        raise PreconditionError(f"unknown indexing {indexing!r}")
    m = run_bound(p)
    if m is not None:
        sym = 1 if bound_ones else 0
        run = 0
        for i, x in enumerate(s):
            run = run + 1 if x == sym else 0
            if run > m:
                return SuitabilityVerdict(False, 1, i + shift)
    targets = suitability_targets(p, len(s), mode, tuple(offsets))
    for k in range(1, len(s) + 1):
        r = BinaryWord(tuple(reversed(s[:k])))
        odd = ones_parity(r) == "odd"
        for t in targets:
            cmp = twisted_lex_compare(r, t, k)
            if cmp == Order.GREATER:
                return SuitabilityVerdict(False, 2, k + shift)
            if cmp == Order.EQUAL and not odd:
                return SuitabilityVerdict(False, 3, k + shift)
    return SuitabilityVerdict(True)


def suitability_disagreements(p: TentParameter, words, n: int, **kw) -> list[tuple[str, SuitabilityVerdict, SuitabilityVerdict]]:
    """Words on which exact and sampled modes disagree (reported, not resolved)."""
    out = []
    for w in words:
        a = suitability_check(w, n, p, "exact", **kw)
        b = suitability_check(w, n, p, "sampled", **kw)
        if a.accepted != b.accepted:
            out.append((str(BinaryWord(symbols(w, n))), a, b))
    return out
