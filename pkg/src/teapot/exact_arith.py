"""Exact polynomial arithmetic over Q, Sturm root isolation and real algebraic numbers.

Polynomials are stored low degree first (``coeffs[i]`` multiplies ``x**i``) as
tuples of :class:`fractions.Fraction`.  Elements of Q(lambda) are polynomials
reduced modulo the minimal polynomial of lambda, so equality is exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import mpmath

from .errors import PreconditionError

Rational = Union[int, Fraction]

DEFAULT_PRECISION_BITS = 128


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(int(x))


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class RationalPoly:
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [_frac(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_ints(cls, coeffs: Iterable) -> "RationalPoly":
        return cls(tuple(coeffs))

    @classmethod
    def const(cls, c) -> "RationalPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, other) -> "RationalPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "RationalPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "RationalPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            s = _frac(other)
            return RationalPoly(tuple(c * s for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RationalPoly":
        out = RationalPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "RationalPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return RationalPoly(), self
        q = [Fraction(0)] * (dq + 1)
        lc = other.lc
        od = other.degree
        for k in range(dq, -1, -1):
            t = r[k + od] / lc
            q[k] = t
            if t:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= t * b
        return RationalPoly(tuple(q)), RationalPoly(tuple(r[:od]))

    def __mod__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[0]

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def primitive(self) -> tuple[int, ...]:
        """Integer coefficients with content 1 and positive leading coefficient."""
        if self.is_zero():
            return ()
        import math

        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return tuple(ints)

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Enclosure of the range of the polynomial over [lo, hi] (Horner form)."""
        if lo == hi:
            v = self(lo)
            return v, v
        rlo = rhi = Fraction(0)
        for c in reversed(self.coeffs):
            p = (rlo * lo, rlo * hi, rhi * lo, rhi * hi)
            rlo, rhi = min(p) + c, max(p) + c
        return rlo, rhi

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and i) else str(mag)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            sep = "*" if coef and mono else ""
            terms.append(("-" if c < 0 else "+", f"{coef}{sep}{mono}"))
        s = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _as_poly(x) -> RationalPoly:
    return x if isinstance(x, RationalPoly) else RationalPoly.const(x)


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: RationalPoly, b: RationalPoly):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = RationalPoly.const(1), RationalPoly()
    t0, t1 = RationalPoly(), RationalPoly.const(1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.lc
    return r0 * (1 / lc), s0 * (1 / lc), t0 * (1 / lc)


def squarefree_part(p: RationalPoly) -> RationalPoly:
    if p.degree <= 0:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


# ---------------------------------------------------------------------------
# Sturm sequences


def sturm_sequence(p: RationalPoly) -> list[RationalPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    seq.pop()
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: Sequence[RationalPoly], x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at_inf(seq: Sequence[RationalPoly], positive: bool) -> int:
    signs = []
    for q in seq:
        s = _sign(q.lc)
        if not positive and q.degree % 2:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: RationalPoly, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    """Number of distinct real roots of ``p`` in the closed interval [lo, hi] (None = infinite)."""
    if p.is_zero():
        raise PreconditionError("zero polynomial has infinitely many roots")
    s = squarefree_part(p)
    seq = sturm_sequence(s)
    vlo = _variations_at_inf(seq, False) if lo is None else sign_variations(seq, _frac(lo))
    vhi = _variations_at_inf(seq, True) if hi is None else sign_variations(seq, _frac(hi))
    n = vlo - vhi  # roots in (lo, hi]
    if lo is not None and s(_frac(lo)) == 0:
        n += 1
    return n


def cauchy_bound(p: RationalPoly) -> Fraction:
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: RationalPoly, lo=None, hi=None) -> list["AlgebraicNumber"]:
    """Isolating intervals for the distinct real roots of ``p`` in [lo, hi].

    ``None`` for either end means unbounded.  Intervals are returned in
    increasing order and are pairwise disjoint.
    """
    if p.is_zero():
        raise PreconditionError("cannot isolate roots of the zero polynomial")
    s = squarefree_part(p)
    if s.degree <= 0:
        return []
    b = cauchy_bound(s)
    lo = -b if lo is None else _frac(lo)
    hi = b if hi is None else _frac(hi)
    if lo > hi:
        return []
    seq = sturm_sequence(s)
    out: list[AlgebraicNumber] = []
    if s(lo) == 0:
        out.append(AlgebraicNumber(s, lo, lo))
    if lo == hi:
        return out
    tail = [AlgebraicNumber(s, hi, hi)] if s(hi) == 0 else []

    def split_point(a: Fraction, b_: Fraction) -> Fraction:
        for num, den in ((1, 2), (3, 8), (5, 8), (1, 3), (2, 3)):
            m = a + (b_ - a) * num / den
            if s(m) != 0:
                return m
        k = 3
        while True:  # s has finitely many roots
            m = a + (b_ - a) / k
            if s(m) != 0:
                return m
            k += 1

    def rec(a: Fraction, b_: Fraction, va: int, vb: int):
        n = va - vb
        if n <= 0:
            return
        if n == 1:
            out.append(AlgebraicNumber(s, a, b_))
            return
        m = split_point(a, b_)
        vm = sign_variations(seq, m)
        rec(a, m, va, vm)
        rec(m, b_, vm, vb)

    # shrink to an interval whose endpoints are not roots; V(a) - V(b) counts roots in (a, b]
    a0, b0 = lo, hi
    eps = (hi - lo) / 2
    while s(a0) == 0 or sign_variations(seq, lo) != sign_variations(seq, a0):
        a0, eps = lo + eps, eps / 2
    eps = (hi - lo) / 2
    while s(b0) == 0 or sign_variations(seq, b0) - sign_variations(seq, hi) != (1 if tail else 0):
        b0, eps = hi - eps, eps / 2
    rec(a0, b0, sign_variations(seq, a0), sign_variations(seq, b0))
    out += tail
    for i in range(len(out) - 1):
        while out[i].hi >= out[i + 1].lo:
            out[i], out[i + 1] = out[i]._bisect(), out[i + 1]._bisect()
    return out


# ---------------------------------------------------------------------------
# algebraic numbers


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real root of ``poly`` isolated in the closed interval [lo, hi]."""

    poly: RationalPoly
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        p = squarefree_part(self.poly)
        lo, hi = _frac(self.lo), _frac(self.hi)
        if lo > hi:
            raise PreconditionError("empty isolating interval")
        if p(lo) == 0:
            hi = lo
        elif p(hi) == 0:
            lo = hi
        object.__setattr__(self, "poly", p)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_rational(self) -> bool:
        """True once the interval has collapsed onto an exact rational root."""
        return self.lo == self.hi

    def _bisect(self) -> "AlgebraicNumber":
        lo, hi, p = self.lo, self.hi, self.poly
        m = (lo + hi) / 2
        pm = p(m)
        if pm == 0:
            return AlgebraicNumber(p, m, m)
        if _sign(p(lo)) != _sign(pm):
            return AlgebraicNumber(p, lo, m)
        return AlgebraicNumber(p, m, hi)

    def refine(self, width) -> "AlgebraicNumber":
        width = _frac(width)
        x = self
        while x.width > width:
            x = x._bisect()
        return x

    def sign_at(self, q: RationalPoly) -> int:
        return self._sign_and_refined(q)[0]

    def _sign_and_refined(self, q: RationalPoly) -> tuple[int, "AlgebraicNumber"]:
        """Exact sign of q(self), plus the refined copy used to decide it."""
        if q.is_zero():
            return 0, self
        if q.degree == 0:
            return _sign(q.coeffs[0]), self
        g = poly_gcd(q, self.poly)
        if g.degree >= 1 and count_roots(g, self.lo, self.hi) > 0:
            return 0, self
        x = self
        while True:
            a, b = q.eval_interval(x.lo, x.hi)
            if a > 0:
                return 1, x
            if b < 0:
                return -1, x
            x = x._bisect()

    def approx(self, precision_bits: int = 64):
        """Return ``(value, error_bound)`` as mpmath numbers."""
        if precision_bits < 8:
            raise PreconditionError("precision_bits must be >= 8")
        x = self
        lo_mag = max(abs(x.lo), abs(x.hi))
        # coarse target first, then relative to the magnitude
        target = Fraction(1, 2 ** (precision_bits + 1)) * (lo_mag if lo_mag else 1)
        x = x.refine(target)
        while True:
            mag = min(abs(x.lo), abs(x.hi))
            if mag == 0 or x.width <= Fraction(1, 2 ** (precision_bits + 1)) * mag:
                break
            x = x._bisect()
        with mpmath.workprec(precision_bits + 16):
            mid = (x.lo + x.hi) / 2
            value = mpmath.mpf(mid.numerator) / mid.denominator
            err = mpmath.mpf((x.width / 2).numerator) / (x.width / 2).denominator
            err += abs(value) * mpmath.mpf(2) ** (-(precision_bits + 14))
        return value, err

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2) if self.is_rational() else float(self.approx(60)[0])

    def to_decimal(self, digits: int = 30) -> str:
        bits = int(digits * 3.33) + 8
        v, e = self.approx(bits)
        with mpmath.workdps(digits + 5):
            return f"{mpmath.nstr(v, digits)} +/- {mpmath.nstr(e, 3)}"

    def to_json(self) -> dict:
        return {
            "poly": list(self.poly.primitive()),
            "lo": f"{self.lo.numerator}/{self.lo.denominator}",
            "hi": f"{self.hi.numerator}/{self.hi.denominator}",
        }

    @classmethod
    def from_json(cls, d: dict) -> "AlgebraicNumber":
        return cls(RationalPoly.from_ints(d["poly"]), Fraction(d["lo"]), Fraction(d["hi"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def sign_at(q: RationalPoly, x: AlgebraicNumber) -> int:
    return x.sign_at(q)


def refine(x: AlgebraicNumber, width) -> AlgebraicNumber:
    return x.refine(width)


def approx(x: AlgebraicNumber, precision_bits: int = 64):
    return x.approx(precision_bits)


def irreducible_factors(p: RationalPoly) -> list[RationalPoly]:
    """Irreducible factors over Q (monic, without multiplicity)."""
    import sympy

    xs = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * xs ** i for i, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(expr, xs, domain="QQ")
    out = []
    for f, _mult in factors:
        cs = sympy.Poly(f, xs).all_coeffs()[::-1]
        out.append(RationalPoly(tuple(Fraction(int(c.p), int(c.q)) for c in cs)).monic())
    return out


def minimal_polynomial(x: AlgebraicNumber) -> AlgebraicNumber:
    """Replace the defining polynomial by its irreducible factor vanishing at ``x``."""
    for f in irreducible_factors(x.poly):
        if f.degree >= 1 and count_roots(f, x.lo, x.hi) > 0:
            return AlgebraicNumber(f, x.lo, x.hi)
    raise AssertionError("no irreducible factor vanishes on the isolating interval")


# ---------------------------------------------------------------------------
# the number field Q(alpha)


class NumberField:
    """Q(alpha) for a real algebraic number alpha with irreducible defining polynomial.

    The isolating interval of alpha is tightened in place as sign queries need
    it; the root itself never changes.
    """

    def __init__(self, alpha: AlgebraicNumber, check_irreducible: bool = True):
        if check_irreducible:
            alpha = minimal_polynomial(alpha)
        self.modulus = alpha.poly.monic()
        self._alpha = AlgebraicNumber(self.modulus, alpha.lo, alpha.hi)

    @property
    def alpha(self) -> AlgebraicNumber:
        return self._alpha

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.modulus == other.modulus and (
            count_roots(self.modulus, max(self._alpha.lo, other._alpha.lo),
                        min(self._alpha.hi, other._alpha.hi)) == 1
            if max(self._alpha.lo, other._alpha.lo) <= min(self._alpha.hi, other._alpha.hi) else False
        )

    def __hash__(self) -> int:
        return hash(self.modulus)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, RationalPoly):
            return FieldElement(self, value % self.modulus)
        return FieldElement(self, RationalPoly.const(value))

    def gen(self) -> "FieldElement":
        return self(RationalPoly.x())

    def sign(self, q: RationalPoly) -> int:
        s, refined = self._alpha._sign_and_refined(q)
        if refined.width < self._alpha.width:
            self._alpha = refined
        return s

    def interval(self, q: RationalPoly, width) -> tuple[Fraction, Fraction]:
        x = self._alpha.refine(width)
        if x.width < self._alpha.width:
            self._alpha = x
        return q.eval_interval(x.lo, x.hi)


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: NumberField
    poly: RationalPoly

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise PreconditionError("elements of different fields")
            return other
        return self.field(other)

    def __add__(self, other):
        return FieldElement(self.field, self.poly + self._coerce(other).poly)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.poly)

    def __sub__(self, other):
        return FieldElement(self.field, self.poly - self._coerce(other).poly)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, (self.poly * other.poly) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        g, s, _ = poly_xgcd(self.poly, self.field.modulus)
        if g.degree != 0:
            raise AssertionError("modulus is not irreducible")
        return FieldElement(self.field, s % self.field.modulus)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def sign(self) -> int:
        return self.field.sign(self.poly)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (FieldElement, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(self.poly)

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def enclosure(self, width=Fraction(1, 2 ** 64)) -> tuple[Fraction, Fraction]:
        return self.field.interval(self.poly, width)

    def __float__(self) -> float:
        a, b = self.enclosure(Fraction(1, 2 ** 80))
        return float((a + b) / 2)

    def __repr__(self) -> str:
        return f"FieldElement({self.poly} @ alpha)"
