"""Binary words, eventually periodic words and the twisted lexicographic order.

Text encoding: ``"101"`` is a finite word, ``"10|01"`` is preperiod ``10``
followed by the period ``01`` repeated forever.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import WordError


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _check_symbols(symbols: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(s) for s in symbols)
    for s in out:
        if s not in (0, 1):
            raise WordError(f"symbol {s!r} is not 0 or 1")
    return out


@dataclass(frozen=True)
class BinaryWord:
    symbols: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "symbols", _check_symbols(self.symbols))

    @classmethod
    def parse(cls, text: str) -> "BinaryWord":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise WordError(f"not a binary word: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return BinaryWord(self.symbols[i])
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)

    def __add__(self, other: "BinaryWord") -> "BinaryWord":
        return BinaryWord(self.symbols + tuple(other))

    def __str__(self) -> str:
        return "".join(map(str, self.symbols))

    def take(self, n: int) -> tuple[int, ...]:
        if n > len(self.symbols):
            raise WordError(f"need {n} symbols, word has {len(self.symbols)}")
        return self.symbols[:n]


def _primitive_root(period: tuple[int, ...]) -> tuple[int, ...]:
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and period[:d] * (p // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """The infinite word ``preperiod + period + period + ...``.

    Construction always canonicalizes: the period is made primitive and any
    trailing preperiod symbols that can be absorbed by rotating the period are
    absorbed, so equal infinite words compare equal as dataclasses.
    """

    preperiod: BinaryWord
    period: BinaryWord

    def __post_init__(self):
        pre = tuple(self.preperiod)
        per = tuple(self.period)
        if not per:
            raise WordError("period must be nonempty")
        pre, per = _check_symbols(pre), _check_symbols(per)
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            per = per[-1:] + per[:-1]
            pre = pre[:-1]
        object.__setattr__(self, "preperiod", BinaryWord(pre))
        object.__setattr__(self, "period", BinaryWord(per))

    @classmethod
    def periodic(cls, period) -> "EventuallyPeriodicWord":
        return cls(BinaryWord(), _as_word(period))

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicWord":
        text = text.strip()
        if "|" in text:
            pre, per = text.split("|", 1)
        else:
            pre, per = "", text
        return cls(BinaryWord.parse(pre), BinaryWord.parse(per))

    def take(self, n: int) -> tuple[int, ...]:
        pre, per = self.preperiod.symbols, self.period.symbols
        if n <= len(pre):
            return pre[:n]
        rest = n - len(pre)
        reps = -(-rest // len(per))
        return pre + (per * reps)[:rest]

    def shift(self, k: int = 1) -> "EventuallyPeriodicWord":
        pre, per = self.preperiod.symbols, self.period.symbols
        if k <= len(pre):
            return EventuallyPeriodicWord(BinaryWord(pre[k:]), BinaryWord(per))
        r = (k - len(pre)) % len(per)
        return EventuallyPeriodicWord(BinaryWord(), BinaryWord(per[r:] + per[:r]))

    def __str__(self) -> str:
        return f"{self.preperiod}|{self.period}"


WordView = Union[BinaryWord, EventuallyPeriodicWord, str, Sequence[int]]


def _as_word(w) -> BinaryWord:
    if isinstance(w, BinaryWord):
        return w
    if isinstance(w, str):
        return BinaryWord.parse(w)
    return BinaryWord(tuple(w))


def parse_word(text: str) -> Union[BinaryWord, EventuallyPeriodicWord]:
    """Parse either text form; ``|`` marks an eventually periodic word."""
    if "|" in text:
        return EventuallyPeriodicWord.parse(text)
    return BinaryWord.parse(text)


def symbols(w: WordView, n: int) -> tuple[int, ...]:
    """First ``n`` symbols of any word view; raises WordError if too short."""
    if n < 0:
        raise WordError("negative length")
    if isinstance(w, str) and "|" in w:
        w = EventuallyPeriodicWord.parse(w)
    if isinstance(w, EventuallyPeriodicWord):
        return w.take(n)
    return _as_word(w).take(n)


def twisted_lex_compare(a: WordView, b: WordView, n: int) -> Order:
    """Compare the first ``n`` symbols of ``a`` and ``b`` in twisted lexicographic order."""
    sa, sb = symbols(a, n), symbols(b, n)
    parity = 0
    for x, y in zip(sa, sb):
        if x != y:
            d = x - y if parity == 0 else y - x
            return Order.LESS if d < 0 else Order.GREATER
        parity ^= x
    return Order.EQUAL


def compare_eventually_periodic(a: EventuallyPeriodicWord, b: EventuallyPeriodicWord) -> Order:
    # first disagreement, if any, happens inside this window
    pa, pb = len(a.period), len(b.period)
    window = max(len(a.preperiod), len(b.preperiod)) + 2 * (pa * pb // math.gcd(pa, pb))
    return twisted_lex_compare(a, b, window)


def is_admissible(w: EventuallyPeriodicWord) -> bool:
    """True iff every proper shift of ``w`` is <= ``w`` in twisted order."""
    n_shifts = len(w.preperiod) + len(w.period)
    return all(
        compare_eventually_periodic(w.shift(k), w) != Order.GREATER
        for k in range(1, n_shifts + 1)
    )


def reverse(w: WordView) -> BinaryWord:
    return BinaryWord(tuple(reversed(_as_word(w).symbols)))


def prefix(w: WordView, n: int) -> BinaryWord:
    return BinaryWord(symbols(w, n))


def max_run(w: WordView, symbol: int, horizon: int) -> int:
    best = cur = 0
    for s in symbols(w, horizon):
        cur = cur + 1 if s == symbol else 0
        best = max(best, cur)
    return best


def ones_parity(w: WordView) -> str:
    return "odd" if sum(_as_word(w).symbols) % 2 else "even"


def flip_last(w: WordView) -> BinaryWord:
    s = _as_word(w).symbols
    if not s:
        raise WordError("cannot flip the last letter of the empty word")
    return BinaryWord(s[:-1] + (1 - s[-1],))
