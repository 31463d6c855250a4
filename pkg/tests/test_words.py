from itertools import product

import pytest
from hypothesis import given, strategies as st

from teapot.errors import WordError
from teapot.words import (
    BinaryWord,
    EventuallyPeriodicWord,
    Order,
    compare_eventually_periodic,
    flip_last,
    is_admissible,
    max_run,
    ones_parity,
    parse_word,
    prefix,
    reverse,
    symbols,
    twisted_lex_compare,
)

bits = st.lists(st.integers(0, 1), min_size=1, max_size=12).map(tuple)


def test_parse_and_str():
    assert str(BinaryWord.parse("0110")) == "0110"
    w = parse_word("10|01")
    assert isinstance(w, EventuallyPeriodicWord)
    assert w.take(7) == (1, 0, 0, 1, 0, 1, 0)
    with pytest.raises(WordError):
        BinaryWord.parse("012")


def test_canonical_form():
    # 1|01 = 1 0 1 0 1 ... = (10)^inf
    assert EventuallyPeriodicWord.parse("1|01") == EventuallyPeriodicWord.parse("10")
    assert EventuallyPeriodicWord.parse("1010") == EventuallyPeriodicWord.parse("10")
    assert str(EventuallyPeriodicWord.parse("0|1")) == "0|1"


def test_take_too_short():
    with pytest.raises(WordError):
        symbols("101", 4)


def test_twisted_examples():
    # 1 then 0 vs 1: after one 1 the order flips, so 10 > 11
    assert twisted_lex_compare("10", "11", 2) is Order.GREATER
    assert twisted_lex_compare("00", "01", 2) is Order.LESS
    assert twisted_lex_compare("101", "101", 3) is Order.EQUAL


def test_admissible():
    assert is_admissible(EventuallyPeriodicWord.parse("101"))
    assert is_admissible(EventuallyPeriodicWord.parse("1001"))
    assert not is_admissible(EventuallyPeriodicWord.parse("011"))


def test_helpers():
    assert str(reverse("1100")) == "0011"
    assert str(prefix("10|01", 5)) == "10010"
    assert max_run("1000100", 0, 7) == 3
    assert ones_parity("1011") == "odd" and ones_parity("11") == "even"
    assert str(flip_last("101")) == "100"


@given(bits, bits, bits)
def test_total_order(a, b, c):
    n = min(len(a), len(b), len(c))
    ab = twisted_lex_compare(a, b, n)
    assert twisted_lex_compare(b, a, n) == -ab
    if ab != Order.GREATER and twisted_lex_compare(b, c, n) != Order.GREATER:
        assert twisted_lex_compare(a, c, n) != Order.GREATER


@given(bits)
def test_reverse_involution(w):
    assert reverse(reverse(w)) == BinaryWord(w)


@given(bits, bits)
def test_eventually_periodic_compare_matches_long_prefix(pre, per):
    a = EventuallyPeriodicWord(BinaryWord(pre[:3]), BinaryWord(per))
    b = EventuallyPeriodicWord(BinaryWord(()), BinaryWord(pre))
    assert compare_eventually_periodic(a, b) == twisted_lex_compare(a, b, 400)


def test_shift_matches_take():
    w = EventuallyPeriodicWord.parse("110|100")
    for k in range(8):
        assert w.shift(k).take(10) == w.take(10 + k)[k:]


def test_twisted_order_is_total_on_all_short_words():
    words = list(product((0, 1), repeat=4))
    for a in words:
        for b in words:
            assert (twisted_lex_compare(a, b, 4) == Order.EQUAL) == (a == b)
