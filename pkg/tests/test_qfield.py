import pytest
from hypothesis import given, settings, strategies as st

from thetacalc.qfield import (
    M, ONE, ZERO, PoleError, RatQT, gen, invert_qt, parse_poly, parse_ratqt, qbinom, qint,
    qrising, q, substitute_powers, t, binom2,
)

x = gen("x")


def P(text):
    return parse_ratqt(text)


def test_product_gives_M():
    assert (1 - q) * (1 - t) == M
    assert str(M) == "1 - t - q + q*t"


def test_additive_identity():
    assert P("q + 2*t") + ZERO == P("q + 2*t")


def test_division_is_exact():
    assert (1 - q ** 2) / (1 - q) == 1 + q
    assert ((1 - q ** 2) / (1 - q)).is_polynomial()


def test_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        q / ZERO


@pytest.mark.parametrize("n, expected", [(0, "0"), (1, "1"), (3, "1 + q + q^2")])
def test_qint(n, expected):
    assert qint(n) == P(expected)


@pytest.mark.parametrize("n, k, expected", [
    (5, 0, "1"), (2, 3, "0"), (4, 2, "1 + q + 2*q^2 + q^3 + q^4"), (3, -1, "0"), (-2, 1, "0"),
])
def test_qbinom(n, k, expected):
    assert qbinom(n, k) == P(expected)


def test_qbinom_counts_partitions_in_box():
    # at q = 1 the Gaussian binomial is the ordinary one
    from math import comb
    for n in range(9):
        for k in range(n + 1):
            assert qbinom(n, k).evaluate("q", 1) == RatQT.coerce(comb(n, k))


def test_qrising():
    a = gen("x")
    assert qrising(a, 0) == ONE
    assert qrising(q, 1) == 1 - q
    assert qrising(q, 2) == (1 - q) * (1 - q ** 2)


def test_substitute_powers():
    assert substitute_powers(q + t, 2) == q ** 2 + t ** 2
    assert substitute_powers(M, 2) == (1 - q ** 2) * (1 - t ** 2)
    assert substitute_powers(qint(3), 2) == P("1 + q^2 + q^4")


def test_invert_qt():
    assert invert_qt(q) == ONE / q
    assert invert_qt(1 + q) == (q + 1) / q
    assert invert_qt(M) == M / (q * t)


def test_recurrence_up_to_12():
    for n in range(1, 13):
        for k in range(n + 1):
            assert qbinom(n, k) == q ** k * qbinom(n - 1, k) + qbinom(n - 1, k - 1)


def test_binomial_theorem_up_to_10():
    for n in range(11):
        lhs = sum(((-x) ** j * q ** binom2(j) * qbinom(n, j) for j in range(n + 1)), ZERO)
        assert lhs == qrising(x, n)


def test_rendering_round_trip():
    r = (1 - q * t) / (1 + q)
    assert str(r) == "(1 - q*t)/(1 + q)"
    assert parse_ratqt(str(r)) == r
    assert str(1 - q * t) == "1 - q*t"


def test_canonical_sign_of_denominator():
    a = RatQT(parse_poly("1"), parse_poly("-1 + q"))
    b = RatQT(parse_poly("-1"), parse_poly("1 - q"))
    assert a == b and str(a) == str(b)


def test_evaluate_pole():
    with pytest.raises(PoleError):
        (ONE / (1 - q)).evaluate("q", 1)


monos = st.builds(lambda c, a, b: RatQT.monomial(c, q=a, t=b),
                  st.integers(-3, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.lists(monos, min_size=1, max_size=4).map(lambda xs: sum(xs, ZERO))
fracs = st.tuples(polys, polys).filter(lambda ab: not ab[1].is_zero()).map(lambda ab: ab[0] / ab[1])


@settings(max_examples=60, deadline=None)
@given(fracs, fracs, fracs)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == ONE


@settings(max_examples=60, deadline=None)
@given(fracs)
def test_normalization_idempotent(a):
    again = RatQT(a.num, a.den)
    assert again == a and str(again) == str(a) and hash(again) == hash(a)


@settings(max_examples=40, deadline=None)
@given(fracs, fracs, st.integers(1, 3))
def test_substitute_powers_multiplicative(a, b, k):
    assert substitute_powers(a * b, k) == substitute_powers(a, k) * substitute_powers(b, k)
