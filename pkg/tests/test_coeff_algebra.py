from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given

from twistmoyal.coeff_algebra import (
    I_UNIT,
    DeformedPolynomial,
    ExactComplexRational,
    Monomial,
    OrderMismatchError,
    TruncationOrders,
    UnboundSymbolError,
)

from oracle import from_text, theta, truncate, x1, x2
from strategies import ORDERS, polys

P = DeformedPolynomial


def sym(name, orders=ORDERS):
    return P.symbol(name, orders)


def test_complex_rational_arithmetic():
    a = ExactComplexRational(1, 2)
    b = ExactComplexRational(Fraction(1, 3), -1)
    assert a * a.conjugate() == ExactComplexRational(5, 0)
    assert (a * b) / b == a
    assert I_UNIT * I_UNIT == ExactComplexRational(-1, 0)
    assert a + 1 == ExactComplexRational(2, 2)
    with pytest.raises(ZeroDivisionError):
        a / ExactComplexRational(0, 0)


def test_orders_validate():
    with pytest.raises(ValueError):
        TruncationOrders(-1, 1)
    with pytest.raises(ValueError):
        TruncationOrders(2, 1.5)


def test_truncation_drops_high_orders():
    t, w = sym("theta"), sym("w12^1")
    assert not t ** 4
    assert (t ** 3).render() == "theta^3"
    assert not w * sym("w12^2")
    # eps is never truncated
    e = sym("eps1")
    assert (e ** 7).render() == "eps1^7"


def test_mixing_orders_is_an_error():
    with pytest.raises(OrderMismatchError):
        sym("x1") + P.symbol("x1", TruncationOrders(2, 1))


def test_render_is_canonical_and_parseable():
    p = (sym("x1") + I_UNIT * sym("theta")) * (sym("x2") - 3) * Fraction(1, 2)
    assert p.render() == "-3/2*x1 + 1/2*x1*x2 - 3/2*i*theta + 1/2*i*theta*x2"
    assert from_text(p.render()) == sp.expand((x1 + sp.I * theta) * (x2 - 3) / 2)


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == f.zero_like()
    assert f * f.one_like() == f


@given(polys(), polys())
def test_product_matches_sympy(f, g):
    expected = truncate(from_text(f.render()) * from_text(g.render()), 3, 1)
    assert from_text((f * g).render()) == expected


@given(polys(), polys())
def test_derivative_is_a_derivation(f, g):
    for axis, var in ((1, x1), (2, x2)):
        assert (f * g).derivative(axis) == f.derivative(axis) * g + f * g.derivative(axis)
        assert from_text(f.derivative(axis).render()) == sp.diff(from_text(f.render()), var)


@given(polys())
def test_conjugation(f):
    assert f.conjugate().conjugate() == f
    assert f.real_part() + f.imag_part() * I_UNIT == f
    assert not (f.real_part().imag_part())


@given(polys())
def test_grading_parts_reassemble(f):
    total = f.zero_like()
    for d in range(ORDERS.theta_order + 1):
        total = total + f.theta_part(d)
    assert total == f
    assert f.omega_part(0) + f.omega_part(1) == f


def test_substitution_and_unbound_symbols():
    p = sym("x1") * sym("x2") + sym("theta")
    assert p.substitute({"x1": 2, "x2": 3, "theta": Fraction(1, 2)}) == \
        ExactComplexRational(Fraction(13, 2), 0)
    with pytest.raises(UnboundSymbolError):
        p.substitute({"x1": 1})


def test_monomial_inspection():
    p = sym("theta") ** 2 * sym("w12^2") * sym("x1") + 5
    assert p.theta_degrees() == {0, 2}
    assert p.symbols() == {"theta", "w12^2", "x1"}
    assert not p.is_x_free()
    assert p.x_free_part() == P.constant(5, ORDERS)
    assert P.from_terms({Monomial(1, 0): 2}, ORDERS) == sym("x1") * 2


def test_unknown_symbol():
    with pytest.raises((KeyError, ValueError)):
        P.symbol("y3", ORDERS)
