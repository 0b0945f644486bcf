from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from twistmoyal.coeff_algebra import I_UNIT, TruncationOrders
from twistmoyal.gauge_dynamics import GaugeField, GaugeParameter
from twistmoyal.schwartz_trace import (
    DivergentIntegralError,
    GaussianDensity,
    WindowError,
    action_invariance_residual,
    cyclicity_residual,
    gaussian_moment,
    gd_star,
    inner_product,
    integral,
    ym_action,
)
from twistmoyal.twist_geometry import Flavor, TwistConfig

import oracle
from oracle import from_text, gaussian_integral, x1, x2
from strategies import x_polys

ANTI = TwistConfig(Flavor.ANTISYMMETRIC, TruncationOrders(3, 1))
HALF = Fraction(1, 2)


@pytest.mark.parametrize("p,q,s", [(0, 0, 1), (2, 0, 1), (2, 2, 2), (4, 2, HALF),
                                   (1, 0, 1), (3, 3, 3), (6, 0, Fraction(3, 2))])
def test_gaussian_moments_against_sympy(p, q, s):
    assert gaussian_moment(p, q, s) == gaussian_integral(f"x1^{p}*x2^{q}", sp.Rational(s))


def test_reference_integrals():
    c = ANTI.replace(orders=TruncationOrders(0, 0), admissible_omega=frozenset())
    r2 = c.x(1) ** 2 + c.x(2) ** 2
    # int (x^2 + y^2) e^{-|x|^2} = pi, int e^{-|x|^2/2} = 2 pi
    assert integral(GaussianDensity.window(2, r2)).coefficient == c.const(1)
    assert integral(GaussianDensity.window(1, c.const(1))).coefficient == c.const(2)


def test_bare_polynomials_do_not_integrate():
    with pytest.raises(DivergentIntegralError):
        integral(ANTI.x(1))
    with pytest.raises(DivergentIntegralError):
        integral(GaussianDensity.lift(ANTI.const(1)))
    with pytest.raises(ValueError):
        GaussianDensity.window(-1, ANTI.const(1))


@settings(max_examples=15)
@given(p=x_polys(ANTI.orders, degree=3), s=st.sampled_from([HALF, 1, 2]))
def test_window_derivative(p, s):
    g = GaussianDensity.window(s, p)
    weight = sp.Rational(s)
    dens = from_text(p.render()) * sp.exp(-weight * (x1 ** 2 + x2 ** 2) / 2)
    d = g.derivative(1)
    assert list(d.parts) in ([], [Fraction(s)])
    got = from_text(d.parts[Fraction(s)].render()) if d.parts else 0
    expected = sp.expand(sp.diff(dens, x1) / sp.exp(-weight * (x1 ** 2 + x2 ** 2) / 2))
    assert sp.expand(got - expected) == 0


def test_window_products_add_weights():
    a = GaussianDensity.window(HALF, ANTI.x(1))
    b = GaussianDensity.window(1, ANTI.x(2))
    assert (a * b).weights() == [Fraction(3, 2)]
    assert (a * ANTI.x(2)).weights() == [HALF]
    assert GaussianDensity.lift(ANTI.x(1)).weights() == [Fraction(0)]


def _pair(seed):
    c = ANTI
    f = GaussianDensity.window(HALF, c.x(1) * c.x(2) + c.x(1) * (seed + 1))
    g = GaussianDensity.window(1, c.x(2) ** 2 - c.x(1) * I_UNIT + seed)
    return f, g


@pytest.mark.parametrize("seed", range(3))
def test_cyclicity_with_measure_e(seed):
    f, g = _pair(seed)
    res = cyclicity_residual(ANTI, f, g)
    assert not res.commutator
    assert not res.deformation


def test_plain_measure_is_not_cyclic():
    f = GaussianDensity.window(HALF, ANTI.x(1))
    g = GaussianDensity.window(1, ANTI.x(2) ** 2)
    res = cyclicity_residual(ANTI, f, g)
    assert not res.commutator
    assert res.plain_commutator.render() == "(-16/27*i*theta*w12^1)*pi"
    # independent value: sympy product of the densities, integrated directly
    r1, r2 = sp.symbols("r1 r2", real=True)
    fs = x1 * sp.exp(-(x1 ** 2 + x2 ** 2) / 4)
    gs = x2 ** 2 * sp.exp(-(x1 ** 2 + x2 ** 2) / 2)
    comm = oracle.star_flat_weighted(fs, gs) - oracle.star_flat_weighted(gs, fs)
    comm = sp.expand(comm).subs({x1: r1, x2: r2})
    total = sp.integrate(comm, (r1, -sp.oo, sp.oo), (r2, -sp.oo, sp.oo))
    assert sp.simplify(total / sp.pi) == from_text("-16/27*i*theta*w12^1")


@pytest.mark.parametrize("seed", range(3))
def test_inner_product_is_hermitian(seed):
    a, b = _pair(seed)
    ab, ba = inner_product(ANTI, a, b), inner_product(ANTI, b, a)
    assert ab == ba.conjugate()


def test_gd_star_flat_gaussians():
    c = ANTI.replace(orders=TruncationOrders(2, 0), admissible_omega=frozenset())
    g = GaussianDensity.window(1, c.const(1))
    prod = gd_star(c, g, g)
    assert prod.weights() == [Fraction(2)]
    assert from_text(prod.parts[Fraction(2)].render()) == _moyal_gaussian_oracle()


def _moyal_gaussian_oracle():
    th = sp.Symbol("theta")
    g = sp.exp(-(x1 ** 2 + x2 ** 2) / 2)
    total = g * g
    for n in range(1, 3):
        level = 0
        for k in range(n + 1):
            df = sp.diff(g, x1, k, x2, n - k)
            dg = sp.diff(g, x2, k, x1, n - k)
            level += sp.binomial(n, k) * (-1) ** (n - k) * df * dg
        total += (sp.I * th / 2) ** n / sp.factorial(n) * level
    return sp.expand(sp.simplify(total / sp.exp(-(x1 ** 2 + x2 ** 2))))


def _windowed_field(c):
    return GaugeField(c, (GaussianDensity.window(HALF, c.x(1) * c.x(2) + c.x(2)),
                          GaussianDensity.window(HALF, c.x(1) ** 2 - 2)))


def test_action_invariant_under_constant_rotation():
    c = ANTI.replace(orders=TruncationOrders(2, 1))
    A = _windowed_field(c)
    assert not action_invariance_residual(c, A, GaugeParameter.constant(c, Fraction(3, 2)))
    lin = GaugeParameter.linear(c)
    assert not action_invariance_residual(c, A, lin, constrained=True)


def test_action_needs_windows():
    c = ANTI.replace(orders=TruncationOrders(1, 1))
    with pytest.raises(WindowError):
        ym_action(c, GaugeField(c, (c.x(1), c.x(2))))
    assert ym_action(c, _windowed_field(c)).coefficient.is_x_free()
