from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from twistmoyal.coeff_algebra import I_UNIT, TruncationOrders
from twistmoyal.star_kernel import (
    PlaneWaveSum,
    associativity_residual,
    bilinear_series,
    leibniz_residual,
    moyal_product,
    plane_wave_star,
    star,
    star_anticommutator,
    star_closed,
    star_commutator,
    star_exponential,
    star_series,
)
from twistmoyal.twist_geometry import Flavor, FlavorError, TwistConfig, build_geometry

import oracle
from oracle import from_text, x1, x2
from strategies import x_polys

ANTI3 = TwistConfig(Flavor.ANTISYMMETRIC, TruncationOrders(3, 1))
SYM3 = TwistConfig(Flavor.SYMMETRIC, TruncationOrders(3, 1))
FLAT = ANTI3.replace(orders=TruncationOrders(5, 1), admissible_omega=frozenset())


def sym(p):
    return from_text(p.render())


# ---------------------------------------------------------------------------
# Frozen oracle values (computed with tests/oracle.py and checked live below).

ASSOCIATOR_X1_X2_X2 = "1/4*theta^2*w12^2"
POWER_ASSOCIATOR_X1X2 = "1/2*i*theta^3*w12^2*x1 + 1/2*i*theta^3*w12^1*x2"
WAVE_ASSOCIATOR = "-1/4*i*theta^2*w12^2 - 1/8*theta^3*w12^2"


@pytest.mark.parametrize("method", ["series", "closed"])
def test_coordinate_product(method):
    # x1*x2 = x1 x2 + (i theta / 2) e^{-1}
    p = star(ANTI3, ANTI3.x(1), ANTI3.x(2), method)
    e_inv = build_geometry(ANTI3).det_e_inv
    assert p == ANTI3.x(1) * ANTI3.x(2) + e_inv * ANTI3.theta() * (I_UNIT * Fraction(1, 2))


@pytest.mark.parametrize("flavor", ["antisymmetric", "symmetric"])
@settings(max_examples=8)
@given(f=x_polys(degree=3, max_terms=4), g=x_polys(degree=3, max_terms=4))
def test_series_matches_sympy_oracle(flavor, f, g):
    config = ANTI3 if flavor == "antisymmetric" else SYM3
    got = sym(star_series(config, f, g))
    assert got == oracle.star_series(sym(f), sym(g), flavor, 3, 1)


@settings(max_examples=8)
@given(f=x_polys(degree=3, max_terms=4), g=x_polys(degree=3, max_terms=4))
def test_closed_matches_sympy_oracle(f, g):
    got = sym(star_closed(ANTI3, f, g))
    assert got == oracle.star_flat_weighted(sym(f), sym(g), "antisymmetric", 3, 1)


@settings(max_examples=20)
@given(f=x_polys(degree=4), g=x_polys(degree=4))
def test_methods_agree_antisymmetric(f, g):
    c = ANTI3.replace(orders=TruncationOrders(4, 1))
    f, g = f.with_orders(c.orders), g.with_orders(c.orders)
    assert star_series(c, f, g) == star_closed(c, f, g)


def test_methods_differ_for_symmetric_flavor():
    # the e^{-1}-weighted closed form reproduces the series only for the
    # antisymmetric flavor
    c = SYM3
    f, g = c.x(1) ** 2, c.x(2) ** 2
    assert star_series(c, c.x(1), c.x(2)) == star_closed(c, c.x(1), c.x(2))
    assert (star_series(c, f, g) - star_closed(c, f, g)).render() == \
        "-1/2*theta^2*w22^2*x2 - 1/2*theta^2*w11^1*x1"


@settings(max_examples=10)
@given(f=x_polys(FLAT.orders, degree=4), g=x_polys(FLAT.orders, degree=4))
def test_flat_limit_is_moyal(f, g):
    ref = moyal_product(FLAT, f, g)
    assert star_series(FLAT, f, g) == ref
    assert star_closed(FLAT, f, g) == ref
    assert sym(ref) == oracle.moyal(sym(f), sym(g), 5)


def test_associator_counterexample():
    for method in ("series", "closed"):
        r = associativity_residual(ANTI3, ANTI3.x(1), ANTI3.x(2), ANTI3.x(2), method)
        assert r.render() == ASSOCIATOR_X1_X2_X2
    live = oracle.star_series(oracle.star_series(x1, x2), x2) - \
        oracle.star_series(x1, oracle.star_series(x2, x2))
    assert from_text(ASSOCIATOR_X1_X2_X2) == sp.expand(live)


def test_symmetric_series_is_associative():
    c = SYM3
    assert not associativity_residual(c, c.x(1), c.x(2), c.x(2), "series")
    assert not associativity_residual(c, c.x(1) * c.x(2), c.x(1) ** 2, c.x(2), "series")


def test_power_associator():
    c = ANTI3.replace(orders=TruncationOrders(4, 1))
    a = c.x(1) * c.x(2)
    sq = star(c, a, a)
    assert (star(c, a, sq) - star(c, sq, a)).render() == POWER_ASSOCIATOR_X1X2
    o_sq = oracle.star_series(x1 * x2, x1 * x2, T=4)
    live = oracle.star_series(x1 * x2, o_sq, T=4) - oracle.star_series(o_sq, x1 * x2, T=4)
    assert from_text(POWER_ASSOCIATOR_X1X2) == oracle.truncate(live, 4, 1)


def _wave(k):
    return sp.exp(sp.I * (k[0] * x1 + k[1] * x2))


def test_plane_wave_product_matches_oracle():
    k, q = (1, 0), (Fraction(1, 2), -2)
    expected = oracle.star_series(_wave(k), _wave((sp.Rational(1, 2), -2)))
    expected = sp.expand(sp.powsimp(sp.expand(expected * _wave((-sp.Rational(3, 2), 2)))))
    for method in ("series", "closed"):
        p = plane_wave_star(ANTI3, PlaneWaveSum.wave(ANTI3, k), PlaneWaveSum.wave(ANTI3, q),
                            method)
        assert list(p.parts) == [(Fraction(3, 2), Fraction(-2))]
        assert sym(p.parts[(Fraction(3, 2), Fraction(-2))]) == expected


def test_plane_wave_flat_phase():
    # e^{ikx} * e^{iqx} = exp(-(i/2) theta k^q) e^{i(k+q)x} in the flat limit
    c = ANTI3.replace(admissible_omega=frozenset())
    k, q = (2, 1), (1, 3)
    p = star(c, PlaneWaveSum.wave(c, k), PlaneWaveSum.wave(c, q))
    cross = k[0] * q[1] - k[1] * q[0]
    phase = sp.series(sp.exp(-sp.I * oracle.theta * cross / 2), oracle.theta, 0, 4).removeO()
    assert sym(p.parts[(3, 4)]) == sp.expand(phase)


def test_plane_wave_associator():
    waves = [PlaneWaveSum.wave(ANTI3, k) for k in ((1, 0), (0, 1), (1, 1))]
    for method in ("series", "closed"):
        r = associativity_residual(ANTI3, *waves, method)
        assert list(r.parts) == [(2, 2)]
        assert r.parts[(2, 2)].render() == WAVE_ASSOCIATOR


def test_plane_waves_need_antisymmetric_flavor():
    w = PlaneWaveSum.wave(SYM3, (1, 0))
    with pytest.raises(FlavorError):
        plane_wave_star(SYM3, w, w)


def test_leibniz_rule_fails_only_through_omega():
    r = leibniz_residual(ANTI3, ANTI3.x(1), ANTI3.x(2), 1)
    assert r.render() == "-1/2*i*theta*w12^2"
    c = ANTI3.replace(admissible_omega=frozenset())
    assert not leibniz_residual(c, c.x(1) ** 2, c.x(2) ** 3, 2)


@settings(max_examples=10)
@given(f=x_polys(degree=3), g=x_polys(degree=3))
def test_tsr_reconstructions(f, g):
    c = ANTI3.replace(orders=TruncationOrders(4, 1))
    f, g = f.with_orders(c.orders), g.with_orders(c.orders)
    fg, gf = star_series(c, f, g), star_series(c, g, f)
    T, S, R = (bilinear_series(c, k, f, g) for k in "TSR")
    assert fg == f * g + T
    assert fg - gf == S * 2
    assert fg + gf == f * g * 2 + R * 2
    assert T - bilinear_series(c, "T", g, f) == S * 2


def test_tsr_free_index_form_is_not_antisymmetric():
    c = ANTI3
    f, g = c.x(1) ** 2, c.x(2)
    gaps = [bilinear_series(c, "T", f, g, a) - bilinear_series(c, "T", g, f, a)
            - bilinear_series(c, "S", f, g, a) * 2 for a in (1, 2)]
    assert any(gaps)


def test_brackets():
    c = ANTI3
    f, g = c.x(1) ** 2 + c.x(2), c.x(1) * c.x(2)
    assert star_commutator(c, f, f) == f.zero_like()
    assert star_anticommutator(c, f, g) == star(c, f, g) + star(c, g, f)


def test_star_exponential_basics():
    c = ANTI3
    alpha = c.x(1) + c.x(2) * 2
    assert star_exponential(c, alpha, 0) == c.const(1)
    one = star_exponential(c, alpha, 1)
    assert one == c.const(1) + alpha * I_UNIT
    with pytest.raises(ValueError):
        star_exponential(c, alpha, -1)


def test_unknown_method():
    with pytest.raises(ValueError):
        star(ANTI3, ANTI3.x(1), ANTI3.x(2), "fourier")
