"""Twisted star products, brackets, bilinear series and residual checkers.

The kernels only use ``.derivative(axis)``, ``+``, ``*`` (including
multiplication by a :class:`DeformedPolynomial` on the left) and
``.zero_like()`` on their arguments, so they run unchanged on polynomials,
Gaussian-windowed densities and plane-wave sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Mapping

from .coeff_algebra import I_UNIT, DeformedPolynomial, ExactComplexRational
from .twist_geometry import EPSILON, INDICES, Flavor, FlavorError, TwistConfig, build_geometry

__all__ = [
    "apply_vector_field",
    "apply_twisted_field",
    "delta_power",
    "star_series",
    "star_closed",
    "star",
    "moyal_product",
    "star_commutator",
    "star_anticommutator",
    "bilinear_series",
    "star_exponential",
    "star_power",
    "PlaneWaveElement",
    "PlaneWaveSum",
    "plane_wave_star",
    "associativity_residual",
    "leibniz_residual",
    "SERIES_KINDS",
]

Poly = DeformedPolynomial
HALF_I = I_UNIT * Fraction(1, 2)


def _theta_budget(config: TwistConfig, f, g) -> int:
    """Largest n for which a theta^n kernel term can survive truncation."""
    budget = config.orders.theta_order
    lows = [_min_theta(v) for v in (f, g)]
    if None in lows:
        return -1
    return budget - sum(lows)


def _min_theta(v) -> int | None:
    degs = getattr(v, "theta_degrees", None)
    if degs is None:
        return 0
    d = degs()
    return min(d) if d else None


def apply_vector_field(config: TwistConfig, a: int, f):
    """``X_a f = e_a^mu d_mu f``."""
    if a not in INDICES:
        raise ValueError(f"frame index must be 1 or 2, got {a!r}")
    e = build_geometry(config).e_up[a - 1]
    return e[0] * f.derivative(1) + e[1] * f.derivative(2)


def apply_twisted_field(config: TwistConfig, a: int, f):
    """``X~^a f = (i/2) Theta^{ab} X_b f``."""
    if a not in INDICES:
        raise ValueError(f"frame index must be 1 or 2, got {a!r}")
    acc = f.zero_like()
    for b in INDICES:
        s = EPSILON[a - 1][b - 1]
        if s:
            acc = acc + (config.theta() * HALF_I * s) * apply_vector_field(config, b, f)
    return acc


class _FieldStrings:
    """Memoised ``X_{a1} X_{a2} ... X_{an} f`` keyed by the index string."""

    def __init__(self, config: TwistConfig, f):
        self.config = config
        self.cache = {(): f}

    def get(self, word: tuple[int, ...]):
        hit = self.cache.get(word)
        if hit is None:
            hit = apply_vector_field(self.config, word[0], self.get(word[1:]))
            self.cache[word] = hit
        return hit


def _delta_raw(config: TwistConfig, n: int, fs: _FieldStrings, gs: _FieldStrings):
    # sum over words a; b_i is the partner of a_i and the sign is prod eps^{a_i b_i}
    f0 = fs.cache[()]
    acc = None
    for word in product(INDICES, repeat=n):
        partner = tuple(3 - a for a in word)
        sign = 1
        for a in word:
            sign *= EPSILON[a - 1][2 - a]
        term = fs.get(word) * gs.get(partner)
        if sign < 0:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return f0.zero_like()
    return acc


def delta_power(config: TwistConfig, n: int, f, g):
    """``Delta^n(f, g)`` with the vector fields nested as written (outermost last)."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a non-negative integer")
    if n == 0:
        return f * g
    pref = (config.theta() * HALF_I) ** n
    if not pref:
        return (f * g).zero_like()
    return pref * _delta_raw(config, n, _FieldStrings(config, f), _FieldStrings(config, g))


def star_series(config: TwistConfig, f, g):
    """Exponential series of the bilinear operator ``Delta``."""
    result = f * g
    top = _theta_budget(config, f, g)
    if top <= 0:
        return result
    fs, gs = _FieldStrings(config, f), _FieldStrings(config, g)
    step = config.theta() * HALF_I
    pref = config.const(1)
    for n in range(1, top + 1):
        pref = pref * step * Fraction(1, n)
        result = result + pref * _delta_raw(config, n, fs, gs)
    return result


def _closed_level(f, g, n: int, fcache: dict, gcache: dict):
    # eps^{m1 n1}...eps^{mn nn} d_m f d_n g = sum_k C(n,k) (-1)^(n-k) d1^k d2^(n-k) f . d2^k d1^(n-k) g
    def deriv(cache, obj, i, j):
        key = (i, j)
        hit = cache.get(key)
        if hit is None:
            if i:
                hit = deriv(cache, obj, i - 1, j).derivative(1)
            elif j:
                hit = deriv(cache, obj, 0, j - 1).derivative(2)
            else:
                hit = obj
            cache[key] = hit
        return hit

    acc = None
    for k in range(n + 1):
        df = deriv(fcache, f, k, n - k)
        if not df:
            continue
        dg = deriv(gcache, g, n - k, k)
        if not dg:
            continue
        term = df * dg
        c = comb(n, k) * (-1 if (n - k) % 2 else 1)
        if c != 1:
            term = term * c
        acc = term if acc is None else acc + term
    return acc


def star_closed(config: TwistConfig, f, g):
    """``m exp((i/2) theta e^{-1} eps^{mu nu} d_mu (x) d_nu)``, with the
    ``(e^{-1})^n`` factor multiplied after both derivative strings."""
    result = f * g
    top = _theta_budget(config, f, g)
    if top <= 0:
        return result
    det_inv = build_geometry(config).det_e_inv
    kernel = config.theta() * det_inv * HALF_I
    pref = config.const(1)
    fcache, gcache = {}, {}
    for n in range(1, top + 1):
        pref = pref * kernel * Fraction(1, n)
        level = _closed_level(f, g, n, fcache, gcache)
        if level is not None:
            result = result + pref * level
    return result


def star(config: TwistConfig, f, g, method: str | None = None):
    method = method or config.star_method
    if method == "closed":
        return star_closed(config, f, g)
    if method == "series":
        return star_series(config, f, g)
    raise ValueError(f"unknown star method {method!r}")


def moyal_product(config: TwistConfig, f: Poly, g: Poly) -> Poly:
    """Constant-bivector Moyal product, summed over full index sequences.

    Ignores every omega symbol; used as an independent reference for the flat
    limit.
    """
    T = config.orders.theta_order
    result = f * g
    for n in range(1, T + 1):
        level = f.zero_like()
        for mus in product(INDICES, repeat=n):
            df = f
            for m in mus:
                df = df.derivative(m)
            if not df:
                continue
            for nus in product(INDICES, repeat=n):
                coeff = 1
                for m, v in zip(mus, nus):
                    coeff *= EPSILON[m - 1][v - 1]
                if not coeff:
                    continue
                dg = g
                for v in nus:
                    dg = dg.derivative(v)
                level = level + df * dg * coeff
        weight = (HALF_I ** n) * Fraction(1, factorial(n))
        result = result + config.theta() ** n * level * weight
    return result


def star_commutator(config: TwistConfig, f, g, method: str | None = None):
    return star(config, f, g, method) - star(config, g, f, method)


def star_anticommutator(config: TwistConfig, f, g, method: str | None = None):
    return star(config, f, g, method) + star(config, g, f, method)


def _series_coefficient(kind: str, n: int) -> Fraction:
    # T = (e^D - 1)/D, S = sinh(D)/D, R = (cosh(D) - 1)/D
    if kind == "T":
        return Fraction(1, factorial(n + 1))
    if kind == "S":
        return Fraction(1, factorial(n + 1)) if n % 2 == 0 else Fraction(0)
    if kind == "R":
        return Fraction(1, factorial(n + 1)) if n % 2 == 1 else Fraction(0)
    raise ValueError(f"series kind must be 'T', 'S' or 'R', got {kind!r}")


SERIES_KINDS = ("T", "S", "R")


def _bilinear(config: TwistConfig, kind: str, f, g):
    result = None
    top = _theta_budget(config, f, g)
    fs, gs = _FieldStrings(config, f), _FieldStrings(config, g)
    step = config.theta() * HALF_I
    pref = config.const(1)
    for n in range(0, max(top, 0) + 1):
        if n:
            pref = pref * step
        c = _series_coefficient(kind, n)
        if not c:
            continue
        term = f * g if n == 0 else pref * _delta_raw(config, n, fs, gs)
        term = term * c
        result = term if result is None else result + term
    return result if result is not None else (f * g).zero_like()


def bilinear_series(config: TwistConfig, kind: str, f, g, index: int | None = None):
    """Power series ``K(Delta)`` applied to ``(f, X~^a g)``.

    With ``index=a`` the free-index value ``K(Delta)(f, X~^a g)`` is returned.
    With ``index=None`` the frame index is contracted against the first slot,
    ``sum_a K(Delta)(X_a f, X~^a g)``, which is the form appearing in the
    expansions ``f*g = fg + X_a T(Delta)(f, X~^a g)`` and its relatives.
    """
    if kind not in SERIES_KINDS:
        raise ValueError(f"series kind must be 'T', 'S' or 'R', got {kind!r}")
    if index is not None:
        return _bilinear(config, kind, f, apply_twisted_field(config, index, g))
    acc = None
    for a in INDICES:
        term = _bilinear(config, kind, apply_vector_field(config, a, f),
                         apply_twisted_field(config, a, g))
        acc = term if acc is None else acc + term
    return acc


def star_power(config: TwistConfig, alpha, k: int, method: str | None = None):
    result = alpha.one_like()
    for _ in range(k):
        result = star(config, result, alpha, method)
    return result


def star_exponential(config: TwistConfig, alpha, order: int, method: str | None = None,
                     sign: int = 1):
    """``sum_{k<=order} (sign*i)^k alpha^{*k} / k!``."""
    if order < 0:
        raise ValueError("series order must be non-negative")
    unit = I_UNIT * sign
    result = alpha.one_like()
    power = alpha.one_like()
    for k in range(1, order + 1):
        power = star(config, power, alpha, method)
        result = result + power * (unit ** k * Fraction(1, factorial(k)))
    return result


# ----------------------------------------------------------------------------
# Plane waves.

WaveVector = tuple[Fraction, Fraction]


def _wave(k) -> WaveVector:
    k1, k2 = k
    return (Fraction(k1), Fraction(k2))


@dataclass(frozen=True)
class PlaneWaveElement:
    """``prefactor(x) * exp(i (k1 x1 + k2 x2))`` with a rational carrier."""

    wave_vector: WaveVector
    prefactor: Poly

    def __post_init__(self) -> None:
        object.__setattr__(self, "wave_vector", _wave(self.wave_vector))

    def as_sum(self) -> "PlaneWaveSum":
        return PlaneWaveSum({self.wave_vector: self.prefactor}, self.prefactor.orders)


class PlaneWaveSum:
    """Finite formal sum of plane-wave elements with distinct carriers."""

    __slots__ = ("parts", "orders")

    def __init__(self, parts: Mapping[WaveVector, Poly], orders):
        self.orders = orders
        self.parts = {_wave(k): p for k, p in parts.items() if p}

    @classmethod
    def wave(cls, config: TwistConfig, k, prefactor: Poly | None = None) -> "PlaneWaveSum":
        pre = prefactor if prefactor is not None else config.const(1)
        return cls({_wave(k): pre}, config.orders)

    def elements(self) -> list[PlaneWaveElement]:
        return [PlaneWaveElement(k, p) for k, p in sorted(self.parts.items())]

    def theta_degrees(self) -> set[int]:
        out = set()
        for p in self.parts.values():
            out |= {m.theta for m in p.terms}
        return out

    def zero_like(self) -> "PlaneWaveSum":
        return PlaneWaveSum({}, self.orders)

    def one_like(self) -> "PlaneWaveSum":
        return PlaneWaveSum({(Fraction(0), Fraction(0)): Poly.constant(1, self.orders)},
                            self.orders)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneWaveSum):
            return NotImplemented
        return self.orders == other.orders and self.parts == other.parts

    def __add__(self, other: "PlaneWaveSum") -> "PlaneWaveSum":
        if not isinstance(other, PlaneWaveSum):
            return NotImplemented
        parts = dict(self.parts)
        for k, p in other.parts.items():
            parts[k] = parts[k] + p if k in parts else p
        return PlaneWaveSum(parts, self.orders)

    def __neg__(self) -> "PlaneWaveSum":
        return PlaneWaveSum({k: -p for k, p in self.parts.items()}, self.orders)

    def __sub__(self, other: "PlaneWaveSum") -> "PlaneWaveSum":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PlaneWaveSum):
            parts: dict[WaveVector, Poly] = {}
            for k, p in self.parts.items():
                for q, r in other.parts.items():
                    key = (k[0] + q[0], k[1] + q[1])
                    term = p * r
                    parts[key] = parts[key] + term if key in parts else term
            return PlaneWaveSum(parts, self.orders)
        if isinstance(other, (Poly, int, Fraction, ExactComplexRational)):
            return PlaneWaveSum({k: p * other for k, p in self.parts.items()}, self.orders)
        return NotImplemented

    __rmul__ = __mul__

    def derivative(self, axis: int) -> "PlaneWaveSum":
        if axis not in (1, 2):
            raise ValueError(f"axis must be 1 or 2, got {axis!r}")
        return PlaneWaveSum(
            {k: p.derivative(axis) + p * (I_UNIT * k[axis - 1]) for k, p in self.parts.items()},
            self.orders)

    def render(self) -> str:
        if not self.parts:
            return "0"
        chunks = []
        for k, p in sorted(self.parts.items()):
            chunks.append(f"[{p.render()}]*e^(i*({k[0]}*x1 + {k[1]}*x2))")
        return " + ".join(chunks)

    __str__ = render

    def __repr__(self) -> str:
        return f"PlaneWaveSum({self.render()!r})"


def _as_wave_sum(u) -> PlaneWaveSum:
    if isinstance(u, PlaneWaveElement):
        return u.as_sum()
    if isinstance(u, PlaneWaveSum):
        return u
    raise TypeError(f"expected a plane-wave value, got {type(u).__name__}")


def plane_wave_star(config: TwistConfig, u, v, method: str | None = None) -> PlaneWaveSum:
    """Star product of plane-wave values; exponential corrections are expanded
    into the prefactor up to the truncation orders."""
    if config.flavor is not Flavor.ANTISYMMETRIC:
        raise FlavorError("plane-wave products are defined for the antisymmetric flavor")
    return star(config, _as_wave_sum(u), _as_wave_sum(v), method)


# ----------------------------------------------------------------------------
# Residuals.

def associativity_residual(config: TwistConfig, f, g, h, method: str | None = None):
    """``(f*g)*h - f*(g*h)``."""
    return (star(config, star(config, f, g, method), h, method)
            - star(config, f, star(config, g, h, method), method))


def leibniz_residual(config: TwistConfig, f, g, axis: int, method: str | None = None):
    """``d(f*g) - (df)*g - f*(dg)``."""
    return (star(config, f, g, method).derivative(axis)
            - star(config, f.derivative(axis), g, method)
            - star(config, f, g.derivative(axis), method))
