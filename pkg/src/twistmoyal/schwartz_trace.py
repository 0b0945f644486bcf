"""Gaussian-windowed polynomials with exact integrals.

A :class:`GaussianDensity` is a finite sum ``sum_j p_j(x) exp(-s_j |x|^2 / 2)``.
Derivatives stay in the class, ``d(p G) = (dp - s x p) G``, so the star kernels
apply unchanged.  Integrals over the plane are exact: every moment is a
rational multiple of ``pi`` (with coefficients that may still carry theta,
omega and eps symbols).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .coeff_algebra import DeformedPolynomial, ExactComplexRational, Monomial
from .twist_geometry import INDICES, TwistConfig, build_geometry

__all__ = [
    "GaussianDensity",
    "PiScalar",
    "DivergentIntegralError",
    "WindowError",
    "gd_star",
    "integral",
    "gaussian_moment",
    "CyclicityResidual",
    "cyclicity_residual",
    "inner_product",
    "ym_action",
    "action_invariance_residual",
]

Poly = DeformedPolynomial
_SCALARS = (int, Fraction, ExactComplexRational)


class DivergentIntegralError(ValueError):
    """Raised when a part without a decaying window is integrated."""


class WindowError(TypeError):
    """Raised when an operation needs windowed (Gaussian) inputs."""


class GaussianDensity:
    """Immutable map ``weight -> polynomial``.

    Weight 0 is allowed so that plain polynomials can be mixed in by
    addition; such parts are rejected by :func:`integral`.
    """

    __slots__ = ("parts", "orders")

    def __init__(self, parts: Mapping[Fraction, Poly], orders):
        self.orders = orders
        clean = {}
        for s, p in parts.items():
            s = Fraction(s)
            if s < 0:
                raise ValueError(f"window weight must be non-negative, got {s}")
            if p.orders != orders:
                p._check(Poly.zero(orders))
            if p:
                clean[s] = clean[s] + p if s in clean else p
        self.parts = {s: p for s, p in clean.items() if p}

    @classmethod
    def window(cls, weight, poly: Poly) -> "GaussianDensity":
        return cls({Fraction(weight): poly}, poly.orders)

    @classmethod
    def lift(cls, value) -> "GaussianDensity":
        if isinstance(value, GaussianDensity):
            return value
        if isinstance(value, Poly):
            return cls({Fraction(0): value}, value.orders)
        raise TypeError(f"cannot lift {type(value).__name__} to a windowed density")

    # -- inspection ---------------------------------------------------------

    def weights(self) -> list[Fraction]:
        return sorted(self.parts)

    def is_windowed(self) -> bool:
        return all(s > 0 for s in self.parts)

    def theta_degrees(self) -> set[int]:
        out = set()
        for p in self.parts.values():
            out |= p.theta_degrees()
        return out

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            other = GaussianDensity.lift(other)
        if not isinstance(other, GaussianDensity):
            return NotImplemented
        return self.orders == other.orders and self.parts == other.parts

    def __hash__(self) -> int:
        return hash((self.orders, frozenset(self.parts.items())))

    # -- algebra ------------------------------------------------------------

    def zero_like(self) -> "GaussianDensity":
        return GaussianDensity({}, self.orders)

    def one_like(self) -> "GaussianDensity":
        return GaussianDensity({Fraction(0): Poly.constant(1, self.orders)}, self.orders)

    def _other(self, other) -> "GaussianDensity | None":
        if isinstance(other, GaussianDensity):
            return other
        if isinstance(other, Poly):
            return GaussianDensity.lift(other)
        if isinstance(other, _SCALARS):
            return GaussianDensity.lift(Poly.constant(other, self.orders))
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        parts = dict(self.parts)
        for s, p in o.parts.items():
            parts[s] = parts[s] + p if s in parts else p
        return GaussianDensity(parts, self.orders)

    __radd__ = __add__

    def __neg__(self) -> "GaussianDensity":
        return GaussianDensity({s: -p for s, p in self.parts.items()}, self.orders)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS) or isinstance(other, Poly):
            return GaussianDensity({s: p * other for s, p in self.parts.items()}, self.orders)
        if not isinstance(other, GaussianDensity):
            return NotImplemented
        parts: dict[Fraction, Poly] = {}
        for s, p in self.parts.items():
            for t, q in other.parts.items():
                term = p * q
                if not term:
                    continue
                key = s + t
                parts[key] = parts[key] + term if key in parts else term
        return GaussianDensity(parts, self.orders)

    def __rmul__(self, other):
        if isinstance(other, _SCALARS) or isinstance(other, Poly):
            return GaussianDensity({s: other * p for s, p in self.parts.items()}, self.orders)
        return NotImplemented

    def derivative(self, axis: int) -> "GaussianDensity":
        if axis not in (1, 2):
            raise ValueError(f"axis must be 1 or 2, got {axis!r}")
        x = Poly.symbol(f"x{axis}", self.orders)
        parts = {}
        for s, p in self.parts.items():
            d = p.derivative(axis)
            if s:
                d = d - (x * p) * s
            parts[s] = d
        return GaussianDensity(parts, self.orders)

    def conjugate(self) -> "GaussianDensity":
        return GaussianDensity({s: p.conjugate() for s, p in self.parts.items()}, self.orders)

    def map_parts(self, fn) -> "GaussianDensity":
        return GaussianDensity({s: fn(p) for s, p in self.parts.items()}, self.orders)

    def render(self) -> str:
        if not self.parts:
            return "0"
        chunks = []
        for s, p in sorted(self.parts.items()):
            chunks.append(f"gauss({s}, {p.render()})" if s else p.render())
        return " + ".join(chunks)

    __str__ = render

    def __repr__(self) -> str:
        return f"GaussianDensity({self.render()!r})"


# ----------------------------------------------------------------------------
# Integration.


@dataclass(frozen=True)
class PiScalar:
    """``coefficient * pi``; the coefficient is free of ``x`` but may carry
    deformation symbols."""

    coefficient: Poly

    def __bool__(self) -> bool:
        return bool(self.coefficient)

    def __add__(self, other: "PiScalar") -> "PiScalar":
        return PiScalar(self.coefficient + other.coefficient)

    def __sub__(self, other: "PiScalar") -> "PiScalar":
        return PiScalar(self.coefficient - other.coefficient)

    def __neg__(self) -> "PiScalar":
        return PiScalar(-self.coefficient)

    def __mul__(self, scalar) -> "PiScalar":
        return PiScalar(self.coefficient * scalar)

    __rmul__ = __mul__

    def conjugate(self) -> "PiScalar":
        return PiScalar(self.coefficient.conjugate())

    def render(self) -> str:
        c = self.coefficient
        if not c:
            return "0"
        return f"({c.render()})*pi"

    __str__ = render


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gaussian_moment(p: int, q: int, weight) -> Fraction:
    """``(1/pi) * int x1^p x2^q exp(-s |x|^2 / 2) d^2x``."""
    s = Fraction(weight)
    if s <= 0:
        raise DivergentIntegralError(f"window weight must be positive, got {s}")
    if p % 2 or q % 2:
        return Fraction(0)
    return 2 / s * _double_factorial(p - 1) * _double_factorial(q - 1) / s ** ((p + q) // 2)


def integral(f, measure: str = "plain", config: TwistConfig | None = None) -> PiScalar:
    """Exact integral over the plane with measure ``d^2x`` or ``e d^2x``."""
    if isinstance(f, Poly):
        if not f:
            return PiScalar(f)
        raise DivergentIntegralError("a bare polynomial has no decaying window")
    if not isinstance(f, GaussianDensity):
        raise TypeError(f"cannot integrate {type(f).__name__}")
    if measure == "times_e":
        if config is None:
            raise ValueError("measure 'times_e' needs a configuration")
        f = f * build_geometry(config).det_e
    elif measure != "plain":
        raise ValueError(f"unknown measure {measure!r}")
    total = Poly.zero(f.orders)
    for s, p in f.parts.items():
        if s <= 0:
            raise DivergentIntegralError(f"part with window weight {s} does not decay")
        acc: dict[Monomial, ExactComplexRational] = {}
        for mono, c in p.terms.items():
            m = gaussian_moment(mono.x1, mono.x2, s)
            if not m:
                continue
            key = mono._replace(x1=0, x2=0)
            acc[key] = acc.get(key, ExactComplexRational()) + c * m
        total = total + Poly.from_terms(acc, f.orders)
    return PiScalar(total)


def gd_star(config: TwistConfig, f, g, method: str | None = None) -> GaussianDensity:
    """Star product on the windowed algebra."""
    from .star_kernel import star

    return GaussianDensity.lift(star(config, GaussianDensity.lift(f),
                                     GaussianDensity.lift(g), method))


class CyclicityResidual(NamedTuple):
    commutator: PiScalar      # int e (f*g - g*f)
    deformation: PiScalar     # int e (f*g - f g)
    plain_commutator: PiScalar  # int (f*g - g*f)


def cyclicity_residual(config: TwistConfig, f, g, method: str | None = None
                       ) -> CyclicityResidual:
    fg = gd_star(config, f, g, method)
    gf = gd_star(config, g, f, method)
    comm = fg - gf
    return CyclicityResidual(
        integral(comm, "times_e", config),
        integral(fg - GaussianDensity.lift(f) * GaussianDensity.lift(g), "times_e", config),
        integral(comm, "plain", config),
    )


def inner_product(config: TwistConfig, a, b, method: str | None = None) -> PiScalar:
    """``int e d^2x (a^dagger * b) * e^{-1}``."""
    det_inv = build_geometry(config).det_e_inv
    a = GaussianDensity.lift(a)
    prod = gd_star(config, gd_star(config, a.conjugate(), b, method), det_inv, method)
    return integral(prod, "times_e", config)


# ----------------------------------------------------------------------------
# Gauge action.


def _require_windowed(A) -> None:
    for comp in A.down:
        if not isinstance(comp, GaussianDensity) or not comp.is_windowed():
            raise WindowError("the action needs windowed gauge-field components")


def _contract_ff(config: TwistConfig, F_down, F_up, method):
    from .star_kernel import star

    acc = None
    for m in range(2):
        for n in range(2):
            term = star(config, F_down[m][n], F_up[m][n], method)
            acc = term if acc is None else acc + term
    return acc


def _action_from(config: TwistConfig, F_down, F_up, method) -> PiScalar:
    from .star_kernel import star

    det_inv = build_geometry(config).det_e_inv
    density = star(config, _contract_ff(config, F_down, F_up, method), det_inv, method)
    return integral(GaussianDensity.lift(density), "times_e", config) * (
        Fraction(-1, 4) / config.kappa ** 2)


def ym_action(config: TwistConfig, A, method: str | None = None) -> PiScalar:
    """``-(1/4 kappa^2) int e d^2x (F_{mu nu} * F^{mu nu} * e^{-1})``."""
    from .gauge_dynamics import faraday, raise_indices

    _require_windowed(A)
    F = faraday(config, A, method).F
    return _action_from(config, F, raise_indices(config, F), method)


def action_invariance_residual(config: TwistConfig, A, alpha, method: str | None = None,
                               constrained: bool = False) -> PiScalar:
    """First-order change of the action under ``F -> U * F * U^dagger`` with
    ``U = 1 + i alpha``.

    Only the part linear in ``alpha`` is kept, i.e. the tensor is replaced by
    ``F + i(alpha * F - F * alpha^dagger)`` in both slots and the bilinear
    cross terms are collected.
    """
    from .gauge_dynamics import EpsilonOmegaConstraint, alpha_poly, faraday, raise_indices
    from .star_kernel import star
    from .coeff_algebra import I_UNIT

    _require_windowed(A)
    a = alpha_poly(alpha)
    a_dag = a.conjugate()
    F = faraday(config, A, method).F
    F_up = raise_indices(config, F)

    def rotate(T):
        return tuple(
            tuple((star(config, a, T[m][n], method) - star(config, T[m][n], a_dag, method))
                  * I_UNIT for n in range(2))
            for m in range(2))

    dF, dF_up = rotate(F), rotate(F_up)
    det_inv = build_geometry(config).det_e_inv
    acc = None
    for m in range(2):
        for n in range(2):
            term = (star(config, dF[m][n], F_up[m][n], method)
                    + star(config, F[m][n], dF_up[m][n], method))
            acc = term if acc is None else acc + term
    density = star(config, acc, det_inv, method)
    value = integral(GaussianDensity.lift(density), "times_e", config) * (
        Fraction(-1, 4) / config.kappa ** 2)
    if constrained:
        value = PiScalar(EpsilonOmegaConstraint(True).reduce(value.coefficient))
    return value
