"""Gauge potentials, field strength, equations of motion and currents.

Every operation works on polynomial or windowed field components; products
written side by side are pointwise, star products are explicit.  Lower-index
tensors are stored as ``T[mu - 1][nu - 1]``.  Upper-index field strengths are
obtained with the inverse metric (see :func:`raise_indices`).  The
contractions ``omega_{ac}^a`` are always built from the full tensor.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any

from .coeff_algebra import I_UNIT, DeformedPolynomial
from .star_kernel import (
    apply_vector_field,
    bilinear_series,
    star,
    star_anticommutator,
    star_commutator,
)
from .twist_geometry import INDICES, Flavor, FlavorError, TwistConfig, build_geometry

__all__ = [
    "GaugeField",
    "GaugeParameter",
    "ParameterShape",
    "EpsilonOmegaConstraint",
    "alpha_poly",
    "connection_apply",
    "hermitian_compat_residual",
    "gauge_variation_A",
    "reduced_variation",
    "FaradayData",
    "faraday",
    "faraday_variation",
    "raise_indices",
    "CovarianceResidual",
    "covariance_residual",
    "EomResult",
    "eom_residual",
    "noether_current",
    "DivergenceResult",
    "divergence_check",
    "SandwichResult",
    "unitary_sandwich_check",
    "PhiSector",
    "phi_sector",
]

Poly = DeformedPolynomial
Pair = tuple[Any, Any]
Grid = tuple[tuple[Any, Any], tuple[Any, Any]]
PAIRS = list(product(range(2), range(2)))


def _sum(items, zero):
    acc = zero
    for item in items:
        acc = acc + item
    return acc


@dataclass(frozen=True)
class GaugeField:
    """Lower-index potential ``A_sigma``; ``A^mu = Theta~^{mu sigma} A_sigma``."""

    config: TwistConfig
    down: Pair

    def __post_init__(self) -> None:
        if len(self.down) != 2:
            raise ValueError("a gauge field has two components")
        object.__setattr__(self, "down", tuple(self.down))

    @classmethod
    def zero(cls, config: TwistConfig) -> "GaugeField":
        z = Poly.zero(config.orders)
        return cls(config, (z, z))

    @property
    def up(self) -> Pair:
        tt = build_geometry(self.config).theta_tilde
        return tuple(
            tt[m][0] * self.down[0] + tt[m][1] * self.down[1] for m in range(2))

    def zero_like(self):
        return self.down[0].zero_like()


class ParameterShape(str, enum.Enum):
    CONSTANT = "constant"
    LINEAR = "linear"
    GENERAL = "general"


@dataclass(frozen=True)
class GaugeParameter:
    """Gauge parameter ``alpha`` tagged with its shape.

    The linear shape is ``alpha_0 + eps1 x1 + eps2 x2`` with formal slopes.
    """

    alpha: Poly
    shape: ParameterShape = ParameterShape.GENERAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "shape", ParameterShape(self.shape))
        a = self.alpha
        if self.shape is ParameterShape.CONSTANT:
            if not a.is_x_free() or any(m.eps != (0, 0) for m in a.terms):
                raise ValueError("a constant gauge parameter must not depend on x or eps")
        elif self.shape is ParameterShape.LINEAR:
            o = a.orders
            slope = Poly.symbol("eps1", o) * Poly.symbol("x1", o) + \
                Poly.symbol("eps2", o) * Poly.symbol("x2", o)
            rest = a - slope
            if not rest.is_x_free() or any(m.eps != (0, 0) for m in rest.terms):
                raise ValueError("a linear gauge parameter must be alpha0 + eps1*x1 + eps2*x2")

    @classmethod
    def constant(cls, config: TwistConfig, value) -> "GaugeParameter":
        return cls(config.const(value), ParameterShape.CONSTANT)

    @classmethod
    def linear(cls, config: TwistConfig, alpha0=0) -> "GaugeParameter":
        o = config.orders
        a = config.const(alpha0) + Poly.symbol("eps1", o) * config.x(1) \
            + Poly.symbol("eps2", o) * config.x(2)
        return cls(a, ParameterShape.LINEAR)

    @classmethod
    def general(cls, alpha: Poly) -> "GaugeParameter":
        return cls(alpha, ParameterShape.GENERAL)

    def slopes(self, config: TwistConfig) -> Pair:
        if self.shape is not ParameterShape.LINEAR:
            raise ValueError("slopes exist only for the linear shape")
        o = config.orders
        return (Poly.symbol("eps1", o), Poly.symbol("eps2", o))


def alpha_poly(alpha) -> Poly:
    return alpha.alpha if isinstance(alpha, GaugeParameter) else alpha


@dataclass(frozen=True)
class EpsilonOmegaConstraint:
    """Drops every monomial carrying both an eps and an omega factor."""

    enabled: bool = True

    def reduce(self, value):
        if not self.enabled:
            return value
        if isinstance(value, Poly):
            return value.filter(lambda m: not (any(m.eps) and any(m.omega)))
        if hasattr(value, "map_parts"):
            return value.map_parts(self.reduce)
        if isinstance(value, tuple):
            return tuple(self.reduce(v) for v in value)
        raise TypeError(f"cannot reduce {type(value).__name__}")


# ----------------------------------------------------------------------------
# Connection.


def connection_apply(config: TwistConfig, A: GaugeField, f, method: str | None = None) -> Pair:
    """``nabla_mu f = d_mu f - i A_mu * f`` for ``mu = 1, 2``."""
    return tuple(
        f.derivative(m + 1) - star(config, A.down[m], f, method) * I_UNIT for m in range(2))


def hermitian_compat_residual(config: TwistConfig, A: GaugeField, f, g,
                              method: str | None = None) -> Pair:
    """``d_mu h(f, g) - h(nabla_mu f, g) - h(f, nabla_mu g)`` with ``h(f, g) = f^dagger * g``."""
    nf = connection_apply(config, A, f, method)
    ng = connection_apply(config, A, g, method)
    h = star(config, f.conjugate(), g, method)
    return tuple(
        h.derivative(m + 1)
        - star(config, nf[m].conjugate(), g, method)
        - star(config, f.conjugate(), ng[m], method)
        for m in range(2))


# ----------------------------------------------------------------------------
# Variations and field strength.


def gauge_variation_A(config: TwistConfig, A: GaugeField, alpha,
                      method: str | None = None) -> Pair:
    """``d_s alpha + i[alpha, A_s] + 2 omega_{ac}^a Theta^{c rho} d_rho alpha A_s``
    (the coordinate shift in the twisted term is zero)."""
    a = alpha_poly(alpha)
    twist = _sum((config.omega_trace(c) * config.big_theta(c, r) * a.derivative(r)
                  for c, r in product(INDICES, INDICES)), config.const(0)) * 2
    return tuple(
        a.derivative(s + 1) + star_commutator(config, a, A.down[s], method) * I_UNIT
        + twist * A.down[s]
        for s in range(2))


def reduced_variation(config: TwistConfig, A: GaugeField, alpha: GaugeParameter) -> Pair:
    """``eps_mu (1 + Theta^{rho sigma} d_rho A_sigma)`` for a linear parameter."""
    eps = alpha.slopes(config)
    div = _sum((config.big_theta(r, s) * A.down[s - 1].derivative(r)
                for r, s in product(INDICES, INDICES)), A.zero_like())
    return tuple(eps[m] * (div + config.const(1)) for m in range(2))


def _faraday_linear(config: TwistConfig, A: Pair) -> Grid:
    # d_s A_l - d_l A_s + 2 omega_{a[s}^a A_{l]}
    out = [[None, None], [None, None]]
    for s, l in PAIRS:
        out[s][l] = (A[l].derivative(s + 1) - A[s].derivative(l + 1)
                     + (config.omega_trace(s + 1) * A[l] - config.omega_trace(l + 1) * A[s]) * 2)
    return tuple(tuple(r) for r in out)


def _faraday_quadratic(config: TwistConfig, A: Pair, B: Pair, method) -> Grid:
    # -i[A_s, B_l] - 2 omega_{ac}^a Theta^{c rho} ((d_rho A_s) B_l - (d_rho A_l) B_s)
    out = [[None, None], [None, None]]
    for s, l in PAIRS:
        term = star(config, A[s], B[l], method) - star(config, B[l], A[s], method)
        acc = term * (-I_UNIT)
        for c, r in product(INDICES, INDICES):
            coeff = config.omega_trace(c) * config.big_theta(c, r) * 2
            if coeff:
                acc = acc - coeff * (A[s].derivative(r) * B[l] - A[l].derivative(r) * B[s])
        out[s][l] = acc
    return tuple(tuple(r) for r in out)


def _grid_add(*grids: Grid) -> Grid:
    return tuple(
        tuple(_sum((g[m][n] for g in grids[1:]), grids[0][m][n]) for n in range(2))
        for m in range(2))


@dataclass(frozen=True)
class FaradayData:
    F: Grid                  # F_{sigma lambda}
    T: Grid                  # [X^mu, X^nu]_* - i Theta~^{mu nu}
    consistency: Grid        # T^{mu nu} - i Theta~^{mu s} Theta~^{nu l} F_{s l}


def faraday(config: TwistConfig, A: GaugeField, method: str | None = None) -> FaradayData:
    F = _grid_add(_faraday_linear(config, A.down),
                  _faraday_quadratic(config, A.down, A.down, method))
    geo = build_geometry(config)
    tt = geo.theta_tilde
    zero = A.zero_like()
    X = tuple(config.x(m + 1) + A.up[m] for m in range(2))
    T = tuple(
        tuple(star_commutator(config, X[m], X[n], method) - tt[m][n] * I_UNIT
              for n in range(2))
        for m in range(2))
    cons = tuple(
        tuple(T[m][n] - _sum((tt[m][s] * tt[n][l] * F[s][l] for s, l in PAIRS), zero) * I_UNIT
              for n in range(2))
        for m in range(2))
    return FaradayData(F, T, cons)


def faraday_variation(config: TwistConfig, A: GaugeField, dA: Pair,
                      method: str | None = None) -> Grid:
    """Part of ``F[A + dA] - F[A]`` linear in ``dA``."""
    return _grid_add(_faraday_linear(config, dA),
                     _faraday_quadratic(config, dA, A.down, method),
                     _faraday_quadratic(config, A.down, dA, method))


def raise_indices(config: TwistConfig, F: Grid) -> Grid:
    """``F^{mu nu} = g^{mu a} g^{nu b} F_{ab}`` (pointwise)."""
    g = build_geometry(config).g_up
    zero = F[0][0].zero_like()
    return tuple(
        tuple(_sum((g[m][a] * g[n][b] * F[a][b] for a, b in PAIRS), zero) for n in range(2))
        for m in range(2))


@dataclass(frozen=True)
class CovarianceResidual:
    T: Grid   # delta_alpha T^{mu nu} - i[alpha, T^{mu nu}]_*
    F: Grid   # delta_alpha F_{s l} - i[alpha, F_{s l}]_*


def covariance_residual(config: TwistConfig, A: GaugeField, alpha,
                        method: str | None = None) -> CovarianceResidual:
    a = alpha_poly(alpha)
    dA = gauge_variation_A(config, A, a, method)
    fd = faraday(config, A, method)
    tt = build_geometry(config).theta_tilde
    dA_up = tuple(tt[m][0] * dA[0] + tt[m][1] * dA[1] for m in range(2))
    X = tuple(config.x(m + 1) + A.up[m] for m in range(2))
    dT = tuple(
        tuple(star_commutator(config, dA_up[m], X[n], method)
              + star_commutator(config, X[m], dA_up[n], method) for n in range(2))
        for m in range(2))
    dF = faraday_variation(config, A, dA, method)

    def resid(delta: Grid, base: Grid) -> Grid:
        return tuple(
            tuple(delta[m][n] - star_commutator(config, a, base[m][n], method) * I_UNIT
                  for n in range(2))
            for m in range(2))

    return CovarianceResidual(resid(dT, fd.T), resid(dF, fd.F))


# ----------------------------------------------------------------------------
# Equations of motion and currents.


def _anti_inv(config: TwistConfig, F_up: Grid, method) -> Grid:
    """``{F^{mu nu}, e^{-1}}_*``."""
    det_inv = build_geometry(config).det_e_inv
    return tuple(
        tuple(star_anticommutator(config, F_up[m][n], det_inv, method) for n in range(2))
        for m in range(2))


@dataclass(frozen=True)
class EomResult:
    value: Pair                 # requested form, indexed by beta
    anticommutator_gap: Grid    # {F^{mu nu}, e^{-1}}_* - 2 e^{-1} F^{mu nu}
    discrepancy: Pair | None = None  # full + 4 * reduced (for form="full")


def _eom_full(config: TwistConfig, A: GaugeField, F_up: Grid, B: Grid, method) -> Pair:
    geo = build_geometry(config)
    e = geo.det_e
    zero = A.zero_like()
    out = []
    for b in range(2):
        acc = zero
        for m in range(2):
            acc = acc - (e * B[m][b]).derivative(m + 1) + (e * B[b][m]).derivative(m + 1)
            acc = acc - e * star_commutator(config, A.down[m], B[b][m], method) * I_UNIT
            acc = acc + e * star_commutator(config, A.down[m], B[m][b], method) * I_UNIT
            acc = acc + e * (config.omega_trace(m + 1) * B[m][b]
                             - config.omega_trace(m + 1) * B[b][m]) * 2
        for c, r in product(INDICES, INDICES):
            w = config.omega_trace(c) * config.big_theta(c, r)
            if not w:
                continue
            inner = _sum(((e * A.down[m]) * B[m][b] - (e * A.down[m]) * B[b][m]
                          for m in range(2)), zero)
            acc = acc - w * inner.derivative(r) * 2
            grad = _sum((A.down[m].derivative(r) * B[m][b] - A.down[m].derivative(r) * B[b][m]
                         for m in range(2)), zero)
            acc = acc - e * w * grad * 2
        out.append(acc)
    return tuple(out)


def _eom_reduced(config: TwistConfig, A: GaugeField, F_up: Grid) -> Pair:
    zero = A.zero_like()
    out = []
    for b in range(2):
        acc = _sum((F_up[m][b].derivative(m + 1)
                    - config.omega_trace(m + 1) * F_up[m][b] * 2 for m in range(2)), zero)
        for c, r in product(INDICES, INDICES):
            w = config.omega_trace(c) * config.big_theta(c, r)
            if not w:
                continue
            for m in range(2):
                acc = acc + w * (A.down[m].derivative(r) * F_up[m][b]) * 4
                acc = acc + w * (A.down[m] * F_up[m][b].derivative(r)) * 2
        out.append(acc)
    return tuple(out)


def eom_residual(config: TwistConfig, A: GaugeField, form: str = "reduced",
                 method: str | None = None) -> EomResult:
    """Field equation of ``A``.

    ``form="full"`` evaluates the complete variational expression;
    ``form="reduced"`` evaluates
    ``d_mu F^{mu b} - 2 w_mu F^{mu b} + 4 w_c Theta^{c r} (d_r A_mu) F^{mu b}
    + 2 w_c Theta^{c r} A_mu d_r F^{mu b}`` with ``w_c = omega_{ac}^a``.
    """
    fd = faraday(config, A, method)
    F_up = raise_indices(config, fd.F)
    B = _anti_inv(config, F_up, method)
    det_inv = build_geometry(config).det_e_inv
    gap = tuple(tuple(B[m][n] - det_inv * F_up[m][n] * 2 for n in range(2)) for m in range(2))
    reduced = _eom_reduced(config, A, F_up)
    if form == "reduced":
        return EomResult(reduced, gap)
    if form == "full":
        full = _eom_full(config, A, F_up, B, method)
        disc = tuple(full[b] + reduced[b] * 4 for b in range(2))
        return EomResult(full, gap, disc)
    raise ValueError(f"form must be 'full' or 'reduced', got {form!r}")


def _delta_A(config: TwistConfig, A: GaugeField, alpha, delta_A) -> Pair:
    if delta_A is not None:
        return tuple(delta_A)
    if isinstance(alpha, GaugeParameter) and alpha.shape is ParameterShape.LINEAR:
        return reduced_variation(config, A, alpha)
    return gauge_variation_A(config, A, alpha)


def noether_current(config: TwistConfig, A: GaugeField, alpha, form: str = "reduced",
                    delta_A: Pair | None = None, method: str | None = None) -> Pair:
    """Current ``J^beta``.

    ``form`` is ``"full"`` (complete first-variation current, series terms via
    :func:`bilinear_series`), ``"reduced"`` (the folded two-term form) or
    ``"linear"`` (``eps_mu/kappa^2 (1 + Theta d A) F^{mu beta}``).
    """
    geo = build_geometry(config)
    e = geo.det_e
    k2 = config.kappa ** 2
    dA = _delta_A(config, A, alpha, delta_A)
    fd = faraday(config, A, method)
    F_up = raise_indices(config, fd.F)
    zero = A.zero_like()

    if form == "linear":
        if not (isinstance(alpha, GaugeParameter) and alpha.shape is ParameterShape.LINEAR):
            raise ValueError("the linear form needs a linear gauge parameter")
        eps = alpha.slopes(config)
        div = _sum((config.big_theta(r, s) * A.down[s - 1].derivative(r)
                    for r, s in product(INDICES, INDICES)), zero)
        return tuple(
            _sum((eps[m] * (div + config.const(1)) * F_up[m][b] for m in range(2)), zero)
            * (1 / k2)
            for b in range(2))

    B = _anti_inv(config, F_up, method)

    def twist_column(b: int):
        return _sum((config.omega_trace(c) * config.big_theta(c, b + 1) for c in INDICES),
                    config.const(0))

    if form == "reduced":
        out = []
        for b in range(2):
            acc = _sum((e * dA[m] * B[m][b] for m in range(2)), zero)
            w = twist_column(b)
            if w:
                acc = acc + w * e * _sum(((dA[m] * A.down[n] - dA[n] * A.down[m]) * B[m][n]
                                          for m, n in PAIRS), zero)
            out.append(acc * Fraction(1, 2) / k2)
        return tuple(out)

    if form != "full":
        raise ValueError(f"form must be 'full', 'reduced' or 'linear', got {form!r}")

    det_inv = geo.det_e_inv
    dF_up = raise_indices(config, faraday_variation(config, A, dA, method))
    out = []
    for b in range(2):
        acc = _sum((e * dA[n] * B[b][n] - e * dA[n] * B[n][b] for n in range(2)), zero)
        series_i = zero
        series_r = zero
        for a in INDICES:
            frame = geo.e_up[a - 1][b]
            t = zero
            for m, n in PAIRS:
                t = t + bilinear_series(
                    config, "T", dA[m], star_commutator(config, A.down[n], B[m][n], method), a)
                t = t - bilinear_series(
                    config, "T", dA[n], star_commutator(config, A.down[m], B[m][n], method), a)
                bracket = (star(config, dA[m], A.down[n], method)
                           - star(config, A.down[n], dA[m], method)
                           - star(config, dA[n], A.down[m], method)
                           + star(config, A.down[m], dA[n], method))
                t = t + bilinear_series(config, "T", bracket, B[m][n], a)
                t = t + bilinear_series(config, "S", A.down[m], dA[n] * B[m][n], a) * 2
                t = t - bilinear_series(config, "S", A.down[n], dA[m] * B[m][n], a) * 2
            series_i = series_i + frame * t
            r = zero
            for m, n in PAIRS:
                r = r + bilinear_series(config, "T", dF_up[m][n], B[m][n], a)
                r = r + bilinear_series(config, "S", F_up[m][n],
                                        star(config, dF_up[m][n], det_inv, method), a) * 2
            series_r = series_r + frame * r
        acc = acc - e * series_i * I_UNIT
        w = twist_column(b)
        if w:
            acc = acc - w * e * _sum(((dA[m] * A.down[n] - dA[n] * A.down[m]) * B[m][n]
                                      for m, n in PAIRS), zero) * 2
        acc = acc + e * series_r
        out.append(acc * (Fraction(-1, 4) / k2))
    return tuple(out)


@dataclass(frozen=True)
class DivergenceResult:
    residual: Any        # after on-shell substitution and the eps-omega reduction
    divergence: Any      # d_beta J^beta of the reduced current, raw
    onshell: Any         # divergence after on-shell substitution, before reduction
    dropped_term: Any      # d_beta J^beta - eps_mu/k^2 (1 + Theta dA) d_beta F^{mu beta}

    @property
    def vanishes(self) -> bool:
        return not self.residual


def divergence_check(config: TwistConfig, A: GaugeField, alpha: GaugeParameter,
                     constraint: EpsilonOmegaConstraint = EpsilonOmegaConstraint(True),
                     method: str | None = None) -> DivergenceResult:
    """Conservation of the reduced current for a linear gauge parameter.

    The divergence is put on shell by adding ``C_mu E^mu`` where ``E^mu`` is
    the reduced field equation and ``C_mu = e dA_mu e^{-1} / kappa^2`` is the
    coefficient with which ``d_beta F^{beta mu}`` enters ``-d_beta J^beta``.
    """
    if alpha.shape is not ParameterShape.LINEAR:
        raise ValueError("the conservation check needs a linear gauge parameter")
    geo = build_geometry(config)
    J = noether_current(config, A, alpha, "reduced", method=method)
    div = J[0].derivative(1) + J[1].derivative(2)
    dA = reduced_variation(config, A, alpha)
    eom = eom_residual(config, A, "reduced", method).value
    k2 = config.kappa ** 2
    onshell = div
    for m in range(2):
        onshell = onshell + geo.det_e * dA[m] * geo.det_e_inv * eom[m] * (1 / k2)
    residual = constraint.reduce(onshell)

    fd = faraday(config, A, method)
    F_up = raise_indices(config, fd.F)
    claimed = _sum((dA[m] * F_up[m][b].derivative(b + 1) for m, b in PAIRS), A.zero_like())
    dropped_term = constraint.reduce(div - claimed * (1 / k2))
    return DivergenceResult(residual, div, onshell, dropped_term)


@dataclass(frozen=True)
class SandwichResult:
    obstruction: Any        # U^dagger * e^{-1} * U - e^{-1}, linear in alpha
    contraction: Any        # Theta^{mu nu} (d_nu e^{-1}) d_mu alpha
    mismatch: Any           # obstruction - contraction
    constrained: Any        # obstruction after the eps-omega reduction
    divergence_form_gap: Pair | None = None  # delta A_s - d_rho Lambda^rho_s (linear alpha)


def unitary_sandwich_check(config: TwistConfig, alpha, A: GaugeField | None = None,
                           method: str | None = None) -> SandwichResult:
    """Infinitesimal ``U = 1 + i alpha`` acting on ``e^{-1}``, kept to first order."""
    a = alpha_poly(alpha)
    det_inv = build_geometry(config).det_e_inv
    obstruction = (star(config, det_inv, a, method)
                   - star(config, a.conjugate(), det_inv, method)) * I_UNIT
    contraction = _sum((config.big_theta(m, n) * det_inv.derivative(n) * a.derivative(m)
                        for m, n in product(INDICES, INDICES)), config.const(0))
    gap = None
    if (isinstance(alpha, GaugeParameter) and alpha.shape is ParameterShape.LINEAR
            and A is not None):
        eps = alpha.slopes(config)
        zero = A.zero_like()
        lhs = tuple(
            a.derivative(s + 1) - _sum((eps[m - 1] * config.big_theta(m, r)
                                        * A.down[s].derivative(r)
                                        for m, r in product(INDICES, INDICES)), zero)
            for s in range(2))
        rhs = tuple(
            a.derivative(s + 1) * Fraction(1, 2)
            - _sum((eps[m - 1] * config.big_theta(m, r) * A.down[s].derivative(r)
                    for m, r in product(INDICES, INDICES)), zero)
            for s in range(2))
        gap = tuple(lhs[s] - rhs[s] for s in range(2))
    return SandwichResult(obstruction, contraction, obstruction - contraction,
                          EpsilonOmegaConstraint(True).reduce(obstruction), gap)


# ----------------------------------------------------------------------------
# Commuting-frame sector.


@dataclass(frozen=True)
class PhiSector:
    equation: Pair      # E_{phi, A} for a = 1, 2
    current: Pair       # K^beta
    combined: Pair      # J^beta + K^beta (reduced J)
    divergence: Any     # d_beta (J + K)^beta after the eps-omega reduction


def phi_sector(config: TwistConfig, A: GaugeField, alpha: GaugeParameter | None = None,
               method: str | None = None) -> PhiSector:
    """Field equation of the potentials ``phi^a`` and the current they generate.

    ``delta phi^c = i alpha * phi^c``; the last series term of the current is
    taken inside the ``e e_b^beta / 4 kappa^2`` prefactor like the others.
    """
    if config.flavor is not Flavor.SYMMETRIC:
        raise FlavorError("the phi sector needs commuting frame fields (symmetric flavor)")
    from .twist_geometry import phi_potentials

    if alpha is None:
        alpha = GaugeParameter.linear(config)
    geo = build_geometry(config)
    e, det_inv = geo.det_e, geo.det_e_inv
    k2 = config.kappa ** 2
    zero = A.zero_like()
    fd = faraday(config, A, method)
    F, F_up = fd.F, raise_indices(config, fd.F)
    B_low = tuple(
        tuple(star_anticommutator(config, F[m][n], det_inv, method) for n in range(2))
        for m in range(2))
    B_up = _anti_inv(config, F_up, method)
    FF = _sum((star(config, F[m][n], F_up[m][n], method) for m, n in PAIRS), zero)

    equation = tuple(
        det_inv * apply_vector_field(config, a, FF)
        - _sum((apply_vector_field(config, a, F_up[m][n]) * B_low[m][n] for m, n in PAIRS), zero)
        for a in INDICES)

    a_poly = alpha_poly(alpha)
    phi = phi_potentials(config).phi
    dphi = tuple(star(config, a_poly, p, method) * I_UNIT for p in phi)
    FF_inv = star(config, FF, det_inv, method)

    current = []
    for beta in range(2):
        acc = zero
        for b in INDICES:
            inner = -star(config, FF, dphi[b - 1] * det_inv, method) + dphi[b - 1] * FF_inv
            for a in INDICES:
                inner = inner + bilinear_series(
                    config, "T", apply_vector_field(config, a, FF), dphi[a - 1] * det_inv, b)
                for m, n in PAIRS:
                    xf = dphi[a - 1] * apply_vector_field(config, a, F[m][n])
                    inner = inner - bilinear_series(config, "T", xf, B_up[m][n], b)
                    inner = inner + bilinear_series(
                        config, "S", star(config, xf, det_inv, method), F_up[m][n], b) * 2
            acc = acc + e * geo.e_up[b - 1][beta] * inner
        current.append(acc * (Fraction(-1, 4) / k2))
    current = tuple(current)

    J = noether_current(config, A, alpha, "reduced", method=method)
    combined = tuple(J[b] + current[b] for b in range(2))
    div = EpsilonOmegaConstraint(True).reduce(
        combined[0].derivative(1) + combined[1].derivative(2))
    return PhiSector(equation, current, combined, div)
