"""Vielbein, metric and twist tensor for the two deformation flavors.

Index conventions: public functions take 1-based indices (``a, mu in {1, 2}``),
while matrices are stored as nested tuples with 0-based access, so that
``geometry.e_up[a - 1][mu - 1]`` is ``e_a^mu``.  Antisymmetrisation brackets
are unnormalised: ``A^[mu B^nu] = A^mu B^nu - A^nu B^mu``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .coeff_algebra import (
    OMEGA_SLOTS,
    OMEGA_NAMES,
    DeformedPolynomial,
    TruncationOrders,
)

__all__ = [
    "Flavor",
    "FlavorError",
    "TwistConfig",
    "GeometryData",
    "PhiPotentials",
    "JacobiObstruction",
    "build_geometry",
    "structure_constants",
    "jacobi_obstruction",
    "theta_tilde_identity_residual",
    "phi_potentials",
    "EPSILON",
]

Poly = DeformedPolynomial
Matrix = tuple[tuple[Poly, Poly], tuple[Poly, Poly]]

# symplectic symbol, 0-based: EPSILON[0][1] = eps^{12} = 1
EPSILON = ((0, 1), (-1, 0))
INDICES = (1, 2)


class FlavorError(ValueError):
    """Raised when an operation requires the other deformation flavor."""


class Flavor(str, enum.Enum):
    ANTISYMMETRIC = "antisymmetric"
    SYMMETRIC = "symmetric"

    def allowed_omega(self) -> frozenset[tuple[int, int, int]]:
        if self is Flavor.ANTISYMMETRIC:
            return frozenset({(1, 2, 1), (1, 2, 2)})
        return frozenset(OMEGA_SLOTS)


@dataclass(frozen=True)
class TwistConfig:
    """Deformation data.

    ``admissible_omega`` lists the ``(a, b, mu)`` slots (with ``a <= b``) that
    are allowed to be nonzero; ``None`` means every slot the flavor permits.
    ``star_method`` selects the star product used by the gauge-level
    operations (``"closed"`` or ``"series"``).
    """

    flavor: Flavor = Flavor.ANTISYMMETRIC
    orders: TruncationOrders = field(default_factory=TruncationOrders)
    kappa: Fraction = Fraction(1)
    admissible_omega: frozenset[tuple[int, int, int]] | None = None
    star_method: str = "closed"

    def __post_init__(self) -> None:
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        object.__setattr__(self, "kappa", Fraction(self.kappa))
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        allowed = self.flavor.allowed_omega()
        if self.admissible_omega is None:
            object.__setattr__(self, "admissible_omega", allowed)
        else:
            slots = frozenset(tuple(t) for t in self.admissible_omega)
            bad = slots - allowed
            if bad:
                raise FlavorError(
                    f"omega slots {sorted(bad)} are not allowed for the {self.flavor.value} flavor")
            object.__setattr__(self, "admissible_omega", slots)
        if self.star_method not in ("closed", "series"):
            raise ValueError(f"unknown star method {self.star_method!r}")

    def replace(self, **changes) -> "TwistConfig":
        data = {
            "flavor": self.flavor,
            "orders": self.orders,
            "kappa": self.kappa,
            "admissible_omega": self.admissible_omega,
            "star_method": self.star_method,
        }
        if "flavor" in changes and "admissible_omega" not in changes:
            data["admissible_omega"] = None
        data.update(changes)
        return TwistConfig(**data)

    @property
    def flat(self) -> bool:
        return not self.admissible_omega

    # -- generators ---------------------------------------------------------

    def const(self, value) -> Poly:
        return Poly.constant(value, self.orders)

    def x(self, mu: int) -> Poly:
        return Poly.symbol(f"x{mu}", self.orders)

    def theta(self) -> Poly:
        return Poly.symbol("theta", self.orders)

    def omega(self, a: int, b: int, mu: int) -> Poly:
        """``omega_{ab}^mu`` with the flavor's symmetry relation applied."""
        sign = 1
        if a > b:
            a, b = b, a
            if self.flavor is Flavor.ANTISYMMETRIC:
                sign = -1
        if a == b and self.flavor is Flavor.ANTISYMMETRIC:
            return Poly.zero(self.orders)
        if (a, b, mu) not in self.admissible_omega:
            return Poly.zero(self.orders)
        name = OMEGA_NAMES[OMEGA_SLOTS.index((a, b, mu))]
        return Poly.symbol(name, self.orders) * sign

    def omega_trace(self, c: int) -> Poly:
        """The contraction ``omega_{ac}^a`` summed over ``a``."""
        return sum((self.omega(a, c, a) for a in INDICES), Poly.zero(self.orders))

    def big_theta(self, a: int, b: int) -> Poly:
        """Constant bivector ``Theta^{ab} = theta * eps^{ab}``."""
        return self.theta() * EPSILON[a - 1][b - 1]


@dataclass(frozen=True)
class GeometryData:
    e_up: Matrix          # e_a^mu, [a][mu]
    e_down: Matrix        # e_mu^a, [mu][a]
    det_e_inv: Poly       # e^{-1} = det(e_a^mu)
    det_e: Poly           # e = det(e_mu^a)
    g_down: Matrix        # g_{mu nu}
    g_up: Matrix          # g^{mu nu}
    theta_tilde: Matrix   # theta e^{-1} eps^{mu nu}
    theta_tilde_tensor: Matrix  # Theta^{mu nu} - Theta^{a[mu} omega_ab^{nu]} x^b


def _det(m: Matrix) -> Poly:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2)
    )


def _inverse_of_unit_det(d: Poly) -> Poly:
    # d = 1 + u with u of omega degree >= 1, so the geometric series terminates
    u = d - 1
    if u.omega_part(0):
        raise ValueError("determinant is not a unit of the truncated ring")
    result = d.one_like()
    term = d.one_like()
    for _ in range(d.orders.omega_order):
        term = term * (-u)
        result = result + term
    return result


def _inverse(m: Matrix) -> Matrix:
    inv_det = _inverse_of_unit_det(_det(m))
    return (
        (m[1][1] * inv_det, -m[0][1] * inv_det),
        (-m[1][0] * inv_det, m[0][0] * inv_det),
    )


@lru_cache(maxsize=64)
def build_geometry(config: TwistConfig) -> GeometryData:
    zero = Poly.zero(config.orders)
    xs = (config.x(1), config.x(2))

    e_up = tuple(
        tuple(
            config.const(int(a == mu)) + sum(
                (config.omega(a, b, mu) * xs[b - 1] for b in INDICES), zero)
            for mu in INDICES)
        for a in INDICES)
    e_down = _inverse(e_up)
    det_e_inv = _det(e_up)
    det_e = _det(e_down)

    g_down = tuple(
        tuple(sum((e_down[m][a] * e_down[n][a] for a in range(2)), zero) for n in range(2))
        for m in range(2))
    g_up = tuple(
        tuple(sum((e_up[a][m] * e_up[a][n] for a in range(2)), zero) for n in range(2))
        for m in range(2))

    theta = config.theta()
    theta_tilde = tuple(
        tuple(theta * det_e_inv * EPSILON[m][n] for n in range(2)) for m in range(2))

    def tensor_entry(mu: int, nu: int) -> Poly:
        acc = config.big_theta(mu, nu)
        for a, b in product(INDICES, INDICES):
            acc = acc - (config.big_theta(a, mu) * config.omega(a, b, nu)
                         - config.big_theta(a, nu) * config.omega(a, b, mu)) * xs[b - 1]
        return acc

    theta_tilde_tensor = tuple(
        tuple(tensor_entry(mu, nu) for nu in INDICES) for mu in INDICES)

    lin = TruncationOrders(config.orders.theta_order, min(config.orders.omega_order, 1))
    for m, n in product(range(2), range(2)):
        if (theta_tilde[m][n].with_orders(lin)
                != theta_tilde_tensor[m][n].with_orders(lin)):
            raise ArithmeticError(
                f"twist tensor forms disagree at ({m + 1},{n + 1}): "
                f"{theta_tilde[m][n]} vs {theta_tilde_tensor[m][n]}")

    return GeometryData(e_up, e_down, det_e_inv, det_e, g_down, g_up,
                        theta_tilde, theta_tilde_tensor)


def structure_constants(config: TwistConfig) -> dict[str, dict[tuple[int, int], tuple[Poly, Poly]]]:
    """Lie brackets of the frame fields.

    Returns ``{"coordinate": {(a, b): ([X_a,X_b]^1, [X_a,X_b]^2)},
    "frame": {(a, b): (C_ab^1, C_ab^2)}}``: the coefficients on ``d_mu`` and on
    ``X_c`` respectively.
    """
    geo = build_geometry(config)
    e = geo.e_up
    coord, frame = {}, {}
    for a, b in product(INDICES, INDICES):
        comps = []
        for nu in range(2):
            val = Poly.zero(config.orders)
            for mu in range(2):
                val = (val + e[a - 1][mu] * e[b - 1][nu].derivative(mu + 1)
                       - e[b - 1][mu] * e[a - 1][nu].derivative(mu + 1))
            comps.append(val)
        coord[(a, b)] = tuple(comps)
        frame[(a, b)] = tuple(
            geo.e_down[0][c] * comps[0] + geo.e_down[1][c] * comps[1] for c in range(2))
    return {"coordinate": coord, "frame": frame}


@dataclass(frozen=True)
class JacobiObstruction:
    """Three views of the Jacobi obstruction, keyed by ``(mu, nu, rho)``.

    ``tensor`` is ``Theta^{b mu} Theta^{d[nu} omega_bd^{rho]}`` for the single
    index ordering; ``cyclic`` sums it over the cyclic permutations of
    ``(mu, nu, rho)``; ``star`` is the cyclic sum of nested star brackets of
    the coordinates (``None`` unless requested).
    """

    tensor: dict[tuple[int, int, int], Poly]
    cyclic: dict[tuple[int, int, int], Poly]
    star: dict[tuple[int, int, int], Poly] | None = None

    def vanishes(self) -> bool:
        views = [self.cyclic] + ([self.star] if self.star is not None else [])
        return all(not v for view in views for v in view.values())


def _jacobi_tensor(config: TwistConfig, mu: int, nu: int, rho: int) -> Poly:
    acc = Poly.zero(config.orders)
    for b, d in product(INDICES, INDICES):
        acc = acc + config.big_theta(b, mu) * (
            config.big_theta(d, nu) * config.omega(b, d, rho)
            - config.big_theta(d, rho) * config.omega(b, d, nu))
    return acc


def jacobi_obstruction(config: TwistConfig, with_star: bool = True) -> JacobiObstruction:
    triples = list(product(INDICES, repeat=3))
    tensor = {t: _jacobi_tensor(config, *t) for t in triples}
    cyclic = {
        (m, n, r): tensor[(m, n, r)] + tensor[(r, m, n)] + tensor[(n, r, m)]
        for m, n, r in triples
    }
    star = None
    if with_star:
        from .star_kernel import star_commutator

        xs = {mu: config.x(mu) for mu in INDICES}

        def nested(m: int, n: int, r: int) -> Poly:
            return star_commutator(config, xs[m], star_commutator(config, xs[n], xs[r]))

        star = {
            (m, n, r): nested(m, n, r) + nested(r, m, n) + nested(n, r, m)
            for m, n, r in triples
        }
    return JacobiObstruction(tensor, cyclic, star)


def theta_tilde_identity_residual(config: TwistConfig) -> dict[tuple[int, int, int], Poly]:
    tt = build_geometry(config).theta_tilde

    def term(s: int, m: int, n: int) -> Poly:
        return sum((tt[s][r] * tt[m][n].derivative(r + 1) for r in range(2)),
                   Poly.zero(config.orders))

    return {
        (s + 1, m + 1, n + 1): term(s, m, n) + term(n, s, m) + term(m, n, s)
        for s, m, n in product(range(2), repeat=3)
    }


@dataclass(frozen=True)
class PhiPotentials:
    phi: tuple[Poly, Poly]
    gradient_residual: Matrix   # e_mu^a - d_mu phi^a, [mu][a]
    frame_residual: Matrix      # X_a phi^b - delta_a^b, [a][b]
    literal_phi: tuple[Poly, Poly]
    literal_gradient_residual: Matrix


def phi_potentials(config: TwistConfig) -> PhiPotentials:
    """Scalar potentials with ``e_mu^a = d_mu phi^a`` (symmetric flavor only).

    ``phi^a = x^a + 1/2 w^{ab}_mu x^b x^mu`` where ``w^{ab}_mu`` is read off the
    computed inverse vielbein ``e_mu^a = delta + w^{ab}_mu x^b``.  The variant
    that instead identifies ``w^{ab}_mu`` with ``-omega_ab^mu`` is returned as
    ``literal_phi`` together with its residual.
    """
    if config.flavor is not Flavor.SYMMETRIC:
        raise FlavorError("phi potentials need commuting frame fields (symmetric flavor)")
    geo = build_geometry(config)
    orders = config.orders
    zero = Poly.zero(orders)
    xs = (config.x(1), config.x(2))
    half = Fraction(1, 2)

    # linear part of e_mu^a: coefficient of x^b
    def w_inv(a: int, b: int, mu: int) -> Poly:
        lin = geo.e_down[mu - 1][a - 1].omega_part(1)
        return lin.derivative(b)

    phi = tuple(
        xs[a - 1] + sum((w_inv(a, b, mu) * xs[b - 1] * xs[mu - 1]
                         for b, mu in product(INDICES, INDICES)), zero) * half
        for a in INDICES)
    literal = tuple(
        xs[a - 1] - sum((config.omega(a, b, mu) * xs[b - 1] * xs[mu - 1]
                         for b, mu in product(INDICES, INDICES)), zero) * half
        for a in INDICES)

    def grad_residual(pot) -> Matrix:
        return tuple(
            tuple(geo.e_down[mu][a] - pot[a].derivative(mu + 1) for a in range(2))
            for mu in range(2))

    frame = tuple(
        tuple(
            sum((geo.e_up[a][mu] * phi[b].derivative(mu + 1) for mu in range(2)), zero)
            - int(a == b)
            for b in range(2))
        for a in range(2))
    return PhiPotentials(phi, grad_residual(phi), frame, literal, grad_residual(literal))
