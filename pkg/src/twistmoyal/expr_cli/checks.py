"""Named verification checks.

Each check returns a :class:`CheckReport`.  Identities marked as asserted
decide ``passed``; everything else is reported under ``findings``.  Every
randomized trial draws from its own ``random.Random(seed * 1_000_003 + trial)``
so reports are reproducible and independent of execution order.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from ..coeff_algebra import (
    I_UNIT,
    DeformedPolynomial,
    ExactComplexRational,
    Monomial,
    TruncationOrders,
)
from ..gauge_dynamics import (
    EpsilonOmegaConstraint,
    GaugeField,
    GaugeParameter,
    covariance_residual,
    divergence_check,
    eom_residual,
    faraday,
    gauge_variation_A,
    phi_sector,
    raise_indices,
    reduced_variation,
    unitary_sandwich_check,
)
from ..report import CheckReport
from ..schwartz_trace import (
    GaussianDensity,
    action_invariance_residual,
    cyclicity_residual,
    inner_product,
)
from ..star_kernel import (
    PlaneWaveSum,
    associativity_residual,
    bilinear_series,
    leibniz_residual,
    moyal_product,
    star,
    star_anticommutator,
    star_commutator,
    star_exponential,
    star_series,
    star_closed,
)
from ..twist_geometry import (
    Flavor,
    TwistConfig,
    build_geometry,
    jacobi_obstruction,
    phi_potentials,
    theta_tilde_identity_residual,
)

__all__ = ["CheckOptions", "CHECKS", "CHECK_NAMES", "run_check", "random_poly", "trial_rng"]

Poly = DeformedPolynomial
METHODS = ("closed", "series")


@dataclass(frozen=True)
class CheckOptions:
    """User overrides; ``None`` means the check's own default."""

    config: TwistConfig = field(default_factory=TwistConfig)
    theta_order: int | None = None
    omega_order: int | None = None
    method: str | None = None
    trials: int | None = None
    seed: int = 0
    constraint: bool = True


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 1_000_003 + trial)


def random_poly(rng: random.Random, orders: TruncationOrders, degree: int,
                low: int = -3, high: int = 3, complex_coeffs: bool = False,
                density: float = 1.0) -> Poly:
    terms = {}
    for p in range(degree + 1):
        for q in range(degree + 1 - p):
            if density < 1.0 and rng.random() > density:
                continue
            re = rng.randint(low, high)
            im = rng.randint(low, high) if complex_coeffs else 0
            if re or im:
                terms[Monomial(p, q)] = ExactComplexRational(re, im)
    return Poly.from_terms(terms, orders)


# ----------------------------------------------------------------------------
# Harness.


@dataclass
class _Ctx:
    config: TwistConfig
    trials: int
    seed: int
    method: str
    constraint: bool
    worst: object = None
    worst_size: int = -1
    residual_zero: bool = True
    failures: list[str] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)

    def rng(self, trial: int) -> random.Random:
        return trial_rng(self.seed, trial)

    def track(self, label: str, value, asserted: bool = True) -> bool:
        """Record a residual; returns True when it vanishes."""
        zero = _is_zero(value)
        if not zero:
            self.residual_zero = False
            size = len(_render(value))
            if self.worst is None or size > self.worst_size:
                self.worst, self.worst_size = value, size
            if asserted:
                if len(self.failures) < 5:
                    self.failures.append(f"{label}: {_clip(_render(value))}")
                else:
                    self.failures.append(label)
        return zero

    def require(self, label: str, ok: bool) -> None:
        if not ok:
            self.failures.append(label)
            self.residual_zero = False

    def note(self, text: str) -> None:
        self.findings.append(text)


def _values(value) -> Iterable:
    if isinstance(value, (tuple, list)):
        for v in value:
            yield from _values(v)
    elif isinstance(value, dict):
        for v in value.values():
            yield from _values(v)
    elif value is not None:
        yield value


def _is_zero(value) -> bool:
    return all(not v for v in _values(value))


def _render(value) -> str:
    parts = [v.render() for v in _values(value) if v]
    return "; ".join(parts) if parts else "0"


def _clip(text: str, limit: int = 400) -> str:
    return text if len(text) <= limit else text[:limit] + " ..."


def _mod_omega(value, config: TwistConfig):
    """Drop omega degree >= 2 (no-op at omega order <= 1)."""
    lin = TruncationOrders(config.orders.theta_order, min(1, config.orders.omega_order))
    out = []
    for v in _values(value):
        if isinstance(v, Poly):
            out.append(v.with_orders(lin))
        elif isinstance(v, PlaneWaveSum):
            out.append(PlaneWaveSum({k: p.with_orders(lin) for k, p in v.parts.items()}, lin))
        else:
            out.append(v)
    return out


def _flat(config: TwistConfig) -> TwistConfig:
    return config.replace(admissible_omega=frozenset())


def _methods(ctx: _Ctx, explicit: str | None) -> tuple[str, ...]:
    return (explicit,) if explicit else METHODS


@dataclass(frozen=True)
class _CheckEntry:
    fn: Callable
    orders: tuple[int, int]
    trials: int
    flavor: Flavor | None = None   # forced flavor, if any
    description: str = ""


CHECKS: dict[str, _CheckEntry] = {}


def _check(name: str, orders: tuple[int, int], trials: int = 1,
           flavor: Flavor | None = None, description: str = ""):
    def deco(fn):
        CHECKS[name] = _CheckEntry(fn, orders, trials, flavor, description)
        return fn
    return deco


# ----------------------------------------------------------------------------
# Geometry and star product.


@_check("coord-comm", (2, 1), description="[x^mu, x^nu]_* = i Theta~^{mu nu}")
def _coord_comm(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    tt = build_geometry(c).theta_tilde
    for m in _methods(ctx, method):
        for mu, nu in product((1, 2), (1, 2)):
            r = star_commutator(c, c.x(mu), c.x(nu), m) - tt[mu - 1][nu - 1] * I_UNIT
            ctx.track(f"[x{mu}, x{nu}] ({m})", _mod_omega(r, c))


@_check("jacobi", (2, 1), description="cyclic Jacobi obstruction")
def _jacobi(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    ob = jacobi_obstruction(c, with_star=False)
    ctx.track("cyclic tensor obstruction", ob.cyclic)
    for m in _methods(ctx, method):
        c_m = c.replace(star_method=m)
        star_view = jacobi_obstruction(c_m, with_star=True).star
        ctx.track(f"cyclic star brackets ({m})", _mod_omega(star_view, c))
    nonzero = {k: v.render() for k, v in ob.tensor.items() if v}
    if nonzero:
        ctx.note("single-ordering tensor Theta^{b mu} Theta^{d[nu} omega_bd^{rho]} is nonzero "
                 "before cyclic summation: "
                 + ", ".join(f"{k}: {v}" for k, v in sorted(nonzero.items())))


@_check("theta-identity", (2, 1), description="Theta~ d Theta~ cyclic identity")
def _theta_identity(ctx: _Ctx, method: str | None) -> None:
    ctx.track("Theta~ identity", _mod_omega(theta_tilde_identity_residual(ctx.config), ctx.config))


@_check("assoc", (3, 1), trials=100, description="(f*g)*h = f*(g*h)")
def _assoc(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    o = c.orders
    for m in _methods(ctx, method):
        bad = 0
        for t in range(ctx.trials):
            rng = ctx.rng(t)
            f, g, h = (random_poly(rng, o, 3) for _ in range(3))
            if not ctx.track(f"polynomial triple #{t} ({m})",
                             _mod_omega(associativity_residual(c, f, g, h, m), c)):
                bad += 1
        if bad:
            ctx.note(f"{m}: {bad}/{ctx.trials} polynomial triples have a nonzero associator")
        counter = associativity_residual(c, c.x(1), c.x(2), c.x(2), m)
        if counter:
            ctx.note(f"{m}: (x1*x2)*x2 - x1*(x2*x2) = {counter.render()}")
    if c.flavor is Flavor.ANTISYMMETRIC:
        rng = ctx.rng(ctx.trials)
        waves = [(Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                  Fraction(rng.randint(-3, 3), rng.randint(1, 3))) for _ in range(3)]
        for m in _methods(ctx, method):
            u, v, w = (PlaneWaveSum.wave(c, k) for k in waves)
            r = associativity_residual(c, u, v, w, m)
            ctx.track(f"plane waves {waves} ({m})", _mod_omega(r, c))


@_check("method-agreement", (4, 1), trials=100, description="series vs closed form")
def _method_agreement(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    asserted = c.flavor is Flavor.ANTISYMMETRIC
    bad = 0
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        f, g = random_poly(rng, c.orders, 4), random_poly(rng, c.orders, 4)
        r = star_series(c, f, g) - star_closed(c, f, g)
        if not ctx.track(f"pair #{t}", _mod_omega(r, c), asserted):
            bad += 1
    if bad and not asserted:
        ctx.note(f"{c.flavor.value} flavor: methods differ on {bad}/{ctx.trials} pairs "
                 "(agreement is only claimed for the antisymmetric flavor)")


@_check("moyal-limit", (6, 1), trials=100, description="flat limit equals ordinary Moyal")
def _moyal_limit(ctx: _Ctx, method: str | None) -> None:
    c = _flat(ctx.config)
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        f = random_poly(rng, c.orders, 3, complex_coeffs=True)
        g = random_poly(rng, c.orders, 3, complex_coeffs=True)
        ref = moyal_product(c, f, g)
        for m in _methods(ctx, method):
            ctx.track(f"pair #{t} ({m})", star(c, f, g, m) - ref)


@_check("leibniz", (3, 1), trials=10, description="derivative of a star product")
def _leibniz(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    flat = _flat(c)
    m = method or c.star_method
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        f, g = random_poly(rng, c.orders, 3), random_poly(rng, c.orders, 3)
        for axis in (1, 2):
            ctx.track(f"flat pair #{t} axis {axis}",
                      leibniz_residual(flat, f.with_orders(flat.orders),
                                       g.with_orders(flat.orders), axis, m))
            ctx.track(f"constant factor #{t} axis {axis}",
                      leibniz_residual(c, f, c.const(3), axis, m))
    for axis in (1, 2):
        r = leibniz_residual(c, c.x(1), c.x(2), axis, m)
        ctx.track(f"x1, x2 axis {axis}", r, asserted=False)
        ctx.note(f"d{axis}(x1*x2) - (d{axis}x1)*x2 - x1*(d{axis}x2) = {r.render()}")


@_check("tsr-identities", (4, 1), trials=50, description="T/S/R series reconstructions")
def _tsr(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    free_bad = 0
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        f, g = random_poly(rng, c.orders, 3), random_poly(rng, c.orders, 3)
        fg, gf = star_series(c, f, g), star_series(c, g, f)
        T_fg = bilinear_series(c, "T", f, g)
        T_gf = bilinear_series(c, "T", g, f)
        S_fg = bilinear_series(c, "S", f, g)
        R_fg = bilinear_series(c, "R", f, g)
        ctx.track(f"#{t} f*g = fg + X_a T(f, X~^a g)", fg - f * g - T_fg)
        ctx.track(f"#{t} [f,g] = 2 X_a S(f, X~^a g)", fg - gf - S_fg * 2)
        ctx.track(f"#{t} {{f,g}} = 2fg + 2 X_a R(f, X~^a g)", fg + gf - f * g * 2 - R_fg * 2)
        ctx.track(f"#{t} T(f,.) - T(g,.) = 2 S(f,.)", T_fg - T_gf - S_fg * 2)
        for m in _methods(ctx, method):
            direct = star_commutator(c, f, g, m)
            ctx.track(f"#{t} series bracket vs {m} bracket", _mod_omega(direct - (fg - gf), c))
        for a in (1, 2):
            free = (bilinear_series(c, "T", f, g, a) - bilinear_series(c, "T", g, f, a)
                    - bilinear_series(c, "S", f, g, a) * 2)
            if free:
                free_bad += 1
    if free_bad:
        ctx.note(f"free-index form T(f, X~^a g) - T(g, X~^a f) - 2 S(f, X~^a g) is nonzero in "
                 f"{free_bad}/{2 * ctx.trials} cases; the identity holds after contraction "
                 "with X_a on the first slot")


@_check("star-exp-unitarity", (3, 1), trials=10, description="U^dagger * U = 1 for real alpha")
def _unitarity(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    o = c.orders
    K = 4
    tag = Poly.symbol("eps1", o)   # bookkeeping parameter for the alpha order
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        alpha = random_poly(rng, o, 2) * tag
        for m in _methods(ctx, method):
            U = star_exponential(c, alpha, K, m)
            U_dag = U.conjugate()
            r = star(c, U_dag, U, m) - 1
            ctx.track(f"#{t} ({m})", r.filter(lambda mono: mono.eps[0] <= K))
            flipped = U_dag - star_exponential(c, alpha, K, m, sign=-1)
            if flipped and t == 0:
                ctx.note(f"{m}: conj(U) differs from exp_*(-i alpha) because conj((a*a)*a) = "
                         "a*(a*a)")
    probe = c.x(1) * c.x(2)
    for m in _methods(ctx, method):
        sq = star(c, probe, probe, m)
        gap = star(c, probe, sq, m) - star(c, sq, probe, m)
        if gap:
            ctx.note(f"{m}: power associator a*(a*a) - (a*a)*a for a = x1*x2 is {gap.render()}")
    if c.flavor is not Flavor.SYMMETRIC:
        sym = c.replace(flavor=Flavor.SYMMETRIC, admissible_omega=None)
        alpha = random_poly(ctx.rng(0), o, 2) * tag
        U = star_exponential(sym, alpha, K, "series")
        U_dag = star_exponential(sym, alpha, K, "series", sign=-1)
        r = (star_series(sym, U_dag, U) - 1).filter(lambda mono: mono.eps[0] <= K)
        ctx.note("symmetric flavor, series method (commuting frame): U^dagger * U - 1 is "
                 + ("zero" if not r else "nonzero") + " for trial #0")


# ----------------------------------------------------------------------------
# Trace and action.


def _window(rng, orders, degree=2, weight=Fraction(1, 2), complex_coeffs=False):
    return GaussianDensity.window(weight, random_poly(rng, orders, degree,
                                                      complex_coeffs=complex_coeffs))


@_check("cyclicity", (3, 1), trials=50, description="cyclic integral with measure e")
def _cyclicity(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    plain_nonzero = 0
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        w1 = Fraction(rng.randint(1, 4), 2)
        w2 = Fraction(rng.randint(1, 4), 2)
        f = _window(rng, c.orders, 2, w1, True)
        g = _window(rng, c.orders, 2, w2, True)
        res = cyclicity_residual(c, f, g, method)
        ctx.track(f"#{t} int e (f*g - g*f)", _mod_omega(res.commutator.coefficient, c))
        ctx.track(f"#{t} int e (f*g - fg)", _mod_omega(res.deformation.coefficient, c))
        if res.plain_commutator:
            plain_nonzero += 1
    ctx.require("plain-measure commutator integral vanished in every trial",
                plain_nonzero > 0 or c.flat)
    ctx.note(f"plain measure: int (f*g - g*f) != 0 in {plain_nonzero}/{ctx.trials} trials")


@_check("inner-product", (3, 1), trials=20, description="Hermitian scalar product")
def _inner(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        a = _window(rng, c.orders, 2, complex_coeffs=True)
        b = _window(rng, c.orders, 2, complex_coeffs=True)
        ab, ba = inner_product(c, a, b, method), inner_product(c, b, a, method)
        ctx.track(f"#{t} <a,b> - conj <b,a>", _mod_omega(ab.coefficient - ba.coefficient.conjugate(), c))
        aa = inner_product(c, a, a, method).coefficient
        low = aa.theta_part(0).omega_part(0)
        ctx.track(f"#{t} Im <a,a> at order 0", low.imag_part())
        ctx.track(f"#{t} <a,0>", inner_product(c, a, a.zero_like(), method).coefficient)
    flat0 = TwistConfig(c.flavor, TruncationOrders(0, 0), c.kappa, frozenset(), c.star_method)
    g = GaussianDensity.window(1, flat0.const(1))
    ctx.track("<G,G> = pi for G = exp(-|x|^2/2)", inner_product(flat0, g, g).coefficient - 1)


def _random_field(config: TwistConfig, rng, degree=2, windowed=False) -> GaugeField:
    comps = []
    for _ in range(2):
        p = random_poly(rng, config.orders, degree)
        comps.append(GaussianDensity.window(Fraction(1, 2), p) if windowed else p)
    return GaugeField(config, tuple(comps))


@_check("covariance", (3, 1), trials=50, description="delta_alpha F = i[alpha, F]_* at omega = 0")
def _covariance(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    flat = _flat(c)
    twisted_nonzero = 0
    sample = None
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        A = _random_field(flat, rng)
        alpha = random_poly(rng, flat.orders, 2)
        res = covariance_residual(flat, A, alpha, method)
        ctx.track(f"#{t} flat F", res.F)
        ctx.track(f"#{t} flat T", res.T)
        if c.flat:
            continue
        A_w = GaugeField(c, tuple(a.with_orders(c.orders) for a in A.down))
        res_w = covariance_residual(c, A_w, alpha.with_orders(c.orders), method)
        first = [v.omega_part(1) for v in _values(res_w.F)]
        if not _is_zero(first):
            twisted_nonzero += 1
            if sample is None:
                sample = _render(first[1])
    if not c.flat:
        ctx.note(f"omega-order-1 residual of delta F - i[alpha, F] is nonzero in "
                 f"{twisted_nonzero}/{ctx.trials} trials")
        if sample:
            ctx.note(f"trial #0 F_12 omega-order-1 residual: {_clip(sample, 2000)}")


@_check("eom-reduction", (3, 1), trials=10, description="field equation, full vs reduced")
def _eom(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    flat = _flat(c)
    zero = GaugeField.zero(c)
    ctx.track("A = 0, reduced", eom_residual(c, zero, "reduced", method).value)
    ctx.track("A = 0, full", eom_residual(c, zero, "full", method).value)
    disc_nonzero = 0
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        A = _random_field(c, rng)
        res = eom_residual(c, A, "full", method)
        ctx.track(f"#{t} {{F, e^-1}} - 2 e^-1 F", _mod_omega(res.anticommutator_gap, c))
        if not _is_zero(_mod_omega(res.discrepancy, c)):
            disc_nonzero += 1
        A0 = GaugeField(flat, tuple(a.with_orders(flat.orders) for a in A.down))
        red = eom_residual(flat, A0, "reduced", method).value
        F_up = raise_indices(flat, faraday(flat, A0, method).F)
        plain = tuple(F_up[0][b].derivative(1) + F_up[1][b].derivative(2) for b in range(2))
        ctx.track(f"#{t} flat reduced = d_mu F^(mu b)", tuple(red[b] - plain[b] for b in range(2)))
    ctx.note(f"full equation + 4 * reduced equation is nonzero mod omega^2 in "
             f"{disc_nonzero}/{ctx.trials} trials")


@_check("noether", (3, 1), trials=25, description="conservation of the reduced current")
def _noether(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    alpha = GaugeParameter.linear(c)
    constraint = EpsilonOmegaConstraint(ctx.constraint)
    bad = 0
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        A = _random_field(c, rng)
        res = divergence_check(c, A, alpha, constraint, method)
        if not ctx.track(f"#{t} on-shell divergence", _mod_omega(res.residual, c)):
            bad += 1
            if bad == 1:
                dropped = _mod_omega(res.dropped_term, c)
                same = _is_zero([a - b for a, b in zip(dropped, _mod_omega(res.residual, c))])
                ctx.note("trial #%d: residual equals d_b J^b - eps_mu/k^2 (1 + Theta dA) "
                         "d_b F^(mu b), i.e. the term eps_mu/k^2 d_b(Theta^(rs) d_r A_s) "
                         "F^(mu b): %s" % (t, "yes" if same else "no"))
    if bad:
        ctx.note(f"{bad}/{ctx.trials} random fields leave a nonzero on-shell divergence")
    rng = ctx.rng(ctx.trials)
    A1 = _random_field(c, rng, degree=1)
    r1 = divergence_check(c, A1, alpha, constraint, method).residual
    ctx.note("degree-1 field: on-shell divergence is "
             + ("zero" if _is_zero(_mod_omega(r1, c)) else "nonzero"))


@_check("unitary-sandwich", (3, 1), trials=10, description="U^dagger * e^-1 * U")
def _sandwich(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        a0 = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        res = unitary_sandwich_check(c, GaugeParameter.constant(c, a0), method=method)
        ctx.track(f"#{t} constant alpha obstruction", res.obstruction)
        alpha = random_poly(rng, c.orders, 2)
        res = unitary_sandwich_check(c, alpha, method=method)
        ctx.track(f"#{t} obstruction - Theta (d e^-1) d alpha", _mod_omega(res.mismatch, c))
    lin = GaugeParameter.linear(c)
    A = _random_field(c, ctx.rng(ctx.trials))
    res = unitary_sandwich_check(c, lin, A, method)
    ctx.track("linear alpha obstruction (eps-omega reduced)", res.constrained)
    ctx.note(f"linear alpha obstruction before reduction: {res.obstruction.render()}")
    ctx.note("delta A_s - d_rho(delta_s^rho alpha/2 - eps_mu Theta^(mu rho) A_s) = "
             + _render(res.divergence_form_gap))
    full = gauge_variation_A(c, A, lin, method)
    red = reduced_variation(c, A, lin)
    gap = EpsilonOmegaConstraint(True).reduce(tuple(full[s] - red[s] for s in range(2)))
    ctx.note("gauge variation for linear alpha minus eps_mu (1 + Theta^(rs) d_r A_s), "
             "eps-omega reduced: " + _clip(_render(gap)))


@_check("action-invariance", (2, 1), trials=20, description="global invariance of the action")
def _action(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    lin = GaugeParameter.linear(c)
    lin_raw_nonzero = 0
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        A = _random_field(c, rng, windowed=True)
        a0 = GaugeParameter.constant(c, Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        ctx.track(f"#{t} constant alpha", action_invariance_residual(c, A, a0, method).coefficient)
        if t < 5:
            ctx.track(f"#{t} linear alpha, eps-omega reduced",
                      action_invariance_residual(c, A, lin, method, constrained=True).coefficient)
            raw = action_invariance_residual(c, A, lin, method)
            if raw:
                lin_raw_nonzero += 1
    ctx.note(f"linear alpha without the eps-omega reduction: nonzero in {lin_raw_nonzero}/"
             f"{min(5, ctx.trials)} trials")


@_check("phi-gradient", (2, 1), flavor=Flavor.SYMMETRIC, description="e_mu^a = d_mu phi^a")
def _phi_gradient(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    pot = phi_potentials(c)
    ctx.track("e_mu^a - d_mu phi^a", pot.gradient_residual)
    ctx.track("X_a phi^b - delta_a^b", _mod_omega(pot.frame_residual, c))
    if not _is_zero(pot.literal_gradient_residual):
        ctx.note("with omega^{ab}_mu read as -omega_ab^mu (same index slots) the gradient "
                 "residual is " + _render(pot.literal_gradient_residual))


@_check("phi-sector", (2, 1), trials=3, flavor=Flavor.SYMMETRIC,
        description="phi field equation and current")
def _phi_sector(ctx: _Ctx, method: str | None) -> None:
    c = ctx.config
    zero = phi_sector(c, GaugeField.zero(c), method=method)
    ctx.track("A = 0 equation", zero.equation)
    ctx.track("A = 0 current", zero.current)
    for t in range(ctx.trials):
        rng = ctx.rng(t)
        A = _random_field(c, rng)
        res = phi_sector(c, A, method=method)
        ctx.track(f"#{t} d(J + K) (eps-omega reduced)", _mod_omega(res.divergence, c),
                  asserted=False)
        ctx.note(f"#{t}: E_phi {'vanishes' if _is_zero(res.equation) else 'is nonzero'}; "
                 f"d(J + K) {'vanishes' if _is_zero(res.divergence) else 'is nonzero'}")


CHECK_NAMES = tuple(CHECKS)


# ----------------------------------------------------------------------------


def _resolve(name: str, options: CheckOptions) -> tuple[_CheckEntry, _Ctx]:
    entry = CHECKS[name]
    base = options.config
    T = entry.orders[0] if options.theta_order is None else options.theta_order
    W = entry.orders[1] if options.omega_order is None else options.omega_order
    changes = {"orders": TruncationOrders(T, W)}
    if entry.flavor is not None and base.flavor is not entry.flavor:
        changes["flavor"] = entry.flavor
    if options.method:
        changes["star_method"] = options.method
    config = base.replace(**changes)
    trials = entry.trials if options.trials is None else options.trials
    if trials < 0:
        raise ValueError("trials must be non-negative")
    ctx = _Ctx(config, trials, options.seed, config.star_method, options.constraint)
    return entry, ctx


def config_echo(config: TwistConfig, constraint: bool) -> dict:
    return {
        "flavor": config.flavor.value,
        "theta_order": config.orders.theta_order,
        "omega_order": config.orders.omega_order,
        "kappa": str(config.kappa),
        "omega_nonzero": [list(t) for t in sorted(config.admissible_omega)],
        "constraint_eps_omega": constraint,
        "method": config.star_method,
    }


def run_check(name: str, options: CheckOptions | None = None) -> CheckReport:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}")
    options = options or CheckOptions()
    entry, ctx = _resolve(name, options)
    start = time.perf_counter()
    entry.fn(ctx, options.method)
    elapsed = (time.perf_counter() - start) * 1000
    findings = list(ctx.findings)
    if ctx.failures:
        shown = ctx.failures[:5]
        more = len(ctx.failures) - len(shown)
        findings = [f"asserted identity failed: {f}" for f in shown] + (
            [f"... and {more} more asserted failures"] if more else []) + findings
    residual = _clip(_render(ctx.worst), 4000) if ctx.worst is not None else "0"
    return CheckReport(
        check_id=name,
        config_echo=config_echo(ctx.config, ctx.constraint),
        orders=(ctx.config.orders.theta_order, ctx.config.orders.omega_order),
        trials=ctx.trials,
        seed=options.seed,
        residual_zero=ctx.residual_zero,
        residual_text=residual,
        findings=findings,
        elapsed_ms=elapsed,
        passed=not ctx.failures,
    )
