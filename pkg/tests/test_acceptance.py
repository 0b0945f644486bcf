"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Tolerances are pinned here.  Every algebraic criterion is exact: the residual
must be the zero polynomial, there is no floating point anywhere.  Time limits
are wall-clock bounds on the check's own ``elapsed_ms``.
"""

import random
import statistics
import time
from fractions import Fraction

import pytest

from twistmoyal.coeff_algebra import DeformedPolynomial, Monomial, TruncationOrders
from twistmoyal.coeff_algebra import ExactComplexRational
from twistmoyal.expr_cli.checks import CHECK_NAMES, CheckOptions, run_check
from twistmoyal.expr_cli.cli import run_all
from twistmoyal.expr_cli.parser import parse, unparse
from twistmoyal.star_kernel import star
from twistmoyal.twist_geometry import Flavor, TwistConfig

from test_expr_cli import random_ast

EXACT = "exact zero"
SEED = 0
TIME_LIMITS_S = {1: 1, 2: 2, 3: 60, 4: 30, 5: 30, 6: 30, 7: 60, 8: 60, 9: 60, 10: 60,
                 11: 1, 12: 5}
SUITE_LIMIT_S = 300
STAR_MEDIAN_LIMIT_MS = 100

VERDICTS: dict[int, str] = {}


def verdict(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    VERDICTS[n] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def suite():
    """Run the whole check suite once with default options and time it."""
    start = time.perf_counter()
    reports = run_all(CheckOptions(seed=SEED), jobs=1)
    wall = time.perf_counter() - start
    return {r.check_id: r for r in reports}, wall


def _within(report, n):
    return report.elapsed_ms / 1000 < TIME_LIMITS_S[n]


def _summary(n, *reports):
    ok = all(r.passed and _within(r, n) for r in reports)
    parts = [f"{r.check_id} {'ok' if r.passed else 'residual ' + r.residual_text[:160]}"
             f" ({r.elapsed_ms:.0f} ms)" for r in reports]
    return ok, "; ".join(parts)


def test_criterion_01_coordinate_relation():
    reports = []
    for flavor in Flavor:
        for T in (1, 2):
            cfg = TwistConfig(flavor, TruncationOrders(T, 1))
            for method in ("series", "closed"):
                reports.append(run_check("coord-comm", CheckOptions(
                    config=cfg, theta_order=T, omega_order=1, method=method)))
    ok, detail = _summary(1, *reports)
    verdict(1, f"[x^mu, x^nu]_* - i Theta~ ({EXACT}, < 1 s)", ok,
            f"{len(reports)} runs over both flavors, both methods, T=1,2; " + detail[:300])


def test_criterion_02_jacobi(suite):
    reports, _ = suite
    ok, detail = _summary(2, reports["jacobi"], reports["theta-identity"])
    verdict(2, f"Jacobi obstruction mod omega^2 ({EXACT}, < 2 s)", ok, detail)


def test_criterion_03_associativity(suite):
    reports, _ = suite
    ok, detail = _summary(3, reports["assoc"])
    verdict(3, f"associativity, 100 triples + plane waves ({EXACT}, < 60 s)", ok, detail)


def test_criterion_04_method_agreement(suite):
    reports, _ = suite
    ok, detail = _summary(4, reports["method-agreement"])
    verdict(4, f"series == closed mod omega^2 ({EXACT}, < 30 s)", ok, detail)


def test_criterion_05_moyal_limit(suite):
    reports, _ = suite
    ok, detail = _summary(5, reports["moyal-limit"])
    verdict(5, f"flat limit equals Moyal to theta^6 ({EXACT}, < 30 s)", ok, detail)


def test_criterion_06_tsr(suite):
    reports, _ = suite
    ok, detail = _summary(6, reports["tsr-identities"])
    verdict(6, f"T/S/R reconstructions ({EXACT}, < 30 s)", ok, detail)


def test_criterion_07_cyclic_trace(suite):
    reports, _ = suite
    ok, detail = _summary(7, reports["cyclicity"])
    verdict(7, f"cyclic trace with measure e ({EXACT}, < 60 s)", ok, detail)


def test_criterion_08_covariance(suite):
    reports, _ = suite
    rep = reports["covariance"]
    again = run_check("covariance", CheckOptions(seed=SEED))
    a, b = rep.to_dict(), again.to_dict()
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    ok, detail = _summary(8, rep)
    verdict(8, f"covariance at omega=0 ({EXACT}, < 60 s), omega-order-1 residual reproducible",
            ok and a == b and bool(rep.findings), detail + f"; rerun identical: {a == b}")


def test_criterion_09_noether(suite):
    reports, _ = suite
    ok, detail = _summary(9, reports["noether"])
    verdict(9, f"divergence of the reduced current mod omega^2 ({EXACT}, < 60 s)", ok, detail)


def test_criterion_10_global_invariance(suite):
    reports, _ = suite
    ok, detail = _summary(10, reports["action-invariance"], reports["unitary-sandwich"])
    verdict(10, f"global invariance and sandwich obstruction ({EXACT}, < 60 s)", ok, detail)


def test_criterion_11_potentials(suite):
    reports, _ = suite
    ok, detail = _summary(11, reports["phi-gradient"])
    verdict(11, f"e_mu^a = d_mu phi^a, X_a phi^b = delta ({EXACT}, < 1 s)", ok, detail)


def test_criterion_12_unitarity(suite):
    reports, _ = suite
    ok, detail = _summary(12, reports["star-exp-unitarity"])
    verdict(12, f"U^dagger * U = 1 mod (theta^4, omega^2, alpha^5) ({EXACT}, < 5 s)", ok, detail)


def _dense(orders, degree, seed):
    rng = random.Random(seed)
    terms = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            coeff = ExactComplexRational(Fraction(rng.choice([-3, -2, -1, 1, 2, 3])), Fraction(0))
            terms[Monomial(i, j, 0, (0,) * 6, (0, 0))] = coeff
    return DeformedPolynomial.from_terms(terms, orders)


def test_criterion_13_tooling(suite):
    reports, wall = suite
    rng = random.Random(SEED)
    round_trip = all(parse(unparse(t)) == t for t in (random_ast(rng) for _ in range(500)))

    opts = CheckOptions(seed=SEED, trials=5)
    deterministic = True
    for name in CHECK_NAMES:
        a, b = run_check(name, opts).to_dict(), run_check(name, opts).to_dict()
        a.pop("elapsed_ms"), b.pop("elapsed_ms")
        deterministic &= a == b

    cfg = TwistConfig(Flavor.ANTISYMMETRIC, TruncationOrders(6, 1))
    f, g = _dense(cfg.orders, 8, 1), _dense(cfg.orders, 8, 2)

    def median_ms(method):
        star(cfg, f, g, method)   # warm-up
        times = []
        for _ in range(7):
            t0 = time.perf_counter()
            star(cfg, f, g, method)
            times.append((time.perf_counter() - t0) * 1000)
        return statistics.median(times)

    median, series_median = median_ms(cfg.star_method), median_ms("series")

    ok = round_trip and deterministic and wall < SUITE_LIMIT_S and median < STAR_MEDIAN_LIMIT_MS
    verdict(13, "tooling", ok,
            f"500 AST round-trips {'ok' if round_trip else 'FAILED'}; reports deterministic "
            f"{deterministic}; check --all {wall:.1f} s (< {SUITE_LIMIT_S} s); dense degree-8 "
            f"star at T=6, W=1 median {median:.1f} ms (< {STAR_MEDIAN_LIMIT_MS} ms, "
            f"default {cfg.star_method} method; series method {series_median:.1f} ms)")
