"""Independent sympy reference implementations used by the tests.

Nothing here imports the package's algebra; values cross the boundary as
rendered text only.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import product
from math import factorial

import sympy as sp

x1, x2, theta = sp.symbols("x1 x2 theta")
eps1, eps2 = sp.symbols("eps1 eps2")
X = (x1, x2)
SLOTS = [(1, 1, 1), (1, 2, 1), (2, 2, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)]
W = {s: sp.Symbol(f"w{s[0]}{s[1]}_{s[2]}") for s in SLOTS}
W_SYMBOLS = tuple(W.values())


def eps(a: int, b: int) -> int:
    return {(1, 2): 1, (2, 1): -1}.get((a, b), 0)


def omega(flavor: str, a: int, b: int, mu: int):
    if flavor == "antisymmetric":
        if a == b:
            return 0
        return W[(1, 2, mu)] if a < b else -W[(1, 2, mu)]
    return W[(min(a, b), max(a, b), mu)]


def frame(flavor: str, a: int, mu: int):
    return (1 if a == mu else 0) + sum(omega(flavor, a, b, mu) * X[b - 1] for b in (1, 2))


def truncate(expr, T: int, Wmax: int):
    expr = sp.expand(expr)
    keep = []
    for term in sp.Add.make_args(expr):
        powers = term.as_powers_dict()
        if powers.get(theta, 0) > T:
            continue
        if sum(powers.get(w, 0) for w in W_SYMBOLS) > Wmax:
            continue
        keep.append(term)
    return sp.Add(*keep)


def apply_frame(flavor: str, a: int, f, T: int, Wmax: int):
    return truncate(sum(frame(flavor, a, mu) * sp.diff(f, X[mu - 1]) for mu in (1, 2)), T, Wmax)


def star_series(f, g, flavor: str = "antisymmetric", T: int = 3, Wmax: int = 1):
    """exp((i/2) Theta^{ab} X_a (x) X_b) applied to f (x) g, then multiplied."""
    total = f * g
    for n in range(1, T + 1):
        level = 0
        for word in product((1, 2), repeat=n):
            partner = tuple(3 - a for a in word)
            sign = 1
            for a, b in zip(word, partner):
                sign *= eps(a, b)
            lf, rg = f, g
            for a in reversed(word):
                lf = apply_frame(flavor, a, lf, T, Wmax)
            for b in reversed(partner):
                rg = apply_frame(flavor, b, rg, T, Wmax)
            level += sign * lf * rg
        total += (sp.I * theta / 2) ** n / factorial(n) * level
    return truncate(total, T, Wmax)


def det_inverse(flavor: str = "antisymmetric"):
    m = sp.Matrix(2, 2, lambda a, mu: frame(flavor, a + 1, mu + 1))
    return sp.expand(m.det())


def star_flat_weighted(f, g, flavor: str = "antisymmetric", T: int = 3, Wmax: int = 1):
    """exp((i/2) theta e^{-1} eps^{mu nu} d_mu (x) d_nu) with e^{-1} a pointwise factor."""
    weight = det_inverse(flavor)
    total = f * g
    for n in range(1, T + 1):
        level = 0
        for k in range(n + 1):
            df = sp.diff(f, x1, k, x2, n - k) if n - k else sp.diff(f, x1, k)
            dg = sp.diff(g, x2, k, x1, n - k) if n - k else sp.diff(g, x2, k)
            level += sp.binomial(n, k) * (-1) ** (n - k) * df * dg
        total += (sp.I * theta / 2) ** n * weight ** n / factorial(n) * level
    return truncate(total, T, Wmax)


def moyal(f, g, T: int):
    """Flat Moyal product by the bidifferential sum over index sequences."""
    total = f * g
    for n in range(1, T + 1):
        level = 0
        for mus in product((1, 2), repeat=n):
            for nus in product((1, 2), repeat=n):
                c = 1
                for m, v in zip(mus, nus):
                    c *= eps(m, v)
                if not c:
                    continue
                df, dg = f, g
                for m in mus:
                    df = sp.diff(df, X[m - 1])
                for v in nus:
                    dg = sp.diff(dg, X[v - 1])
                level += c * df * dg
        total += (sp.I * theta / 2) ** n / factorial(n) * level
    return sp.expand(total)


_OMEGA_TOKEN = re.compile(r"w([12])([12])\^([12])")


def from_text(text: str):
    """Read a rendered polynomial into sympy."""
    s = _OMEGA_TOKEN.sub(r"w\1\2_\3", text)
    s = re.sub(r"\bi\b", "I", s).replace("^", "**")
    names = {str(w): w for w in W_SYMBOLS}
    names.update(x1=x1, x2=x2, theta=theta, eps1=eps1, eps2=eps2, I=sp.I)
    return sp.expand(sp.sympify(s, locals=names))


def to_text(expr) -> str:
    """Inverse of :func:`from_text` for polynomial sympy expressions."""
    s = sp.sstr(sp.expand(expr)).replace("**", "^")
    s = re.sub(r"w([12])([12])_([12])", r"w\1\2^\3", s)
    return re.sub(r"\bI\b", "i", s)


@lru_cache(maxsize=None)
def gaussian_integral(poly_text: str, weight: sp.Rational):
    """int_{R^2} p(x) exp(-weight |x|^2 / 2) d^2x / pi by direct integration."""
    p = from_text(poly_text)
    r1, r2 = sp.symbols("r1 r2", real=True)
    p = p.subs({x1: r1, x2: r2})
    g = sp.exp(-weight * (r1 ** 2 + r2 ** 2) / 2)
    val = sp.integrate(sp.integrate(p * g, (r1, -sp.oo, sp.oo)), (r2, -sp.oo, sp.oo))
    return sp.nsimplify(sp.simplify(val / sp.pi))
