"""Evaluate parsed expressions in the polynomial or windowed algebra."""

from __future__ import annotations

from fractions import Fraction

from ..coeff_algebra import I_UNIT, DeformedPolynomial
from ..schwartz_trace import GaussianDensity
from ..star_kernel import apply_vector_field, star, star_anticommutator, star_commutator
from ..twist_geometry import TwistConfig
from .parser import Ast, BinOp, Call, Imag, Neg, Num, Pow, Sym, parse

__all__ = ["AlgebraMixingError", "evaluate", "evaluate_text"]


class AlgebraMixingError(TypeError):
    """Windowed and plain values were added together."""


def _symbol(config: TwistConfig, name: str) -> DeformedPolynomial:
    if name.startswith("w"):
        a, b, mu = int(name[1]), int(name[2]), int(name[4])
        return config.omega(a, b, mu)
    return DeformedPolynomial.symbol(name, config.orders)


def _add(left, right, sign: int):
    lw, rw = isinstance(left, GaussianDensity), isinstance(right, GaussianDensity)
    if lw != rw:
        raise AlgebraMixingError(
            "cannot add a windowed and an unwindowed value; multiply by a window first")
    return left + right if sign > 0 else left - right


def evaluate(node: Ast, config: TwistConfig, method: str | None = None):
    ev = lambda n: evaluate(n, config, method)  # noqa: E731
    if isinstance(node, Num):
        return config.const(node.value)
    if isinstance(node, Imag):
        return config.const(I_UNIT)
    if isinstance(node, Sym):
        return _symbol(config, node.name)
    if isinstance(node, Neg):
        return -ev(node.operand)
    if isinstance(node, BinOp):
        left, right = ev(node.left), ev(node.right)
        if node.op == "+":
            return _add(left, right, 1)
        if node.op == "-":
            return _add(left, right, -1)
        return left * right
    if isinstance(node, Pow):
        base = ev(node.base)
        if isinstance(base, DeformedPolynomial):
            return base ** node.exponent
        out = base.one_like()
        for _ in range(node.exponent):
            out = out * base
        return out
    if isinstance(node, Call):
        args = [ev(a) for a in node.args]
        name = node.name
        if name == "star":
            return star(config, args[0], args[1], method)
        if name == "comm":
            return star_commutator(config, args[0], args[1], method)
        if name == "acomm":
            return star_anticommutator(config, args[0], args[1], method)
        if name in ("d1", "d2"):
            return args[0].derivative(int(name[1]))
        if name in ("X1", "X2"):
            return apply_vector_field(config, int(name[1]), args[0])
        if name == "gauss":
            inner = args[0]
            window = GaussianDensity.window(Fraction(node.weight), config.const(1))
            return window * inner
    raise TypeError(f"cannot evaluate {node!r}")


def evaluate_text(source: str, config: TwistConfig, method: str | None = None):
    return evaluate(parse(source), config, method)
