"""Exact Gaussian-rational scalars and the truncated polynomial ring.

Every value in the engine is a :class:`DeformedPolynomial`: a polynomial in
the coordinates ``x1, x2`` whose coefficients are polynomials in the
deformation parameter ``theta``, the six vielbein deformation symbols
``w11^1 ... w22^2`` and the two gauge-parameter slopes ``eps1, eps2``.
Coefficients are exact Gaussian rationals.  Terms whose theta degree or total
omega degree exceed the attached :class:`TruncationOrders` are discarded as
soon as they are produced; since those terms form an ideal, this is a ring
congruence and never changes lower-order results.

Internally a monomial is packed into a single Python ``int`` (one 16-bit
field per generator, plus a field for the imaginary unit and a redundant field
for the total omega degree), so that multiplying monomials is integer
addition.  Coefficients are integer numerators over one common denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Union

__all__ = [
    "ExactComplexRational",
    "I_UNIT",
    "TruncationOrders",
    "DeformedPolynomial",
    "Monomial",
    "OrderMismatchError",
    "UnboundSymbolError",
    "OMEGA_SLOTS",
    "OMEGA_NAMES",
    "SYMBOL_NAMES",
    "ring_add",
    "ring_mul",
    "ring_derivative",
    "substitute_numeric",
]


class OrderMismatchError(ValueError):
    """Raised when combining polynomials truncated at different orders."""


class UnboundSymbolError(KeyError):
    """Raised by numeric substitution when some symbols have no binding."""

    def __init__(self, missing: Iterable[str]):
        self.missing = sorted(missing)
        super().__init__("unbound symbols: " + ", ".join(self.missing))


RationalLike = Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class ExactComplexRational:
    """``re + im*i`` with arbitrary-precision rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: "ScalarLike") -> "ExactComplexRational":
        if isinstance(value, ExactComplexRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating-point complex values are not exact")
        if isinstance(value, float):
            raise TypeError("floating-point values are not exact")
        return cls(Fraction(value), Fraction(0))

    @classmethod
    def _maybe(cls, value):
        if isinstance(value, (int, Fraction, ExactComplexRational)):
            return cls.coerce(value)
        return None

    def __add__(self, other: "ScalarLike") -> "ExactComplexRational":
        o = self._maybe(other)
        if o is None:
            return NotImplemented
        return ExactComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "ExactComplexRational":
        return ExactComplexRational(-self.re, -self.im)

    def __sub__(self, other: "ScalarLike") -> "ExactComplexRational":
        o = self._maybe(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: "ScalarLike") -> "ExactComplexRational":
        o = self._maybe(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: "ScalarLike") -> "ExactComplexRational":
        o = self._maybe(other)
        if o is None:
            return NotImplemented
        return ExactComplexRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "ScalarLike") -> "ExactComplexRational":
        o = self._maybe(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return self * ExactComplexRational(o.re / norm, -o.im / norm)

    def __pow__(self, n: int) -> "ExactComplexRational":
        if n < 0:
            return ExactComplexRational(1) / (self ** (-n))
        result = ExactComplexRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, ExactComplexRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "ExactComplexRational":
        return ExactComplexRational(self.re, -self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {abs(self.im)}*i)"

    def __repr__(self) -> str:
        return f"ExactComplexRational({self.re!s}, {self.im!s})"


I_UNIT = ExactComplexRational(0, 1)
ScalarLike = Union[int, Fraction, ExactComplexRational]


@dataclass(frozen=True, slots=True)
class TruncationOrders:
    """Maximum retained theta degree and total omega degree."""

    theta_order: int = 6
    omega_order: int = 1

    def __post_init__(self) -> None:
        for name in ("theta_order", "omega_order"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")


# ----------------------------------------------------------------------------
# Monomial packing.

# Omega slots (a, b, mu) with a <= b; antisymmetric configurations only use
# (1, 2, mu).
OMEGA_SLOTS: tuple[tuple[int, int, int], ...] = (
    (1, 1, 1), (1, 2, 1), (2, 2, 1),
    (1, 1, 2), (1, 2, 2), (2, 2, 2),
)
OMEGA_NAMES: tuple[str, ...] = tuple(f"w{a}{b}^{mu}" for a, b, mu in OMEGA_SLOTS)

_BITS = 16
_MASK = (1 << _BITS) - 1

_F_I, _F_X1, _F_X2, _F_TH = 0, 1, 2, 3
_F_W0 = 4
_F_WT = _F_W0 + 6
_F_E1, _F_E2 = _F_WT + 1, _F_WT + 2


def _unit(field: int) -> int:
    return 1 << (_BITS * field)


def _field(key: int, field: int) -> int:
    return (key >> (_BITS * field)) & _MASK


_U_I = _unit(_F_I)
_U_X = (_unit(_F_X1), _unit(_F_X2))
_U_TH = _unit(_F_TH)
_U_WT = _unit(_F_WT)
_U_W = tuple(_unit(_F_W0 + j) + _U_WT for j in range(6))
_U_E = (_unit(_F_E1), _unit(_F_E2))
_XY_MASK = (_MASK << (_BITS * _F_X1)) | (_MASK << (_BITS * _F_X2))

SYMBOL_NAMES: tuple[str, ...] = ("x1", "x2", "theta") + OMEGA_NAMES + ("eps1", "eps2")
_SYMBOL_UNITS: dict[str, int] = {
    "x1": _U_X[0],
    "x2": _U_X[1],
    "theta": _U_TH,
    **{name: _U_W[j] for j, name in enumerate(OMEGA_NAMES)},
    "eps1": _U_E[0],
    "eps2": _U_E[1],
}


class Monomial(NamedTuple):
    """Exponents of one monomial (the imaginary unit lives in the coefficient)."""

    x1: int = 0
    x2: int = 0
    theta: int = 0
    omega: tuple[int, ...] = (0,) * 6
    eps: tuple[int, int] = (0, 0)

    @property
    def omega_degree(self) -> int:
        return sum(self.omega)

    def pack(self) -> int:
        if len(self.omega) != 6 or len(self.eps) != 2:
            raise ValueError("omega needs 6 exponents and eps needs 2")
        key = self.x1 * _U_X[0] + self.x2 * _U_X[1] + self.theta * _U_TH
        for j, e in enumerate(self.omega):
            key += e * _U_W[j]
        return key + self.eps[0] * _U_E[0] + self.eps[1] * _U_E[1]

    def sort_key(self) -> tuple:
        # graded-lex on (t, w, p, q)
        return (self.theta, self.omega_degree, self.omega, self.eps,
                self.x1 + self.x2, -self.x1)

    def render(self) -> str:
        factors = []

        def put(name: str, e: int) -> None:
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")

        put("theta", self.theta)
        for name, e in zip(OMEGA_NAMES, self.omega):
            put(name, e)
        put("eps1", self.eps[0])
        put("eps2", self.eps[1])
        put("x1", self.x1)
        put("x2", self.x2)
        return "*".join(factors)


def _unpack(key: int) -> Monomial:
    return Monomial(
        _field(key, _F_X1),
        _field(key, _F_X2),
        _field(key, _F_TH),
        tuple(_field(key, _F_W0 + j) for j in range(6)),
        (_field(key, _F_E1), _field(key, _F_E2)),
    )


def _admissible(key: int, orders: TruncationOrders) -> bool:
    return (_field(key, _F_TH) <= orders.theta_order
            and _field(key, _F_WT) <= orders.omega_order)


def _as_fraction_pair(value: ScalarLike) -> tuple[Fraction, Fraction]:
    c = ExactComplexRational.coerce(value)
    return c.re, c.im


# ----------------------------------------------------------------------------


class DeformedPolynomial:
    """Immutable truncated polynomial with exact Gaussian-rational coefficients.

    Instances compare equal when they carry the same orders and the same
    canonical terms.  Arithmetic with a polynomial of different orders raises
    :class:`OrderMismatchError`.
    """

    __slots__ = ("_num", "_den", "orders", "_grades", "_hash")

    def __init__(self, numerators: Mapping[int, int], denominator: int,
                 orders: TruncationOrders, *, _canonical: bool = False):
        self.orders = orders
        self._grades = None
        self._hash = None
        if _canonical:
            self._num = numerators
            self._den = denominator
            return
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        num = {k: v for k, v in numerators.items() if v and _admissible(k, orders)}
        if denominator < 0:
            num = {k: -v for k, v in num.items()}
            denominator = -denominator
        self._num, self._den = _reduce(num, denominator)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, orders: TruncationOrders) -> "DeformedPolynomial":
        return cls({}, 1, orders, _canonical=True)

    @classmethod
    def constant(cls, value: ScalarLike, orders: TruncationOrders) -> "DeformedPolynomial":
        return cls.from_terms({Monomial(): value}, orders)

    @classmethod
    def symbol(cls, name: str, orders: TruncationOrders) -> "DeformedPolynomial":
        try:
            unit = _SYMBOL_UNITS[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None
        return cls({unit: 1}, 1, orders)

    @classmethod
    def from_terms(cls, terms: Mapping[Monomial, ScalarLike],
                   orders: TruncationOrders) -> "DeformedPolynomial":
        pairs = {}
        den = 1
        for mono, value in terms.items():
            re, im = _as_fraction_pair(value)
            key = mono.pack()
            for part, k in ((re, key), (im, key + _U_I)):
                if part:
                    pairs[k] = pairs.get(k, Fraction(0)) + part
                    den = den * part.denominator // math.gcd(den, part.denominator)
        num = {k: int(v * den) for k, v in pairs.items()}
        return cls(num, den, orders)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, ExactComplexRational]:
        """Canonical map ``Monomial -> coefficient``."""
        out: dict[int, list[Fraction]] = {}
        den = self._den
        for key, v in self._num.items():
            slot = out.setdefault(key & ~_MASK, [Fraction(0), Fraction(0)])
            slot[key & 1] += Fraction(v, den)
        return {_unpack(k): ExactComplexRational(re, im) for k, (re, im) in out.items()}

    def items(self) -> list[tuple[Monomial, ExactComplexRational]]:
        """Terms in canonical (graded-lex) order."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return bool(self._num)

    def coefficient(self, mono: Monomial) -> ExactComplexRational:
        return self.terms.get(mono, ExactComplexRational())

    def symbols(self) -> set[str]:
        used = set()
        for key in self._num:
            for name, unit in _SYMBOL_UNITS.items():
                field = (unit & ~_U_WT).bit_length() - 1
                if (key >> field) & _MASK:
                    used.add(name)
        return used

    def max_theta_degree(self) -> int:
        return max((_field(k, _F_TH) for k in self._num), default=-1)

    def max_x_degree(self) -> int:
        return max((_field(k, _F_X1) + _field(k, _F_X2) for k in self._num), default=-1)

    def theta_degrees(self) -> set[int]:
        return {g[0] for g, _ in self._grade_table()}

    def is_x_free(self) -> bool:
        return all(not (k & _XY_MASK) for k in self._num)

    # -- helpers ------------------------------------------------------------

    def _check(self, other: "DeformedPolynomial") -> None:
        if self.orders != other.orders:
            raise OrderMismatchError(
                f"truncation orders differ: {self.orders} vs {other.orders}")

    def _coerce(self, other) -> "DeformedPolynomial | None":
        if isinstance(other, DeformedPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, ExactComplexRational)):
            return DeformedPolynomial.constant(other, self.orders)
        return None

    def _grade_table(self):
        if self._grades is None:
            table: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
            for k, v in self._num.items():
                g = (_field(k, _F_TH), _field(k, _F_WT), k & 1)
                table.setdefault(g, []).append((k, v))
            self._grades = list(table.items())
        return self._grades

    def map_terms(self, fn: Callable[[Monomial, ExactComplexRational], ExactComplexRational | None]
                  ) -> "DeformedPolynomial":
        """Rebuild from ``fn(monomial, coeff)``; returning a falsy value drops the term."""
        out = {}
        for mono, c in self.terms.items():
            new = fn(mono, c)
            if new:
                out[mono] = new
        return DeformedPolynomial.from_terms(out, self.orders)

    def filter(self, keep: Callable[[Monomial], bool]) -> "DeformedPolynomial":
        num = {k: v for k, v in self._num.items() if keep(_unpack(k))}
        return DeformedPolynomial(num, self._den, self.orders)

    def with_orders(self, orders: TruncationOrders) -> "DeformedPolynomial":
        """Re-attach to ``orders``, discarding any terms beyond them."""
        return DeformedPolynomial(dict(self._num), self._den, orders)

    def omega_part(self, degree: int) -> "DeformedPolynomial":
        num = {k: v for k, v in self._num.items() if _field(k, _F_WT) == degree}
        return DeformedPolynomial(num, self._den, self.orders)

    def theta_part(self, degree: int) -> "DeformedPolynomial":
        num = {k: v for k, v in self._num.items() if _field(k, _F_TH) == degree}
        return DeformedPolynomial(num, self._den, self.orders)

    def x_free_part(self) -> "DeformedPolynomial":
        num = {k: v for k, v in self._num.items() if not k & _XY_MASK}
        return DeformedPolynomial(num, self._den, self.orders)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _combine(self, o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _combine(self, o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _combine(o, self, -1)

    def __neg__(self) -> "DeformedPolynomial":
        return DeformedPolynomial({k: -v for k, v in self._num.items()}, self._den,
                                  self.orders, _canonical=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactComplexRational)):
            return self.scale(other)
        if not isinstance(other, DeformedPolynomial):
            return NotImplemented
        self._check(other)
        return _multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ExactComplexRational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, ExactComplexRational)):
            return self.scale(ExactComplexRational(1) / ExactComplexRational.coerce(other))
        return NotImplemented

    def __pow__(self, n: int) -> "DeformedPolynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = DeformedPolynomial.constant(1, self.orders)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, value: ScalarLike) -> "DeformedPolynomial":
        re, im = _as_fraction_pair(value)
        if not re and not im:
            return DeformedPolynomial.zero(self.orders)
        den = re.denominator * im.denominator // math.gcd(re.denominator, im.denominator)
        a, b = int(re * den), int(im * den)
        num: dict[int, int] = {}
        for k, v in self._num.items():
            if a:
                num[k] = num.get(k, 0) + a * v
            if b:
                if k & 1:
                    kk = k - _U_I
                    num[kk] = num.get(kk, 0) - b * v
                else:
                    kk = k + _U_I
                    num[kk] = num.get(kk, 0) + b * v
        return DeformedPolynomial(num, self._den * den, self.orders)

    def derivative(self, axis: int) -> "DeformedPolynomial":
        """Partial derivative in ``x^axis`` (axis is 1 or 2)."""
        if axis not in (1, 2):
            raise ValueError(f"axis must be 1 or 2, got {axis!r}")
        field = _F_X1 if axis == 1 else _F_X2
        unit = _U_X[axis - 1]
        num = {}
        for k, v in self._num.items():
            p = _field(k, field)
            if p:
                num[k - unit] = p * v
        return DeformedPolynomial(num, self._den, self.orders)

    def conjugate(self) -> "DeformedPolynomial":
        """Complex conjugation; all generators are real."""
        num = {k: (-v if k & 1 else v) for k, v in self._num.items()}
        return DeformedPolynomial(num, self._den, self.orders, _canonical=True)

    def real_part(self) -> "DeformedPolynomial":
        return DeformedPolynomial({k: v for k, v in self._num.items() if not k & 1},
                                  self._den, self.orders)

    def imag_part(self) -> "DeformedPolynomial":
        return DeformedPolynomial({k - _U_I: v for k, v in self._num.items() if k & 1},
                                  self._den, self.orders)

    def zero_like(self) -> "DeformedPolynomial":
        return DeformedPolynomial.zero(self.orders)

    def one_like(self) -> "DeformedPolynomial":
        return DeformedPolynomial.constant(1, self.orders)

    # -- evaluation ---------------------------------------------------------

    def substitute(self, bindings: Mapping[str, ScalarLike]) -> ExactComplexRational:
        missing = self.symbols() - set(bindings)
        if missing:
            raise UnboundSymbolError(missing)
        vals = {name: ExactComplexRational.coerce(bindings[name]) for name in self.symbols()}
        total = ExactComplexRational()
        for mono, c in self.terms.items():
            term = c
            exps = [("x1", mono.x1), ("x2", mono.x2), ("theta", mono.theta)]
            exps += list(zip(OMEGA_NAMES, mono.omega))
            exps += [("eps1", mono.eps[0]), ("eps2", mono.eps[1])]
            for name, e in exps:
                if e:
                    term = term * vals[name] ** e
            total = total + term
        return total

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, ExactComplexRational)):
            other = DeformedPolynomial.constant(other, self.orders)
        if not isinstance(other, DeformedPolynomial):
            return NotImplemented
        return (self.orders == other.orders and self._den == other._den
                and self._num == other._num)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.orders, self._den, frozenset(self._num.items())))
        return self._hash

    def render(self) -> str:
        """Canonical text form; parseable by the expression grammar."""
        items = self.items()
        if not items:
            return "0"
        parts = []
        for mono, c in items:
            sign, body = _render_term(mono, c)
            parts.append((sign, body))
        out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += (" - " if sign < 0 else " + ") + body
        return out

    __str__ = render

    def __repr__(self) -> str:
        return f"DeformedPolynomial({self.render()!r}, {self.orders})"


def _render_term(mono: Monomial, c: ExactComplexRational) -> tuple[int, str]:
    m = mono.render()
    re, im = c.re, c.im
    if re and im:
        sign = -1 if re < 0 else 1
        re, im = re * sign, im * sign
        op = "-" if im < 0 else "+"
        coeff = f"({re} {op} {abs(im)}*i)"
        return sign, coeff + ("*" + m if m else "")
    if im:
        sign = -1 if im < 0 else 1
        mag = abs(im)
        coeff = "i" if mag == 1 else f"{mag}*i"
        return sign, coeff + ("*" + m if m else "")
    sign = -1 if re < 0 else 1
    mag = abs(re)
    if not m:
        return sign, str(mag)
    return sign, m if mag == 1 else f"{mag}*{m}"


def _reduce(num: dict[int, int], den: int) -> tuple[dict[int, int], int]:
    if not num:
        return {}, 1
    if den != 1:
        g = math.gcd(den, *num.values())
        if g != 1:
            num = {k: v // g for k, v in num.items()}
            den //= g
    return num, den


def _combine(p: DeformedPolynomial, q: DeformedPolynomial, sign: int) -> DeformedPolynomial:
    if not q._num:
        return p
    if not p._num:
        return q if sign > 0 else -q
    dp, dq = p._den, q._den
    if dp == dq:
        num = dict(p._num)
        get = num.get
        for k, v in q._num.items():
            num[k] = get(k, 0) + sign * v
        den = dp
    else:
        g = math.gcd(dp, dq)
        fp, fq = dq // g, dp // g
        num = {k: v * fp for k, v in p._num.items()}
        get = num.get
        for k, v in q._num.items():
            num[k] = get(k, 0) + sign * fq * v
        den = dp * fp
    num = {k: v for k, v in num.items() if v}
    n, d = _reduce(num, den)
    return DeformedPolynomial(n, d, p.orders, _canonical=True)


def _multiply(p: DeformedPolynomial, q: DeformedPolynomial) -> DeformedPolynomial:
    orders = p.orders
    T, W = orders.theta_order, orders.omega_order
    acc: dict[int, int] = {}
    get = acc.get
    for (ta, wa, ia), la in p._grade_table():
        for (tb, wb, ib), lb in q._grade_table():
            if ta + tb > T or wa + wb > W:
                continue
            if ia and ib:
                # i*i = -1: drop the doubled imaginary field and negate
                for ka, va in la:
                    base = ka - 2 * _U_I
                    for kb, vb in lb:
                        k = base + kb
                        acc[k] = get(k, 0) - va * vb
            else:
                for ka, va in la:
                    for kb, vb in lb:
                        k = ka + kb
                        acc[k] = get(k, 0) + va * vb
    num = {k: v for k, v in acc.items() if v}
    n, d = _reduce(num, p._den * q._den)
    return DeformedPolynomial(n, d, orders, _canonical=True)


# ----------------------------------------------------------------------------
# Functional API.

def ring_add(p: DeformedPolynomial, q: DeformedPolynomial) -> DeformedPolynomial:
    p._check(q)
    return p + q


def ring_mul(p: DeformedPolynomial, q: DeformedPolynomial) -> DeformedPolynomial:
    p._check(q)
    return p * q


def ring_derivative(p: DeformedPolynomial, axis: int) -> DeformedPolynomial:
    return p.derivative(axis)


def substitute_numeric(p: DeformedPolynomial,
                       bindings: Mapping[str, ScalarLike]) -> ExactComplexRational:
    return p.substitute(bindings)


def iter_symbols() -> Iterator[str]:
    return iter(SYMBOL_NAMES)
