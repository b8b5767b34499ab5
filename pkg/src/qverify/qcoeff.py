"""Exact rational functions in one indeterminate ``q`` over the integers.

Every coefficient in the engine is a :class:`QScalar`.  Values are stored as a
pair of integer polynomials (``python-flint`` ``fmpz_poly``) in canonical
form: the numerator and denominator are coprime over ``Z[q]`` and the
denominator has a positive leading coefficient.  Canonical form makes
equality a structural comparison and makes hashing well defined.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from functools import cache
from tokenize import TokenError
from typing import Union

import flint

__all__ = [
    "ONE",
    "ZERO",
    "Q",
    "QDivisionByZero",
    "QScalar",
    "arith",
    "bar",
    "parse_qscalar",
    "quantum_binom",
    "quantum_factorial",
    "quantum_int",
]

_Poly = flint.fmpz_poly
Coercible = Union["QScalar", int]


class QDivisionByZero(ZeroDivisionError):
    """Raised when dividing by the zero rational function."""


def _poly_from_laurent(terms: Mapping[int, int]) -> tuple[_Poly, _Poly]:
    """Turn a sparse Laurent polynomial ``{exponent: coeff}`` into num/den."""
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        return _Poly([]), _Poly([1])
    low = min(terms)
    shift = -low if low < 0 else 0
    coeffs = [0] * (max(terms) + shift + 1)
    for e, c in terms.items():
        coeffs[e + shift] = c
    den = _Poly([0] * shift + [1])
    return _Poly(coeffs), den


class QScalar:
    """An element of ``Q(q)`` with integer-polynomial numerator and denominator."""

    __slots__ = ("_den", "_hash", "_num")

    def __init__(self, num: int | _Poly | QScalar = 0, den: int | _Poly = 1) -> None:
        if isinstance(num, QScalar):
            if den != 1:
                raise TypeError("cannot combine a QScalar numerator with a denominator")
            self._num, self._den, self._hash = num._num, num._den, num._hash
            return
        n = num if isinstance(num, _Poly) else _Poly([num])
        d = den if isinstance(den, _Poly) else _Poly([den])
        if d.is_zero():
            raise QDivisionByZero("denominator is the zero polynomial")
        self._num, self._den = _canonical(n, d)
        self._hash = None

    # ------------------------------------------------------------------ build
    @classmethod
    def _raw(cls, num: _Poly, den: _Poly) -> QScalar:
        obj = cls.__new__(cls)
        obj._num, obj._den = num, den
        obj._hash = None
        return obj

    @classmethod
    def from_laurent(cls, terms: Mapping[int, int]) -> QScalar:
        """Build ``sum c * q**e`` from a mapping ``{e: c}`` (negative ``e`` allowed)."""
        num, den = _poly_from_laurent(terms)
        return cls(num, den)

    @classmethod
    def qpow(cls, e: int) -> QScalar:
        """The monomial ``q**e``."""
        return _qpow(e)

    @classmethod
    def coerce(cls, value: Coercible) -> QScalar:
        if isinstance(value, QScalar):
            return value
        if isinstance(value, int):
            return _small_int(value) if -64 <= value <= 64 else cls(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to QScalar")

    # ------------------------------------------------------------- accessors
    @property
    def numerator(self) -> _Poly:
        return self._num

    @property
    def denominator(self) -> _Poly:
        return self._den

    def num_coeffs(self) -> list[int]:
        return [int(c) for c in self._num.coeffs()]

    def den_coeffs(self) -> list[int]:
        return [int(c) for c in self._den.coeffs()]

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __bool__(self) -> bool:
        return not self._num.is_zero()

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other: Coercible) -> QScalar:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if o._num.is_zero():
            return self
        if self._num.is_zero():
            return o
        if self._den == o._den:
            return QScalar(self._num + o._num, self._den)
        return QScalar(self._num * o._den + o._num * self._den, self._den * o._den)

    __radd__ = __add__

    def __sub__(self, other: Coercible) -> QScalar:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Coercible) -> QScalar:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self) -> QScalar:
        return QScalar._raw(-self._num, self._den)

    def __mul__(self, other: Coercible) -> QScalar:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if self._num.is_zero() or o._num.is_zero():
            return ZERO
        # cross-cancel before multiplying to keep intermediate sizes small
        g1 = self._num.gcd(o._den)
        g2 = o._num.gcd(self._den)
        n = _exact(self._num, g1) * _exact(o._num, g2)
        d = _exact(self._den, g2) * _exact(o._den, g1)
        return QScalar._raw(*_sign_fix(n, d))

    __rmul__ = __mul__

    def inverse(self) -> QScalar:
        if self._num.is_zero():
            raise QDivisionByZero("inverse of zero")
        return QScalar._raw(*_sign_fix(self._den, self._num))

    def __truediv__(self, other: Coercible) -> QScalar:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Coercible) -> QScalar:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> QScalar:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return QScalar._raw(self._num**e, self._den**e)

    # ------------------------------------------------------------- equality
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QScalar.coerce(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self.num_coeffs()), tuple(self.den_coeffs())))
        return self._hash

    def __reduce__(self):
        return (_rebuild, (self.num_coeffs(), self.den_coeffs()))

    # ------------------------------------------------------- substitutions
    def subs_qpow(self, d: int) -> QScalar:
        """Substitute ``q -> q**d`` for a nonzero integer ``d``."""
        if d == 1:
            return self
        if d == 0:
            raise ValueError("substitution q -> 1 is not supported")
        num, den = _subs_poly(self._num, d), _subs_poly(self._den, d)
        return QScalar(num[0] * den[1], num[1] * den[0])

    def bar(self) -> QScalar:
        """The involution ``q -> q**-1``."""
        return self.subs_qpow(-1)

    # ------------------------------------------------------- serialization
    def to_laurent(self) -> dict[int, int] | None:
        """Return ``{e: c}`` if the value is a Laurent polynomial, else ``None``."""
        den = self.den_coeffs()
        if any(den[:-1]) or den[-1] != 1:
            return None
        shift = len(den) - 1
        return {i - shift: c for i, c in enumerate(self.num_coeffs()) if c}

    def serialize(self) -> str:
        """Sparse term format ``(c*q^e + ...)/(c*q^e + ...)``."""
        return f"({_terms_str(self.num_coeffs())})/({_terms_str(self.den_coeffs())})"

    def pretty(self) -> str:
        """A compact human-readable form; Laurent polynomials print without a denominator."""
        lau = self.to_laurent()
        if lau is not None:
            return _laurent_pretty(lau)
        return f"({_laurent_pretty(dict(enumerate(self.num_coeffs())))})/({_laurent_pretty(dict(enumerate(self.den_coeffs())))})"

    def __repr__(self) -> str:
        return f"QScalar({self.pretty()})"

    __str__ = pretty


# ---------------------------------------------------------------- helpers
def _rebuild(num: list[int], den: list[int]) -> QScalar:
    return QScalar(_Poly(num), _Poly(den))


def _exact(a: _Poly, g: _Poly) -> _Poly:
    if g.degree() == 0 and int(g[0]) == 1:
        return a
    return a / g


def _sign_fix(n: _Poly, d: _Poly) -> tuple[_Poly, _Poly]:
    if int(d[d.degree()]) < 0:
        return -n, -d
    return n, d


def _canonical(n: _Poly, d: _Poly) -> tuple[_Poly, _Poly]:
    if n.is_zero():
        return n, _Poly([1])
    g = n.gcd(d)
    return _sign_fix(_exact(n, g), _exact(d, g))


def _subs_poly(p: _Poly, d: int) -> tuple[_Poly, _Poly]:
    """``p(q**d)`` as a (num, den) pair of polynomials."""
    coeffs = [int(c) for c in p.coeffs()]
    if d > 0:
        out = [0] * (d * (len(coeffs) - 1) + 1) if coeffs else []
        for i, c in enumerate(coeffs):
            out[i * d] = c
        return _Poly(out), _Poly([1])
    e = -d
    top = len(coeffs) - 1
    out = [0] * (e * top + 1) if coeffs else []
    for i, c in enumerate(coeffs):
        out[(top - i) * e] = c
    return _Poly(out), _Poly([0] * (e * top) + [1]) if coeffs else _Poly([1])


def _coerce_or_none(value: object) -> QScalar | None:
    if isinstance(value, QScalar):
        return value
    if isinstance(value, int):
        return QScalar.coerce(value)
    return None


def _terms_str(coeffs: list[int]) -> str:
    terms = [f"{c}*q^{e}" for e, c in sorted(enumerate(coeffs), reverse=True) if c]
    return " + ".join(terms) if terms else "0*q^0"


def _laurent_pretty(terms: Mapping[int, int]) -> str:
    parts: list[str] = []
    for e in sorted((e for e in terms if terms[e]), reverse=True):
        c = terms[e]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@cache
def _small_int(v: int) -> QScalar:
    return QScalar(v)


@cache
def _qpow(e: int) -> QScalar:
    return QScalar.from_laurent({e: 1})


ZERO = QScalar(0)
ONE = QScalar(1)
Q = QScalar.qpow(1)


# ------------------------------------------------------ public operations
def arith(a: QScalar, b: QScalar, kind: str) -> QScalar:
    """Field arithmetic dispatch; ``kind`` is one of add, sub, mul, div."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


@cache
def quantum_int(n: int) -> QScalar:
    """``[n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}``; ``[0]_q = 0``."""
    if n < 0:
        raise ValueError("quantum_int expects a nonnegative integer")
    return QScalar.from_laurent({n - 1 - 2 * j: 1 for j in range(n)})


@cache
def quantum_factorial(n: int) -> QScalar:
    if n < 0:
        raise ValueError("quantum_factorial expects a nonnegative integer")
    out = ONE
    for k in range(2, n + 1):
        out = out * quantum_int(k)
    return out


@cache
def quantum_binom(n: int, k: int, d: int = 1) -> QScalar:
    """Quantum binomial coefficient, optionally at ``q_i = q**d``."""
    if not (0 <= k <= n):
        raise ValueError(f"quantum_binom requires 0 <= k <= n, got n={n}, k={k}")
    value = quantum_factorial(n) / (quantum_factorial(k) * quantum_factorial(n - k))
    return value.subs_qpow(d)


def bar(a: QScalar) -> QScalar:
    return a.bar()


def parse_qscalar(text: str) -> QScalar:
    """Parse a user-supplied rational expression in ``q`` (e.g. ``"(q+1)/q^2"``).

    Also accepts the serialized sparse-term format produced by
    :meth:`QScalar.serialize`.
    """
    import sympy
    from sympy.parsing.sympy_parser import (
        convert_xor,
        implicit_multiplication_application,
        parse_expr,
        standard_transformations,
    )

    qs = sympy.Symbol("q")
    transformations = standard_transformations + (convert_xor, implicit_multiplication_application)
    try:
        expr = parse_expr(text, local_dict={"q": qs}, transformations=transformations)
    except (sympy.SympifyError, SyntaxError, TypeError, TokenError) as exc:
        raise ValueError(f"cannot parse {text!r} as a rational function of q") from exc
    if expr.free_symbols - {qs}:
        raise ValueError(f"{text!r} involves symbols other than q")
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    try:
        pn = sympy.Poly(num, qs)
        pd = sympy.Poly(den, qs)
    except sympy.PolynomialError as exc:
        raise ValueError(f"{text!r} is not a rational function of q") from exc
    if not (pn.domain.is_ZZ or pn.domain.is_QQ) or not (pd.domain.is_ZZ or pd.domain.is_QQ):
        raise ValueError(f"{text!r} must have rational coefficients")
    # clear rational denominators of the coefficients
    from math import lcm

    nc = [sympy.Rational(c) for c in reversed(pn.all_coeffs())]
    dc = [sympy.Rational(c) for c in reversed(pd.all_coeffs())]
    scale = lcm(*[int(c.q) for c in nc + dc])
    n_int = [int(c * scale) for c in nc]
    d_int = [int(c * scale) for c in dc]
    if not any(d_int):
        raise QDivisionByZero(f"{text!r} has zero denominator")
    return QScalar(_Poly(n_int), _Poly(d_int))


def sum_q(values: Iterable[QScalar]) -> QScalar:
    out = ZERO
    for v in values:
        out = out + v
    return out
