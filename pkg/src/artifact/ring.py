"""The exact coefficient ring: rational functions over Q in formal symbols.

Symbols stand for the Laurent coefficients a_-1, a_0, a_1, ... of the zeta
function at s = 1 and for opaque special values such as zeta(2), L(1,chi*mu)
or eps(0,chi*mu).  Values are sympy expressions kept in `cancel` normal
form.  A separate registry records which symbols are known to be invertible;
a division is only allowed by a product of those and nonzero rationals.
"""

from __future__ import annotations

import threading
from fractions import Fraction as Q
from typing import Set, Union

import sympy

from .affine import fmt_rat

Coeff = sympy.Expr
Scalar = Union[int, Q, sympy.Expr]

ZERO = sympy.Integer(0)
ONE = sympy.Integer(1)

_lock = threading.Lock()
_invertible: Set[str] = set()


def _symbol(name: str, invertible: bool) -> sympy.Symbol:
    sym = sympy.Symbol(name)
    if invertible:
        with _lock:
            _invertible.add(name)
    return sym


def a(k: int) -> sympy.Symbol:
    """Coefficient of (s-1)^k in the expansion of zeta at s = 1."""
    if k < -1:
        raise ValueError("zeta expansion starts at (s-1)^-1")
    return _symbol(f"a_{k}", invertible=(k == -1))


A_M1 = a(-1)
A0 = a(0)
A1 = a(1)


def _prime(name: str, deriv: int) -> str:
    if deriv == 0:
        return name
    if deriv <= 3:
        return name + "'" * deriv
    return f"{name}^({deriv})"


def _nonvanishing(c: Q) -> bool:
    # outside the open critical strip the completed values cannot vanish
    return c >= 1 or c <= 0


def zeta_value(c: Q, deriv: int = 0) -> sympy.Symbol:
    """zeta^(deriv)(c) for c != 0, 1; c must already satisfy c >= 1/2."""
    c = Q(c)
    if c in (0, 1):
        raise ValueError("zeta has poles at 0 and 1")
    if c < Q(1, 2):
        raise ValueError("use the functional equation to move c into c >= 1/2")
    return _symbol(f"{_prime('zeta', deriv)}({fmt_rat(c)})", deriv == 0 and _nonvanishing(c))


def l_value(c: Q, theta: str, deriv: int = 0) -> sympy.Symbol:
    """L^(deriv)(c, theta) for a nontrivial character theta, c >= 1/2."""
    c = Q(c)
    if c < Q(1, 2):
        raise ValueError("use the functional equation to move c into c >= 1/2")
    return _symbol(f"{_prime('L', deriv)}({fmt_rat(c)},{theta})", deriv == 0 and _nonvanishing(c))


def eps_value(c: Q, theta: str, deriv: int = 0) -> sympy.Symbol:
    """eps^(deriv)(c, theta) for a nontrivial character; eps itself is a unit."""
    return _symbol(f"{_prime('eps', deriv)}({fmt_rat(Q(c))},{theta})", deriv == 0)


def unit(name: str) -> sympy.Symbol:
    """A declared invertible opaque constant."""
    return _symbol(name, invertible=True)


def opaque(name: str) -> sympy.Symbol:
    """An opaque constant with no invertibility claim."""
    return _symbol(name, invertible=False)


def lift(value: Scalar) -> sympy.Expr:
    if isinstance(value, Q):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.sympify(value)


def canon(value: Scalar) -> sympy.Expr:
    return sympy.cancel(lift(value))


def is_zero(value: Scalar) -> bool:
    return canon(value) == 0


def equal(x: Scalar, y: Scalar) -> bool:
    return is_zero(lift(x) - lift(y))


def _is_unit_product(expr: sympy.Expr) -> bool:
    if expr == 0:
        return False
    coeff, factors = sympy.factor_list(expr)
    for base, _mult in factors:
        if not (isinstance(base, sympy.Symbol) and base.name in _invertible):
            return False
    return coeff != 0


def is_invertible(value: Scalar) -> bool:
    expr = canon(value)
    num, den = sympy.fraction(expr)
    return _is_unit_product(num) and _is_unit_product(den)


def to_str(value: Scalar) -> str:
    return str(canon(value))


def to_rational(value: Scalar) -> Q:
    expr = canon(value)
    if not expr.is_Rational:
        raise ValueError(f"{expr} is not a rational number")
    return Q(int(expr.p), int(expr.q))
