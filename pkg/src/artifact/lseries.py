"""Completed L-functions as formal symbols and truncated Laurent series.

Conventions.  Every L-function is completed, so it satisfies

    L(s, theta) = eps(s, theta) L(1 - s, theta^-1),

and zeta = L(., 1) has eps = 1, simple poles at s = 1 and s = 0, and

    zeta(s) = a_-1/(s-1) + a_0 + a_1 (s-1) + ...

The expansion at s = 0 is derived from the functional equation, which gives
zeta(u) = -a_-1/u + a_0 - a_1 u + ...  L-values of nontrivial characters and
zeta-values away from 0 and 1 are opaque symbols of the coefficient ring.
Values at c < 1/2 are always rewritten through the functional equation, so
each special value has a single name.

A character counts as trivial exactly when the active relation set proves
it; any other character is treated as nontrivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from math import factorial
from typing import Dict, List, Mapping, Optional, Tuple, Union

import sympy

from . import ring
from .affine import Affine, Number, fmt_rat
from .characters import TRIVIAL, CharacterExpr, RelationSet


class UnsupportedExpansion(ValueError):
    """The requested expansion is outside what the engine can decide."""


class NonInvertible(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# symbols


@dataclass(frozen=True)
class LSymbol:
    """L(arg, char) for an affine argument."""

    arg: Affine
    char: CharacterExpr = TRIVIAL

    kind = "L"

    def __init__(self, arg: "Affine | Number", char: CharacterExpr = TRIVIAL):
        object.__setattr__(self, "arg", Affine.lift(arg))
        object.__setattr__(self, "char", char)

    def __str__(self) -> str:
        if self.char.is_identity():
            return f"zeta({self.arg})"
        return f"L({self.arg},{self.char})"


@dataclass(frozen=True)
class EpsSymbol:
    """The epsilon factor eps(arg, char)."""

    arg: Affine
    char: CharacterExpr = TRIVIAL

    kind = "eps"

    def __init__(self, arg: "Affine | Number", char: CharacterExpr = TRIVIAL):
        object.__setattr__(self, "arg", Affine.lift(arg))
        object.__setattr__(self, "char", char)

    def __str__(self) -> str:
        return f"eps({self.arg},{self.char})"


Factor = Union[LSymbol, EpsSymbol]


def _factor_key(f: Factor) -> tuple:
    return (f.kind, str(f.char), f.arg.sort_key())


class LProduct:
    """coeff * prod(factor ** exponent) with coeff in the coefficient ring."""

    __slots__ = ("coeff", "factors")

    def __init__(self, coeff: ring.Scalar = 1, factors: Mapping[Factor, int] | None = None):
        self.coeff = ring.canon(coeff)
        clean = {f: e for f, e in (factors or {}).items() if e}
        self.factors: Tuple[Tuple[Factor, int], ...] = tuple(
            sorted(clean.items(), key=lambda kv: _factor_key(kv[0]))
        )

    @classmethod
    def of(cls, factor: Factor, exponent: int = 1) -> "LProduct":
        return cls(1, {factor: exponent})

    def factor_map(self) -> Dict[Factor, int]:
        return dict(self.factors)

    def __mul__(self, other: "LProduct | ring.Scalar") -> "LProduct":
        if not isinstance(other, LProduct):
            return LProduct(self.coeff * ring.lift(other), self.factor_map())
        merged = self.factor_map()
        for f, e in other.factors:
            merged[f] = merged.get(f, 0) + e
        return LProduct(self.coeff * other.coeff, merged)

    __rmul__ = __mul__

    def inverse(self) -> "LProduct":
        if ring.is_zero(self.coeff):
            raise NonInvertible("zero product")
        return LProduct(1 / self.coeff, {f: -e for f, e in self.factors})

    def __truediv__(self, other: "LProduct") -> "LProduct":
        return self * other.inverse()

    def normalize(self, rel: RelationSet) -> "LProduct":
        """Reduce characters; eps of a trivial character is 1."""
        merged: Dict[Factor, int] = {}
        for f, e in self.factors:
            c = rel.reduce(f.char)
            if f.kind == "eps" and c.is_identity():
                continue
            g = type(f)(f.arg, c)
            merged[g] = merged.get(g, 0) + e
        return LProduct(self.coeff, merged)

    def subs(self, assignment: Mapping[str, "Affine | Number"]) -> "LProduct":
        merged: Dict[Factor, int] = {}
        for f, e in self.factors:
            g = type(f)(f.arg.subs(assignment), f.char)
            merged[g] = merged.get(g, 0) + e
        return LProduct(self.coeff, merged)

    @property
    def variables(self) -> Tuple[str, ...]:
        names = set()
        for f, _ in self.factors:
            names.update(f.arg.variables)
        return tuple(sorted(names))

    def numerator(self) -> List[Factor]:
        return [f for f, e in self.factors for _ in range(e) if e > 0]

    def denominator(self) -> List[Factor]:
        return [f for f, e in self.factors for _ in range(-e) if e < 0]

    def equals(self, other: "LProduct", rel: RelationSet | None = None) -> bool:
        a, b = (self, other) if rel is None else (self.normalize(rel), other.normalize(rel))
        return a.factors == b.factors and ring.equal(a.coeff, b.coeff)

    def is_zero(self) -> bool:
        return ring.is_zero(self.coeff)

    def __str__(self) -> str:
        num = [str(f) for f in self.numerator()]
        den = [str(f) for f in self.denominator()]
        text = "" if self.coeff == 1 and (num or den) else f"({self.coeff})"
        if num:
            text += ("*" if text else "") + "*".join(num)
        if den:
            text = (text or "1") + "/(" + "*".join(den) + ")"
        return text or "1"

    def to_json(self) -> dict:
        return {
            "coefficient": ring.to_str(self.coeff),
            "numerator": [str(f) for f in self.numerator()],
            "denominator": [str(f) for f in self.denominator()],
        }


def zeta(arg: "Affine | Number") -> LSymbol:
    return LSymbol(arg, TRIVIAL)


# ---------------------------------------------------------------------------
# Laurent series


class LaurentSeries:
    """sum_n c_n u^n, exact for all n < prec."""

    __slots__ = ("coeffs", "prec", "var", "point")

    def __init__(
        self,
        coeffs: Mapping[int, ring.Scalar],
        prec: int,
        var: str = "u",
        point: Optional[Q] = None,
    ):
        clean = {}
        for n, c in coeffs.items():
            if n >= prec:
                continue
            c = ring.canon(c)
            if c != 0:
                clean[int(n)] = c
        self.coeffs: Dict[int, sympy.Expr] = dict(sorted(clean.items()))
        self.prec = int(prec)
        self.var = var
        self.point = None if point is None else Q(point)

    @classmethod
    def constant(cls, c: ring.Scalar, prec: int, var: str = "u", point=None) -> "LaurentSeries":
        return cls({0: c}, prec, var, point)

    def _like(self, coeffs, prec) -> "LaurentSeries":
        return LaurentSeries(coeffs, prec, self.var, self.point)

    def _check(self, other: "LaurentSeries") -> None:
        if other.var != self.var or (
            self.point is not None and other.point is not None and self.point != other.point
        ):
            raise ValueError("series expanded at different points")

    @property
    def valuation(self) -> Optional[int]:
        return min(self.coeffs) if self.coeffs else None

    def leading(self) -> Tuple[int, sympy.Expr]:
        v = self.valuation
        if v is None:
            raise ValueError("series is zero to its precision")
        return v, self.coeffs[v]

    def coefficient(self, n: int) -> sympy.Expr:
        if n >= self.prec:
            raise ValueError(f"coefficient of {self.var}^{n} is beyond the precision O({self.var}^{self.prec})")
        return self.coeffs.get(n, ring.ZERO)

    def truncate(self, prec: int) -> "LaurentSeries":
        return self._like(self.coeffs, min(prec, self.prec))

    def __add__(self, other: "LaurentSeries | ring.Scalar") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = self._like({0: other}, self.prec if self.prec > 0 else 1 << 30)
        self._check(other)
        out: Dict[int, sympy.Expr] = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, ring.ZERO) + c
        return self._like(out, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return self._like({n: -c for n, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, k: ring.Scalar) -> "LaurentSeries":
        k = ring.lift(k)
        return self._like({n: c * k for n, c in self.coeffs.items()}, self.prec)

    def shift(self, m: int) -> "LaurentSeries":
        """Multiply by u^m."""
        return self._like({n + m: c for n, c in self.coeffs.items()}, self.prec + m)

    def __mul__(self, other: "LaurentSeries | ring.Scalar") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        self._check(other)
        va, vb = self.valuation, other.valuation
        if va is None or vb is None:
            # a series that is zero to its precision only bounds the product
            lo_a = self.prec if va is None else va
            lo_b = other.prec if vb is None else vb
            return self._like({}, min(lo_a + other.prec, lo_b + self.prec))
        prec = min(va + other.prec, vb + self.prec)
        out: Dict[int, sympy.Expr] = {}
        for i, ci in self.coeffs.items():
            for j, cj in other.coeffs.items():
                if i + j < prec:
                    out[i + j] = out.get(i + j, ring.ZERO) + ci * cj
        return self._like(out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        v, lead = self.leading()
        if not ring.is_invertible(lead):
            raise NonInvertible(f"leading coefficient {lead} is not a unit")
        rel_prec = self.prec - v
        inv_lead = 1 / lead
        # t = (series / (lead u^v)) - 1 has positive valuation
        t = {n - v: c * inv_lead for n, c in self.coeffs.items() if n != v}
        result: Dict[int, sympy.Expr] = {0: ring.ONE}
        power: Dict[int, sympy.Expr] = {0: ring.ONE}
        for _k in range(1, rel_prec):
            nxt: Dict[int, sympy.Expr] = {}
            for i, ci in power.items():
                for j, cj in t.items():
                    if i + j < rel_prec:
                        nxt[i + j] = nxt.get(i + j, ring.ZERO) - ci * cj
            power = {n: sympy.expand(c) for n, c in nxt.items()}
            if not power:
                break
            for n, c in power.items():
                result[n] = result.get(n, ring.ZERO) + c
        coeffs = {n - v: c * inv_lead for n, c in result.items()}
        return self._like(coeffs, rel_prec - v)

    def __truediv__(self, other: "LaurentSeries | ring.Scalar") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(1 / ring.lift(other))
        return self * other.inverse()

    def residue(self) -> sympy.Expr:
        return self.coefficient(-1)

    def equals(self, other: "LaurentSeries") -> bool:
        prec = min(self.prec, other.prec)
        lo = min([prec] + list(self.coeffs) + list(other.coeffs))
        return all(
            ring.equal(self.coeffs.get(n, 0), other.coeffs.get(n, 0)) for n in range(lo, prec)
        )

    def __str__(self) -> str:
        u = sympy.Symbol(self.var)
        terms = [str(c * u ** n) for n, c in self.coeffs.items()]
        tail = f"O({self.var}^{self.prec})" if self.prec != 0 else "O(1)"
        text = " + ".join(terms + [tail])
        return text.replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "variable": self.var,
            "point": None if self.point is None else fmt_rat(self.point),
            "precision": self.prec,
            "terms": [{"power": n, "coefficient": ring.to_str(c)} for n, c in self.coeffs.items()],
        }


# ---------------------------------------------------------------------------
# expansions of single factors


class _Unknown:
    """Order marker for a regular value that might vanish."""

    def __repr__(self) -> str:
        return "UNKNOWN"

    __str__ = __repr__


UNKNOWN = _Unknown()


def _taylor(values, k: Q, prec: int, var: str, point) -> LaurentSeries:
    """sum_j values(j) k^j / j! u^j exact below u^prec."""
    coeffs = {}
    for j in range(max(prec, 0)):
        coeffs[j] = values(j) * ring.lift(Q(k) ** j / factorial(j))
    return LaurentSeries(coeffs, prec, var, point)


def _zeta_series(c: Q, k: Q, prec: int, var: str, point) -> LaurentSeries:
    if k == 0 and c in (0, 1):
        raise UnsupportedExpansion(f"zeta({fmt_rat(c)}) is identically singular along the line")
    if c == 1:
        coeffs = {-1: ring.A_M1 / ring.lift(k)}
        for j in range(max(prec, 0)):
            coeffs[j] = ring.a(j) * ring.lift(Q(k) ** j)
        return LaurentSeries(coeffs, prec, var, point)
    if c == 0:
        # zeta(k u) = zeta(1 - k u)
        coeffs = {-1: -ring.A_M1 / ring.lift(k)}
        for j in range(max(prec, 0)):
            coeffs[j] = ring.a(j) * ring.lift((-Q(k)) ** j)
        return LaurentSeries(coeffs, prec, var, point)
    if c < Q(1, 2):
        return _taylor(lambda j: ring.zeta_value(1 - c, j), -k, prec, var, point)
    return _taylor(lambda j: ring.zeta_value(c, j), k, prec, var, point)


def _eps_series(c: Q, k: Q, theta: CharacterExpr, prec: int, var: str, point) -> LaurentSeries:
    if theta.is_identity():
        return LaurentSeries.constant(1, prec, var, point)
    return _taylor(lambda j: ring.eps_value(c, str(theta), j), k, prec, var, point)


def factor_series(
    f: Factor, c: Q, k: Q, rel: RelationSet, prec: int, var: str = "u", point=None
) -> LaurentSeries:
    """Expansion of f at argument c + k u, exact below u^prec."""
    theta = rel.reduce(f.char)
    c, k = Q(c), Q(k)
    if f.kind == "eps":
        return _eps_series(c, k, theta, prec, var, point)
    if theta.is_identity():
        return _zeta_series(c, k, prec, var, point)
    if c < Q(1, 2):
        inv = rel.reduce(theta.inverse())
        front = _eps_series(c, k, theta, prec, var, point)
        back = _taylor(lambda j: ring.l_value(1 - c, str(inv), j), -k, prec, var, point)
        return front * back
    return _taylor(lambda j: ring.l_value(c, str(theta), j), k, prec, var, point)


def factor_order(f: Factor, c: Q, k: Q, rel: RelationSet):
    """Order of vanishing of f at argument c (moving with slope k)."""
    if f.kind == "eps":
        return 0
    theta = rel.reduce(f.char)
    c = Q(c)
    if theta.is_identity() and c in (0, 1):
        if k == 0:
            raise UnsupportedExpansion(f"zeta({fmt_rat(c)}) is identically singular along the line")
        return -1
    if 0 < c < 1:
        return UNKNOWN
    return 0


def _restrict(f: Factor, var: str, value: "Affine | Q") -> Tuple[Affine, Q]:
    rest = f.arg.subs({var: value})
    return rest, f.arg.coeff(var)


def _point_parts(f: Factor, point: Mapping[str, Number]) -> Tuple[Q, Q]:
    """Constant value of the argument at the point and slope along it."""
    rest = f.arg.subs(dict(point))
    if not rest.is_constant():
        raise UnsupportedExpansion(f"{f} still depends on {', '.join(rest.variables)} at the point")
    if len(point) == 1:
        (var,) = point
        return rest.const, f.arg.coeff(var)
    # several variables: the factor is singular along its own hyperplane
    slope = Q(1) if not f.arg.is_constant() else Q(0)
    return rest.const, slope


def _as_product(f) -> LProduct:
    if isinstance(f, LProduct):
        return f
    if isinstance(f, (LSymbol, EpsSymbol)):
        return LProduct.of(f)
    if isinstance(f, (list, tuple)):
        out = LProduct()
        for g in f:
            out = out * _as_product(g)
        return out
    raise TypeError(f"cannot expand {f!r}")


def order_at(f, point: Mapping[str, Number], rel: RelationSet | None = None):
    """Pole (negative) or zero (positive) order; UNKNOWN if it can't be decided."""
    rel = rel or RelationSet()
    prod = _as_product(f)
    total = 0
    for g, e in prod.factors:
        c, k = _point_parts(g, point)
        o = factor_order(g, c, k, rel)
        if o is UNKNOWN:
            return UNKNOWN
        total += e * o
    return total


def product_series(
    prod: LProduct, var: str, value: Number, prec: int, rel: RelationSet, local: str = "u"
) -> LaurentSeries:
    """Expand prod at var = value + u, exact below u^prec."""
    value = Q(value)
    prod = prod.normalize(rel)
    parts = []
    total_order = 0
    for f, e in prod.factors:
        rest, k = _restrict(f, var, value)
        if not rest.is_constant():
            raise UnsupportedExpansion(f"{f} depends on {', '.join(rest.variables)}")
        o = factor_order(f, rest.const, k, rel)
        if o is UNKNOWN:
            o = 0
        parts.append((f, e, rest.const, k, o))
        total_order += e * o
    # every factor is expanded to the same relative precision as the result
    relative = prec - total_order
    if relative <= 0:
        # the product starts at u^total_order >= u^prec: nothing to report
        return LaurentSeries({}, prec, local, value)
    result = LaurentSeries.constant(prod.coeff, relative, local, value)
    for f, e, c, k, o in parts:
        s = factor_series(f, c, k, rel, o + relative, local, value)
        s = s if e > 0 else s.inverse()
        for _ in range(abs(e)):
            result = result * s
    return result.truncate(prec)


def expand_at(f, point: Mapping[str, Number], order: int, rel: RelationSet | None = None) -> LaurentSeries:
    """Laurent expansion in u = var - value, with all terms through u^order."""
    rel = rel or RelationSet()
    if len(point) != 1:
        raise UnsupportedExpansion("expand_at takes a single spectral variable")
    ((var, value),) = point.items()
    return product_series(_as_product(f), var, value, order + 1, rel)


def leading_part(
    prod: LProduct, var: str, value: "Affine | Number", rel: RelationSet
) -> Tuple[int, LProduct]:
    """Order along var = value and the leading coefficient as a function of
    the remaining variables (a product with the transverse variable removed).

    value may be an affine form in the other variables (a slanted line).
    """
    value = value if isinstance(value, Affine) else Q(value)
    prod = prod.normalize(rel)
    total = 0
    coeff = prod.coeff
    generic: Dict[Factor, int] = {}
    for f, e in prod.factors:
        rest, k = _restrict(f, var, value)
        if not rest.is_constant():
            g = type(f)(rest, f.char)
            generic[g] = generic.get(g, 0) + e
            continue
        o = factor_order(f, rest.const, k, rel)
        if o is UNKNOWN:
            o = 0
        s = factor_series(f, rest.const, k, rel, o + 1)
        lead = s.coefficient(o)
        if e < 0 and not ring.is_invertible(lead):
            raise NonInvertible(f"cannot divide by {f} at {fmt_rat(rest.const)}")
        coeff = coeff * lead ** e
        total += e * o
    return total, LProduct(coeff, generic)
