"""Exact affine forms over the rationals in named indeterminates."""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Dict, Iterable, Mapping, Tuple, Union

Number = Union[int, Q]


def fmt_rat(q: Number) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Affine:
    """c + sum(k_v * v) with exact rational coefficients.

    Instances are immutable and hashable; zero coefficients are dropped so
    that equal forms compare equal.
    """

    __slots__ = ("_const", "_coeffs", "_hash")

    def __init__(self, const: Number = 0, coeffs: Mapping[str, Number] | None = None):
        self._const = Q(const)
        items = {}
        for name, k in (coeffs or {}).items():
            k = Q(k)
            if k:
                items[name] = k
        self._coeffs: Tuple[Tuple[str, Q], ...] = tuple(sorted(items.items()))
        self._hash = hash((self._const, self._coeffs))

    @classmethod
    def var(cls, name: str, k: Number = 1) -> "Affine":
        return cls(0, {name: k})

    @classmethod
    def lift(cls, value: "Affine | Number") -> "Affine":
        if isinstance(value, Affine):
            return value
        return cls(value)

    @property
    def const(self) -> Q:
        return self._const

    @property
    def coeffs(self) -> Dict[str, Q]:
        return dict(self._coeffs)

    def coeff(self, name: str) -> Q:
        return dict(self._coeffs).get(name, Q(0))

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self._coeffs)

    def is_constant(self) -> bool:
        return not self._coeffs

    def constant_value(self) -> Q:
        if self._coeffs:
            raise ValueError(f"{self} is not constant")
        return self._const

    def __add__(self, other: "Affine | Number") -> "Affine":
        other = Affine.lift(other)
        merged = dict(self._coeffs)
        for name, k in other._coeffs:
            merged[name] = merged.get(name, Q(0)) + k
        return Affine(self._const + other._const, merged)

    __radd__ = __add__

    def __neg__(self) -> "Affine":
        return Affine(-self._const, {n: -k for n, k in self._coeffs})

    def __sub__(self, other: "Affine | Number") -> "Affine":
        return self + (-Affine.lift(other))

    def __rsub__(self, other: "Affine | Number") -> "Affine":
        return Affine.lift(other) - self

    def __mul__(self, scalar: Number) -> "Affine":
        if isinstance(scalar, Affine):
            if scalar.is_constant():
                scalar = scalar.const
            elif self.is_constant():
                return scalar * self.const
            else:
                raise TypeError("product of two non-constant affine forms is not affine")
        scalar = Q(scalar)
        return Affine(self._const * scalar, {n: k * scalar for n, k in self._coeffs})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Number) -> "Affine":
        return self * (1 / Q(scalar))

    def subs(self, assignment: Mapping[str, "Affine | Number"]) -> "Affine":
        out = Affine(self._const)
        for name, k in self._coeffs:
            if name in assignment:
                out = out + Affine.lift(assignment[name]) * k
            else:
                out = out + Affine.var(name, k)
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Q)):
            other = Affine(other)
        if not isinstance(other, Affine):
            return NotImplemented
        return self._const == other._const and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return (self._coeffs, self._const)

    def __lt__(self, other: "Affine") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        parts = []
        for name, k in self._coeffs:
            if k == 1:
                term = name
            elif k == -1:
                term = f"-{name}"
            else:
                term = f"{fmt_rat(k)}*{name}"
            parts.append(term)
        if self._const or not parts:
            parts.append(fmt_rat(self._const))
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __repr__(self) -> str:
        return f"Affine({self})"


def affine_sum(items: Iterable[Affine]) -> Affine:
    total = Affine(0)
    for item in items:
        total = total + item
    return total
