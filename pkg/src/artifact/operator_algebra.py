"""Formal normalized intertwining operators and their rewrite rules.

An atom is R(point, character, w) or one of its partial derivatives
Rx / Ry in the (x, y) coordinates of the spectral plane.  A monomial is a
composition of atoms written the usual way: the rightmost atom acts first,
so R(w Lambda, w.c, w') R(Lambda, c, w) stands for R(Lambda, c, w'w).

Normal form of a monomial:
  1. every plain atom is split into its rank-one chain along the canonical
     reduced word;
  2. the identity rule removes rank-one steps s1 at a point t*a3 and s2 at a
     point t*a4 whose character (c1, c2) satisfies c1 = c2 and c1^2 = 1;
  3. the derivative rule kills Ry(t*a3, w1) under the same condition;
  4. adjacent plain atoms that compose with additive length are merged back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy

from . import ring
from .affine import Number
from .characters import RelationSet, TorusCharacter, weyl_act_char
from .lseries import LaurentSeries
from .root_data import (
    Weight,
    WeylElement,
    from_word,
    weyl_act_velocity,
    weyl_act_weight,
)


class UnsupportedOrder(ValueError):
    pass


@dataclass(frozen=True)
class OperatorAtom:
    point: Weight
    char: TorusCharacter
    weyl: WeylElement
    direction: Optional[str] = None  # None, "x" or "y"

    def __post_init__(self):
        if self.direction not in (None, "x", "y"):
            raise ValueError("direction must be x, y or None")

    @property
    def is_derivative(self) -> bool:
        return self.direction is not None

    @property
    def target_point(self) -> Weight:
        return weyl_act_weight(self.weyl, self.point)

    @property
    def target_char(self) -> TorusCharacter:
        return weyl_act_char(self.weyl, self.char)

    def plain(self) -> "OperatorAtom":
        return OperatorAtom(self.point, self.char, self.weyl)

    def derivative(self, direction: str) -> "OperatorAtom":
        return OperatorAtom(self.point, self.char, self.weyl, direction)

    def sort_key(self) -> tuple:
        return (
            self.weyl.length,
            self.weyl.word,
            self.point.sort_key(),
            self.char.sort_key(),
            self.direction or "",
        )

    def __str__(self) -> str:
        head = "R" + (self.direction or "")
        return f"{head}({self.point},{self.weyl})"

    def to_json(self) -> dict:
        return {
            "label": str(self),
            "point": str(self.point),
            "character": str(self.char),
            "weyl": self.weyl.name,
            "direction": self.direction,
        }


def atom(point: Weight, tc: TorusCharacter, w: WeylElement | str, rel: RelationSet | None = None,
         direction: Optional[str] = None) -> OperatorAtom:
    """Convenience constructor; characters are reduced under rel."""
    if isinstance(w, str):
        w = WeylElement.parse(w)
    if rel is not None:
        tc = rel.reduce_tc(tc)
    return OperatorAtom(point, tc, w, direction)


Monomial = Tuple[OperatorAtom, ...]


# ---------------------------------------------------------------------------
# cocycle factorization


def cocycle_split(
    lam: Weight, tc: TorusCharacter, w: WeylElement, word: Optional[str] = None,
    rel: RelationSet | None = None,
) -> List[OperatorAtom]:
    """Rank-one factors of R(lam, tc, w) along word (default: canonical word).

    The list is in composition order: the last entry acts first.
    """
    word = w.word if word is None else word
    if from_word(word) != w or len(word) != w.length:
        raise ValueError(f"{word!r} is not a reduced word for {w}")
    point, char = lam, tc
    steps: List[OperatorAtom] = []
    for letter in reversed(word):
        s = WeylElement(letter)
        c = rel.reduce_tc(char) if rel is not None else char
        steps.append(OperatorAtom(point, c, s))
        point, char = weyl_act_weight(s, point), weyl_act_char(s, char)
    return list(reversed(steps))


def _fixed_by_reflection(a: OperatorAtom) -> bool:
    """The point is t*a3 for s1, or t*a4 for s2."""
    if a.weyl.word == "1":
        return a.point.x == 0
    if a.weyl.word == "2":
        return a.point.x == a.point.y
    return False


def _character_condition(c: TorusCharacter, rel: RelationSet) -> bool:
    return rel.is_trivial(c.first / c.second) and rel.is_trivial(c.first ** 2)


def is_identity_atom(a: OperatorAtom, rel: RelationSet) -> bool:
    return (not a.is_derivative) and _fixed_by_reflection(a) and _character_condition(a.char, rel)


def is_vanishing_derivative(a: OperatorAtom, rel: RelationSet) -> bool:
    """Ry of s1 along the family t*a3 of identity operators."""
    return (
        a.direction == "y"
        and a.weyl.word == "1"
        and a.point.x == 0
        and _character_condition(a.char, rel)
    )


def _composable(left: OperatorAtom, right: OperatorAtom, rel: RelationSet) -> bool:
    if left.is_derivative or right.is_derivative:
        return False
    if (left.weyl * right.weyl).length != left.weyl.length + right.weyl.length:
        return False
    if left.point != right.target_point:
        return False
    return rel.reduce_tc(left.char) == rel.reduce_tc(right.target_char)


def merge_chain(atoms: Sequence[OperatorAtom], rel: RelationSet) -> List[OperatorAtom]:
    """Merge adjacent composable plain atoms until nothing changes."""
    out = list(atoms)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            left, right = out[i], out[i + 1]
            if _composable(left, right, rel):
                out[i:i + 2] = [OperatorAtom(right.point, right.char, left.weyl * right.weyl)]
                changed = True
                break
    return out


def normalize_monomial(mono: Monomial, rel: RelationSet) -> Optional[Monomial]:
    """Normal form of a monomial, or None when the monomial vanishes."""
    pieces: List[OperatorAtom] = []
    for a in mono:
        a = OperatorAtom(a.point, rel.reduce_tc(a.char), a.weyl, a.direction)
        if a.is_derivative:
            if is_vanishing_derivative(a, rel):
                return None
            pieces.append(a)
            continue
        for step in cocycle_split(a.point, a.char, a.weyl, rel=rel):
            if not is_identity_atom(step, rel):
                pieces.append(step)
    return tuple(merge_chain(pieces, rel))


# ---------------------------------------------------------------------------
# polynomials


def _mono_key(m: Monomial) -> tuple:
    return (len(m), tuple(a.sort_key() for a in m))


def _mono_text(m: Monomial) -> str:
    return "*".join(str(a) for a in m) if m else "1"


class OperatorPolynomial:
    """A finite sum coeff * monomial with coefficients in the scalar ring."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, ring.Scalar] | None = None):
        clean: Dict[Monomial, sympy.Expr] = {}
        for m, c in (terms or {}).items():
            c = ring.canon(c)
            if c != 0:
                clean[tuple(m)] = c
        self.terms: Dict[Monomial, sympy.Expr] = dict(sorted(clean.items(), key=lambda kv: _mono_key(kv[0])))

    @classmethod
    def of(cls, *atoms: OperatorAtom, coeff: ring.Scalar = 1) -> "OperatorPolynomial":
        return cls({tuple(atoms): coeff})

    @classmethod
    def one(cls) -> "OperatorPolynomial":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "OperatorPolynomial":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ring.ZERO) + c
        return OperatorPolynomial(out)

    def __neg__(self) -> "OperatorPolynomial":
        return OperatorPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        return self + (-other)

    def scale(self, k: ring.Scalar) -> "OperatorPolynomial":
        k = ring.lift(k)
        return OperatorPolynomial({m: c * k for m, c in self.terms.items()})

    def __mul__(self, other: "OperatorPolynomial | ring.Scalar") -> "OperatorPolynomial":
        """Composition (self after other); scalars scale."""
        if not isinstance(other, OperatorPolynomial):
            return self.scale(other)
        out: Dict[Monomial, sympy.Expr] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                out[m] = out.get(m, ring.ZERO) + c1 * c2
        return OperatorPolynomial(out)

    def __rmul__(self, k: ring.Scalar) -> "OperatorPolynomial":
        return self.scale(k)

    def coefficient(self, *atoms: OperatorAtom) -> sympy.Expr:
        return self.terms.get(tuple(atoms), ring.ZERO)

    def equals(self, other: "OperatorPolynomial", rel: RelationSet | None = None) -> bool:
        diff = self - other
        if rel is not None:
            diff = apply_axioms(diff, rel)
        return diff.is_zero()

    def monomials(self) -> List[Monomial]:
        return list(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            parts.append(f"({ring.to_str(c)})*{_mono_text(m)}" if m else f"({ring.to_str(c)})")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [
            {"coefficient": ring.to_str(c), "operators": [a.to_json() for a in m], "label": _mono_text(m)}
            for m, c in self.terms.items()
        ]


def apply_axioms(p: OperatorPolynomial, rel: RelationSet) -> OperatorPolynomial:
    """Rewrite every monomial to its normal form under rel."""
    out: Dict[Monomial, sympy.Expr] = {}
    for m, c in p.terms.items():
        n = normalize_monomial(m, rel)
        if n is None:
            continue
        out[n] = out.get(n, ring.ZERO) + c
    return OperatorPolynomial(out)


# ---------------------------------------------------------------------------
# operator-valued series


class OperatorSeries:
    """sum_n P_n u^n with operator polynomial coefficients, exact below u^prec."""

    __slots__ = ("coeffs", "prec", "var")

    def __init__(self, coeffs: Mapping[int, OperatorPolynomial], prec: int, var: str = "u"):
        self.coeffs: Dict[int, OperatorPolynomial] = {
            n: p for n, p in sorted(coeffs.items()) if n < prec and not p.is_zero()
        }
        self.prec = prec
        self.var = var

    def coefficient(self, n: int) -> OperatorPolynomial:
        if n >= self.prec:
            raise ValueError(f"coefficient of {self.var}^{n} is beyond the precision")
        return self.coeffs.get(n, OperatorPolynomial.zero())

    @property
    def valuation(self) -> Optional[int]:
        return min(self.coeffs) if self.coeffs else None

    def __add__(self, other: "OperatorSeries") -> "OperatorSeries":
        out = dict(self.coeffs)
        for n, p in other.coeffs.items():
            out[n] = out.get(n, OperatorPolynomial.zero()) + p
        return OperatorSeries(out, min(self.prec, other.prec), self.var)

    def __mul__(self, other: "OperatorSeries") -> "OperatorSeries":
        va = self.valuation if self.valuation is not None else self.prec
        vb = other.valuation if other.valuation is not None else other.prec
        prec = min(va + other.prec, vb + self.prec)
        out: Dict[int, OperatorPolynomial] = {}
        for i, p in self.coeffs.items():
            for j, q in other.coeffs.items():
                if i + j < prec:
                    out[i + j] = out.get(i + j, OperatorPolynomial.zero()) + p * q
        return OperatorSeries(out, prec, self.var)

    def times_scalar_series(self, s: LaurentSeries) -> "OperatorSeries":
        """Multiply by a scalar Laurent series (scalars commute with operators)."""
        vs = s.valuation if s.valuation is not None else s.prec
        vo = self.valuation if self.valuation is not None else self.prec
        prec = min(vs + self.prec, vo + s.prec)
        out: Dict[int, OperatorPolynomial] = {}
        for i, c in s.coeffs.items():
            for j, p in self.coeffs.items():
                if i + j < prec:
                    out[i + j] = out.get(i + j, OperatorPolynomial.zero()) + p.scale(c)
        return OperatorSeries(out, prec, self.var)

    def map(self, fn) -> "OperatorSeries":
        return OperatorSeries({n: fn(p) for n, p in self.coeffs.items()}, self.prec, self.var)

    def __str__(self) -> str:
        parts = [f"[{p}]*{self.var}^{n}" for n, p in self.coeffs.items()]
        return " + ".join(parts + [f"O({self.var}^{self.prec})"])

    def to_json(self) -> dict:
        return {
            "variable": self.var,
            "precision": self.prec,
            "terms": [{"power": n, "operator": p.to_json()} for n, p in self.coeffs.items()],
        }


# ---------------------------------------------------------------------------
# Taylor expansion along a line


def _derivative_poly(a: OperatorAtom, velocity: Tuple[Q, Q], rel: RelationSet) -> OperatorPolynomial:
    vx, vy = velocity
    terms: Dict[Monomial, sympy.Expr] = {}
    for direction, v in (("x", vx), ("y", vy)):
        if v == 0:
            continue
        d = a.derivative(direction)
        if is_vanishing_derivative(d, rel):
            continue
        terms[(d,)] = ring.lift(v)
    return OperatorPolynomial(terms)


def taylor_expand(
    line: Weight,
    var: str,
    value: Number,
    tc: TorusCharacter,
    w: WeylElement,
    order: int,
    rel: RelationSet,
    word: Optional[str] = None,
    local: str = "u",
) -> OperatorSeries:
    """Expansion of R(line(var), tc, w) in u = var - value, through u^order."""
    if order not in (0, 1):
        raise UnsupportedOrder("operator Taylor expansion is implemented through first order only")
    extra = [v for v in line.variables if v != var]
    if extra:
        raise ValueError(f"line still depends on {', '.join(extra)}")
    point = line.subs({var: Q(value)})
    velocity = line.velocity(var)
    chain = cocycle_split(point, rel.reduce_tc(tc), w, word, rel)

    # walk the chain from the first acting step, transporting the velocity
    velocities: List[Tuple[Q, Q]] = [velocity] * len(chain)
    v = velocity
    for i in range(len(chain) - 1, -1, -1):
        velocities[i] = v
        v = weyl_act_velocity(chain[i].weyl, *v)

    # group into identity steps and maximal runs of the remaining steps
    blocks: List[Tuple[OperatorAtom, Tuple[Q, Q], bool]] = []
    run: List[int] = []

    def flush():
        if run:
            merged = merge_chain([chain[i] for i in run], rel)
            if len(merged) != 1:
                raise AssertionError("a reduced run must merge to a single atom")
            blocks.append((merged[0], velocities[run[-1]], False))
            run.clear()

    for i, a in enumerate(chain):
        if is_identity_atom(a, rel):
            flush()
            blocks.append((a, velocities[i], True))
        else:
            run.append(i)
    flush()

    constants = [OperatorPolynomial.one() if ident else OperatorPolynomial.of(a) for a, _, ident in blocks]

    def product(polys: Iterable[OperatorPolynomial]) -> OperatorPolynomial:
        out = OperatorPolynomial.one()
        for p in polys:
            out = out * p
        return out

    coeffs = {0: apply_axioms(product(constants), rel)}
    if order >= 1:
        first = OperatorPolynomial.zero()
        for k, (a, vel, _ident) in enumerate(blocks):
            pieces = list(constants)
            pieces[k] = _derivative_poly(a, vel, rel)
            first = first + product(pieces)
        coeffs[1] = apply_axioms(first, rel)
    return OperatorSeries(coeffs, order + 1, local)


def expand_atom(
    a: OperatorAtom, var: str, value: Number, order: int, rel: RelationSet, local: str = "u"
) -> OperatorSeries:
    """Taylor expansion of a plain atom whose point is a line in var."""
    if a.is_derivative:
        if order > 0:
            raise UnsupportedOrder("derivative atoms are only evaluated, not expanded")
        p = a.point.subs({var: Q(value)})
        return OperatorSeries({0: apply_axioms(OperatorPolynomial.of(
            OperatorAtom(p, a.char, a.weyl, a.direction)), rel)}, 1, local)
    return taylor_expand(a.point, var, value, a.char, a.weyl, order, rel, local=local)


def expand_polynomial(
    p: OperatorPolynomial, var: str, value: Number, order: int, rel: RelationSet, local: str = "u"
) -> OperatorSeries:
    """Expand every monomial of p (its atoms lie on lines in var)."""
    total = OperatorSeries({}, order + 1, local)
    for m, c in p.terms.items():
        series = OperatorSeries({0: OperatorPolynomial.one().scale(c)}, order + 1, local)
        for a in m:
            series = series * expand_atom(a, var, value, order, rel, local)
        total = total + series
    return total.map(lambda q: apply_axioms(q, rel))
