"""Formal unitary characters: products of named symbols modulo relations.

A character expression is an exponent vector over symbol names.  Relations
"expr = 1" generate a subgroup of the free abelian group on the symbols, and
the normal form of an expression is its reduction against the Hermite normal
form of that subgroup, so it does not depend on the order in which the
relations were written.  Inequations such as chi != mu are side constraints:
they can make a relation set inconsistent but never rewrite anything.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .root_data import Root, WeylElement


class CharacterSyntaxError(ValueError):
    pass


class InconsistentRelations(ValueError):
    pass


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class CharacterExpr:
    """A formal product of symbols with integer exponents."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exps: Mapping[str, int] | None = None):
        self._exps: Tuple[Tuple[str, int], ...] = tuple(
            sorted((k, int(v)) for k, v in (exps or {}).items() if v)
        )
        self._hash = hash(self._exps)

    @classmethod
    def symbol(cls, name: str) -> "CharacterExpr":
        return cls({name: 1})

    @classmethod
    def parse(cls, text: str) -> "CharacterExpr":
        text = text.strip()
        if text in ("1", ""):
            return TRIVIAL
        exps: Dict[str, int] = {}
        for factor in text.split("*"):
            factor = factor.strip()
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?", factor)
            if not m:
                raise CharacterSyntaxError(f"bad character factor {factor!r}")
            exps[m.group(1)] = exps.get(m.group(1), 0) + int(m.group(2) or 1)
        return cls(exps)

    @property
    def exponents(self) -> Dict[str, int]:
        return dict(self._exps)

    @property
    def symbols(self) -> Tuple[str, ...]:
        return tuple(k for k, _ in self._exps)

    def is_identity(self) -> bool:
        return not self._exps

    def __mul__(self, other: "CharacterExpr") -> "CharacterExpr":
        exps = dict(self._exps)
        for k, v in other._exps:
            exps[k] = exps.get(k, 0) + v
        return CharacterExpr(exps)

    def __pow__(self, n: int) -> "CharacterExpr":
        return CharacterExpr({k: v * n for k, v in self._exps})

    def inverse(self) -> "CharacterExpr":
        return self ** -1

    def __truediv__(self, other: "CharacterExpr") -> "CharacterExpr":
        return self * other.inverse()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CharacterExpr) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "CharacterExpr") -> bool:
        return self._exps < other._exps

    def __str__(self) -> str:
        if not self._exps:
            return "1"
        return "*".join(k if v == 1 else f"{k}^{v}" for k, v in self._exps)

    def __repr__(self) -> str:
        return f"CharacterExpr({self})"


TRIVIAL = CharacterExpr()


def char(text: str) -> CharacterExpr:
    return CharacterExpr.parse(text)


@dataclass(frozen=True)
class TorusCharacter:
    """chi (x) mu on the torus t(a, b).

    The genuine twist of the covering torus is a formal marker only.
    """

    first: CharacterExpr
    second: CharacterExpr
    genuine: bool = field(default=True, compare=False)

    @classmethod
    def of(cls, first: str = "chi", second: str = "mu") -> "TorusCharacter":
        return cls(CharacterExpr.parse(first), CharacterExpr.parse(second))

    def __str__(self) -> str:
        return f"({self.first}, {self.second})"

    def sort_key(self) -> tuple:
        return (str(self.first), str(self.second))


def char_on_coroot(tc: TorusCharacter, r: Root) -> CharacterExpr:
    """The character a -> tc(r^vee(a)) for a positive root r."""
    if not r.positive:
        raise ValueError("char_on_coroot expects a positive root")
    b1, b2 = r.coroot_e_coords
    return (tc.first ** int(b1)) * (tc.second ** int(b2))


def weyl_act_char(w: WeylElement, tc: TorusCharacter) -> TorusCharacter:
    """Transport a torus character by w (same linear map as on weights)."""
    m = w.matrix
    return TorusCharacter(
        (tc.first ** m[0][0]) * (tc.second ** m[0][1]),
        (tc.first ** m[1][0]) * (tc.second ** m[1][1]),
    )


# ---------------------------------------------------------------------------
# relations


def _hnf(rows: List[List[int]], ncols: int) -> List[Tuple[int, List[int]]]:
    """Hermite normal form; returns (pivot column, row) pairs in order."""
    rows = [list(r) for r in rows if any(r)]
    pivots: List[Tuple[int, List[int]]] = []
    for col in range(ncols):
        active = [r for r in rows if r[col] != 0]
        if not active:
            continue
        rest = [r for r in rows if r[col] == 0]
        # Euclid on the active rows until one survives in this column
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head = active[0]
            reduced = [head]
            for r in active[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                if r[col] != 0:
                    reduced.append(r)
                elif any(r):
                    rest.append(r)
            active = reduced
        pivot = active[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        pivots.append((col, pivot))
        rows = rest
    # reduce entries above each pivot
    for i, (col, row) in enumerate(pivots):
        d = row[col]
        for j in range(i):
            cj, rj = pivots[j]
            q = rj[col] // d
            if q:
                pivots[j] = (cj, [a - q * b for a, b in zip(rj, row)])
    return pivots


def _side(text: str) -> CharacterExpr:
    text = re.sub(r"\s+", "", text)
    if not text:
        raise CharacterSyntaxError("empty side in relation")
    return CharacterExpr.parse(text)


class RelationSet:
    """A frozen set of relations "expr = 1" plus inequations "a != b"."""

    def __init__(
        self,
        relations: Iterable[CharacterExpr] = (),
        inequations: Iterable[CharacterExpr] = (),
        symbols: Sequence[str] = (),
    ):
        self.relations: Tuple[CharacterExpr, ...] = tuple(r for r in relations if not r.is_identity())
        self.inequations: Tuple[CharacterExpr, ...] = tuple(inequations)
        names = set(symbols)
        for e in self.relations + self.inequations:
            names.update(e.symbols)
        # later names are eliminated first, so chi survives mu when chi = mu
        self._columns: Tuple[str, ...] = tuple(sorted(names, reverse=True))
        idx = {n: i for i, n in enumerate(self._columns)}
        vectors = []
        for r in self.relations:
            v = [0] * len(self._columns)
            for k, e in r.exponents.items():
                v[idx[k]] = e
            vectors.append(v)
        self._pivots = _hnf(vectors, len(self._columns))

    @classmethod
    def parse(cls, text: str | None) -> "RelationSet":
        """Parse the DSL: comma separated `x^n=1`, `x=y` or `x!=y`.

        Either side may also be any product such as `chi*mu^-1`.
        """
        relations: List[CharacterExpr] = []
        inequations: List[CharacterExpr] = []
        if not text or text.strip() in ("", "none"):
            return cls()
        for raw in text.split(","):
            part = raw.strip()
            if not part:
                continue
            if "!=" in part:
                lhs, rhs = part.split("!=", 1)
                inequations.append(_side(lhs) / _side(rhs))
                continue
            if part.count("=") == 1:
                lhs, rhs = part.split("=")
                relations.append(_side(lhs) / _side(rhs))
                continue
            raise CharacterSyntaxError(f"cannot parse relation {part!r}")
        return cls(relations, inequations)

    def _vector(self, e: CharacterExpr) -> List[int] | None:
        v = [0] * len(self._columns)
        for k, x in e.exponents.items():
            if k not in self._columns:
                return None
            v[self._columns.index(k)] = x
        return v

    def reduce(self, e: CharacterExpr) -> CharacterExpr:
        exps = e.exponents
        inside = {k: x for k, x in exps.items() if k in self._columns}
        outside = {k: x for k, x in exps.items() if k not in self._columns}
        v = [inside.get(n, 0) for n in self._columns]
        for col, row in self._pivots:
            q = v[col] // row[col]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        out = dict(outside)
        out.update({n: x for n, x in zip(self._columns, v) if x})
        return CharacterExpr(out)

    def reduce_tc(self, tc: TorusCharacter) -> TorusCharacter:
        return TorusCharacter(self.reduce(tc.first), self.reduce(tc.second), tc.genuine)

    def is_trivial(self, e: CharacterExpr) -> bool:
        return self.reduce(e).is_identity()

    def equal(self, a: CharacterExpr, b: CharacterExpr) -> bool:
        return self.is_trivial(a / b)

    def violated_inequations(self) -> List[CharacterExpr]:
        return [e for e in self.inequations if self.is_trivial(e)]

    def is_consistent(self) -> bool:
        return not self.violated_inequations()

    def check_consistent(self) -> None:
        bad = self.violated_inequations()
        if bad:
            raise InconsistentRelations(
                "relations force " + ", ".join(f"{e} = 1" for e in bad) + " against an inequation"
            )

    def entails(self, e: CharacterExpr) -> bool:
        """True when e = 1 follows from the relations."""
        return self.is_trivial(e)

    def with_relations(self, extra: Iterable[CharacterExpr]) -> "RelationSet":
        return RelationSet(self.relations + tuple(extra), self.inequations)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RelationSet)
            and self._pivots == other._pivots
            and self._columns == other._columns
            and set(self.inequations) == set(other.inequations)
        )

    def __repr__(self) -> str:
        if not self.relations and not self.inequations:
            return "RelationSet()"
        return f"RelationSet.parse({str(self)!r})"

    def __hash__(self) -> int:
        return hash((tuple((c, tuple(r)) for c, r in self._pivots), self._columns))

    def __str__(self) -> str:
        parts = [f"{r}=1" for r in self.relations]
        parts += [f"{e}!=1" for e in self.inequations]
        return ", ".join(parts) if parts else "none"


def relations(text: str | None = None) -> RelationSet:
    return RelationSet.parse(text)


def is_trivial(e: CharacterExpr, rel: RelationSet) -> bool:
    return rel.is_trivial(e)
