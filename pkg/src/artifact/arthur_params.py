"""Unramified Satake parameters for the discrete Arthur-parameter types of Mp4.

A Satake parameter is a diagonal element of Sp4(C).  It is stored as four
entries chi(varpi) |varpi|^e, and conjugacy in Sp4(C) is the action of the
signed permutations on the two inverse pairs.  Character values at the
uniformizer are opaque symbols, so two entries agree when their characters
are equal modulo the relations in force and their exponents coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import permutations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .affine import fmt_rat
from .characters import CharacterExpr, RelationSet, char
from .root_data import Weight

PARAM_TYPES = ("tempered", "soudry", "saito_kurokawa", "hps", "principal")

# the residual families each type is expected to absorb
EXPECTED_FAMILIES: Dict[str, Tuple[str, ...]] = {
    "soudry": ("S",),
    "saito_kurokawa": ("P3",),
    "hps": ("P2", "B2"),
    "principal": ("P1", "B1"),
}

# The Borel family attached to the Howe-Piatetski-Shapiro type is sometimes
# written at the point a3.  The exponents of that point are (1, 1), which do not
# match the type; the residue actually lives at a3/2.
HPS_POINT_NOTE = "the Howe-Piatetski-Shapiro Borel family sits at a3/2; the label a3 does not match"


class NotSymplectic(ValueError):
    pass


class TypeConstraint(ValueError):
    pass


@dataclass(frozen=True)
class SatakeEntry:
    char: CharacterExpr
    exponent: Q

    def inverse(self) -> "SatakeEntry":
        return SatakeEntry(self.char.inverse(), -self.exponent)

    def key(self, rel: RelationSet) -> Tuple[str, Q]:
        return (str(rel.reduce(self.char)), self.exponent)

    def __str__(self) -> str:
        c = str(self.char)
        if self.exponent == 0:
            return f"{c}(w)"
        return f"{c}(w)|w|^{fmt_rat(self.exponent)}"


@dataclass(frozen=True)
class SatakeMultiset:
    entries: Tuple[SatakeEntry, ...]
    relations: RelationSet = field(default_factory=RelationSet)

    def __post_init__(self):
        if len(self.entries) != 4:
            raise ValueError("a Satake parameter of Sp4 has four entries")

    def keys(self) -> List[Tuple[str, Q]]:
        return sorted(e.key(self.relations) for e in self.entries)

    def pairs(self) -> Optional[Tuple[SatakeEntry, SatakeEntry]]:
        """Two representatives x1, x2 such that the entries are x1, x2, x1^-1, x2^-1."""
        rel = self.relations
        e = self.entries
        for i, j, k, l in ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)):
            if e[i].inverse().key(rel) == e[j].key(rel) and e[k].inverse().key(rel) == e[l].key(rel):
                return (e[i], e[k])
        return None

    def is_symplectic(self) -> bool:
        return self.pairs() is not None

    def __str__(self) -> str:
        return "diag(" + ", ".join(str(e) for e in self.entries) + ")"

    def to_json(self) -> dict:
        return {
            "entries": [{"char": str(e.char), "exponent": fmt_rat(e.exponent)} for e in self.entries],
            "relations": str(self.relations),
        }


def _ordered(pair: Tuple[SatakeEntry, SatakeEntry]) -> Tuple[SatakeEntry, ...]:
    x1, x2 = pair
    return (x1, x2, x1.inverse(), x2.inverse())


def signed_permutations() -> List[Tuple[Tuple[int, int], Tuple[bool, bool]]]:
    """The 8 elements: a permutation of the two pairs and an inversion flag for each."""
    return [(p, s) for p in permutations((0, 1)) for s in product((False, True), repeat=2)]


def _act(g, pair: Tuple[SatakeEntry, SatakeEntry]) -> Tuple[SatakeEntry, SatakeEntry]:
    perm, flips = g
    out = []
    for slot in range(2):
        e = pair[perm[slot]]
        out.append(e.inverse() if flips[slot] else e)
    return (out[0], out[1])


def _union(a: RelationSet, b: RelationSet) -> RelationSet:
    return RelationSet(a.relations + b.relations, a.inequations + b.inequations)


def near_equivalent(a: SatakeMultiset, b: SatakeMultiset) -> bool:
    """True iff some signed permutation carries a onto b.

    Both sides are compared modulo the union of their relations; if those
    relations cannot hold together the parameters are not near equivalent.
    """
    pa, pb = a.pairs(), b.pairs()
    if pa is None or pb is None:
        raise NotSymplectic("both Satake parameters must be closed under inversion")
    rel = _union(a.relations, b.relations)
    if not rel.is_consistent():
        return False
    target = [e.key(rel) for e in _ordered(pb)]
    return any([e.key(rel) for e in _ordered(_act(g, pa))] == target for g in signed_permutations())


# ---------------------------------------------------------------------------
# Arthur parameters


@dataclass(frozen=True)
class ArthurParam:
    kind: str
    characters: Tuple[str, ...]
    relations: RelationSet = field(default_factory=RelationSet)

    def __post_init__(self):
        if self.kind not in PARAM_TYPES:
            raise ValueError(f"unknown parameter type {self.kind!r}")

    def describe(self) -> str:
        c = [char(n) for n in self.characters]
        if self.kind == "tempered":
            return "phi (tempered)"
        if self.kind == "soudry":
            return f"phi x S2, phi <-> tau with tau_v = Ind({c[0]} x {c[1]})"
        if self.kind == "saito_kurokawa":
            return f"phi2 x S1 + {c[1]} x S2, pi_v = Ind({c[0]} x {c[0].inverse()})"
        if self.kind == "hps":
            return f"{c[0]} x S2 + {c[1]} x S2"
        return f"{c[0]} x S4"


def _require(rel: RelationSet, ok: bool, what: str) -> None:
    if not ok:
        raise TypeConstraint(f"type constraint violated: {what} (relations: {rel})")


def make_param(kind: str, names: Sequence[str] | None = None, local: RelationSet | str | None = None) -> ArthurParam:
    """Build a parameter and check its type constraints.

    names are the unramified character symbols (two, or one for principal).
    local adds relations among them, such as the self-duality of tau_v.
    """
    local = RelationSet.parse(local) if isinstance(local, str) or local is None else local
    if kind == "principal":
        names = tuple(names or ("chi",))
        own = RelationSet.parse(f"{names[0]}^2=1")
    else:
        default = ("mu", "chi") if kind == "saito_kurokawa" else ("chi", "mu")
        names = tuple(names or default)
        if len(names) != 2:
            raise ValueError(f"{kind} takes two character names")
        a, b = names
        own = {
            "tempered": RelationSet(),
            "soudry": RelationSet() if local.relations else RelationSet.parse(f"{a}*{b}=1"),
            # names are (mu, chi): pi_v = Ind(mu x mu^-1) and the character chi
            "saito_kurokawa": RelationSet.parse(f"{b}^2=1"),
            "hps": RelationSet.parse(f"{a}^2=1, {b}^2=1, {a}!={b}"),
        }[kind]
    rel = _union(own, local)
    if not rel.is_consistent():
        raise TypeConstraint(f"type constraint violated for {kind}: {rel}")
    c = [char(n) for n in names]
    if kind == "soudry":
        # tau_v must be self-dual: {chi, mu} closed under inversion
        ok = (rel.equal(c[0].inverse(), c[1])
              or (rel.is_trivial(c[0] ** 2) and rel.is_trivial(c[1] ** 2)))
        _require(rel, ok, "tau_v self-dual")
    if kind == "hps":
        _require(rel, not rel.is_trivial(c[0] / c[1]), "chi != mu")
    return ArthurParam(kind, names, rel)


def satake_of_param(p: ArthurParam) -> SatakeMultiset:
    c = [char(n) for n in p.characters]
    h, one = Q(1, 2), Q(3, 2)
    if p.kind == "tempered":
        e = [SatakeEntry(c[0], Q(0)), SatakeEntry(c[1], Q(0)),
             SatakeEntry(c[0].inverse(), Q(0)), SatakeEntry(c[1].inverse(), Q(0))]
    elif p.kind == "soudry":
        e = [SatakeEntry(c[0], h), SatakeEntry(c[1], h), SatakeEntry(c[0], -h), SatakeEntry(c[1], -h)]
    elif p.kind == "saito_kurokawa":
        mu, chi = c
        e = [SatakeEntry(chi, h), SatakeEntry(mu, Q(0)), SatakeEntry(mu.inverse(), Q(0)), SatakeEntry(chi, -h)]
    elif p.kind == "hps":
        chi, mu = c
        e = [SatakeEntry(chi, h), SatakeEntry(mu, h), SatakeEntry(mu.inverse(), -h), SatakeEntry(chi, -h)]
    else:
        chi = c[0]
        e = [SatakeEntry(chi, one), SatakeEntry(chi, h), SatakeEntry(chi, -h), SatakeEntry(chi, -one)]
    out = SatakeMultiset(tuple(e), p.relations)
    if not out.is_symplectic():
        raise NotSymplectic(f"{p.kind}: {out} is not closed under inversion")
    return out


# ---------------------------------------------------------------------------
# residual quotients


def _rename_char(c: CharacterExpr, names: Mapping[str, str]) -> CharacterExpr:
    out: Dict[str, int] = {}
    for k, v in c.exponents.items():
        k = names.get(k, k)
        out[k] = out.get(k, 0) + v
    return CharacterExpr(out)


def _rename_rel(rel: RelationSet, names: Mapping[str, str]) -> RelationSet:
    return RelationSet([_rename_char(r, names) for r in rel.relations],
                       [_rename_char(e, names) for e in rel.inequations])


def satake_of_quotient(rp, names: Mapping[str, str] | None = None) -> SatakeMultiset:
    """Satake parameter of the unramified Langlands quotient of a residual point.

    rp.support lists the torus exponent (character, e) in each of the two
    slots; the parameter is those two entries and their inverses.
    """
    names = dict(names or {})
    entries = []
    for c, e in rp.support:
        entries.append(SatakeEntry(_rename_char(c, names), Q(e)))
    entries += [x.inverse() for x in list(entries)]
    rel = _union(_rename_rel(rp.conditions, names), _rename_rel(rp.local_relations, names))
    return SatakeMultiset(tuple(entries), rel)


def satake_at_point(point: Weight, chars: Tuple[str, str], rel: RelationSet | None = None) -> SatakeMultiset:
    """Satake parameter attached to a Borel point and a pair of characters."""
    x1, x2 = (c.constant_value() for c in point.e_coords)
    a, b = char(chars[0]), char(chars[1])
    e = (SatakeEntry(a, x1), SatakeEntry(b, x2), SatakeEntry(a.inverse(), -x1), SatakeEntry(b.inverse(), -x2))
    return SatakeMultiset(e, rel or RelationSet())


def quotient_names(rp) -> Dict[str, str]:
    """Rename the second inducing character to mu, so every family uses (chi, mu)."""
    second = rp.support[1][0].symbols
    if len(second) == 1 and second[0] != "mu":
        return {second[0]: "mu"}
    return {}


def _default_param(kind: str, rp) -> ArthurParam:
    if kind == "soudry":
        return make_param(kind, ("chi", "mu"), _rename_rel(rp.local_relations, quotient_names(rp)))
    return make_param(kind)


def matching_types(rp) -> List[str]:
    """All non-tempered types whose Satake parameter matches the quotient's."""
    q = satake_of_quotient(rp, quotient_names(rp))
    out = []
    for kind in PARAM_TYPES[1:]:
        try:
            p = _default_param(kind, rp)
        except TypeConstraint:
            continue
        if near_equivalent(q, satake_of_param(p)):
            out.append(kind)
    return out
