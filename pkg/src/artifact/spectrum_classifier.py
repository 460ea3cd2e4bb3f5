"""Residual-spectrum contributions of the three parabolics.

The two maximal parabolics are decided by one-variable pole scans of their
constant-term coefficient, using the analytic facts declared on the datum.
The Borel case runs the residue engine over every preset path, adds the
results that land on the same point and keeps the nonzero square-integrable
totals.  There is no separate case table here: whatever the engine returns is
the answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Tuple

from .affine import fmt_rat
from .characters import CharacterExpr, RelationSet, TorusCharacter, char
from .operator_algebra import OperatorPolynomial
from .residue_engine import (
    PRESETS,
    ResidueResult,
    contributing_weyls,
    is_square_integrable,
    iterated_residue,
    single_var_pole_scan,
    total_residue_at,
)
from .root_data import BETA1, BETA2, Weight, weyl

Support = Tuple[Tuple[CharacterExpr, Q], ...]


@dataclass(frozen=True)
class SiegelDatum:
    self_dual: bool
    central_character_nontrivial_quadratic: bool
    # names of the unramified characters with tau_v = Ind(chi_v x mu_v), and
    # the relation that makes tau_v self-dual at a typical place
    local_characters: Tuple[str, str] = ("chi", "mu")
    local_relations: RelationSet = field(default_factory=lambda: RelationSet.parse("chi*mu=1"))


@dataclass(frozen=True)
class NonSiegelDatum:
    """chi on GL1 and a cuspidal sigma on Mp2 (ETF_eta or attached to pi by theta).

    sigma_type "ETF" uses s_sigma_size and chi_ne_eta_on_s_sigma; "Lpi" uses
    central_value_nonzero.
    """

    relations: RelationSet
    sigma_type: str
    s_sigma_size: int = 2
    chi_ne_eta_on_s_sigma: bool = False
    central_value_nonzero: bool = False
    # unramified character of pi_v = Ind(mu_v x mu_v^-1), Lpi only
    pi_character: str = "mu"

    def __post_init__(self):
        if self.sigma_type not in ("ETF", "Lpi"):
            raise ValueError(f"sigma_type must be ETF or Lpi, not {self.sigma_type!r}")
        self.relations.check_consistent()
        if self.sigma_type == "ETF":
            if not self.relations.is_trivial(char("eta") ** 2):
                raise ValueError("an ETF datum needs eta^2=1 among its relations")
            if self.s_sigma_size <= 0 or self.s_sigma_size % 2:
                raise ValueError("S_sigma must be nonempty of even cardinality")


@dataclass(frozen=True)
class BorelDatum:
    relations: RelationSet

    def __post_init__(self):
        self.relations.check_consistent()


@dataclass(frozen=True)
class ResidualPoint:
    point: Weight
    conditions: RelationSet
    quotient_label: str
    square_integrable: bool
    source: str
    family: str
    # cuspidal support on the torus: (character, exponent) in the e1, e2 slots
    support: Support = ()
    residue: Optional[OperatorPolynomial] = None
    paths: Tuple[str, ...] = ()
    pole_order: int = 1
    # relations among the local unramified characters (not pole conditions)
    local_relations: RelationSet = field(default_factory=RelationSet)

    def to_json(self) -> dict:
        return {
            "point": str(self.point),
            "conditions": str(self.conditions),
            "quotient_label": self.quotient_label,
            "square_integrable": self.square_integrable,
            "source": self.source,
            "family": self.family,
            "support": [[str(c), fmt_rat(e)] for c, e in self.support],
            "residue": None if self.residue is None else str(self.residue),
            "paths": list(self.paths),
            "pole_order": self.pole_order,
            "local_relations": str(self.local_relations),
        }


EXHAUSTIVENESS_NOTE = (
    "only the listed contributions are computed; exhaustiveness of the list is not checked"
)


# ---------------------------------------------------------------------------


def classify_siegel(d: SiegelDatum) -> List[ResidualPoint]:
    out = []
    chi, mu = (char(n) for n in d.local_characters)
    for pole in single_var_pole_scan("siegel", d):
        if pole.s <= 0:
            continue
        point = BETA2 * pole.s
        si = is_square_integrable(point, [weyl("w212")])
        out.append(ResidualPoint(
            point=point,
            conditions=RelationSet(),
            quotient_label=f"J_P1({fmt_rat(pole.s)},tau)",
            square_integrable=si,
            source="siegel",
            family="S",
            support=((chi, pole.s), (mu, pole.s)),
            pole_order=pole.pole_order,
            local_relations=d.local_relations,
        ))
    return [p for p in out if p.square_integrable]


def _nonsiegel_family(d: NonSiegelDatum, s: Q) -> str:
    if d.sigma_type == "Lpi":
        return "P3"
    return "P1" if d.relations.equal(char("chi"), char("eta")) else "P2"


def classify_nonsiegel(d: NonSiegelDatum) -> List[ResidualPoint]:
    out = []
    chi = char("chi")
    for pole in single_var_pole_scan("nonsiegel", d):
        if pole.s <= 0:
            continue
        point = BETA1 * pole.s
        si = is_square_integrable(point, [weyl("w121")])
        if d.sigma_type == "ETF":
            # the even Weil representation is the quotient at eta|.|^(1/2)
            label = f"J_ETF({fmt_rat(pole.s)},chi x sigma)"
            second = (char("eta"), Q(1, 2))
        else:
            label = f"J_pi({fmt_rat(pole.s)},chi x sigma)"
            second = (char(d.pi_character), Q(0))
        out.append(ResidualPoint(
            point=point,
            conditions=d.relations,
            quotient_label=label,
            square_integrable=si,
            source="nonsiegel",
            family=_nonsiegel_family(d, pole.s),
            support=((chi, pole.s), second),
            pole_order=pole.pole_order,
        ))
    return [p for p in out if p.square_integrable]


def borel_results(d: BorelDatum, normalization: str = "xy") -> Dict[str, ResidueResult]:
    return {name: iterated_residue(path, d.relations, normalization=normalization)
            for name, path in PRESETS.items()}


_BOREL_FAMILIES = {"a1/2 + a3": "B1", "a3/2": "B2"}


def classify_borel(d: BorelDatum) -> List[ResidualPoint]:
    results = borel_results(d)
    grouped: Dict[Weight, List[Tuple[str, ResidueResult]]] = {}
    for name, r in results.items():
        grouped.setdefault(r.point, []).append((name, r))
    tc = TorusCharacter.of()
    out = []
    for point in sorted(grouped, key=lambda w: w.sort_key()):
        entries = grouped[point]
        total = total_residue_at([r for _, r in entries])
        if total.is_zero():
            continue
        si = is_square_integrable(point, contributing_weyls(total))
        if not si:
            continue
        x1, x2 = (c.constant_value() for c in point.e_coords)
        out.append(ResidualPoint(
            point=point,
            conditions=d.relations,
            quotient_label=f"J_B({point},chi x mu)",
            square_integrable=True,
            source="borel",
            family=_BOREL_FAMILIES.get(str(point), "?"),
            support=((tc.first, x1), (tc.second, x2)),
            residue=total,
            paths=tuple(name for name, _ in entries),
        ))
    return out
