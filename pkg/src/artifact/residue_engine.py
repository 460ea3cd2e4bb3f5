"""Residues of the Borel constant term along the singular hyperplanes and at points.

The Borel constant term is sum_w r(Lambda, w) R(Lambda, w) with r the
normalizing factor.  A residue path has two steps:

  1. along a hyperplane S_i, with the other coordinate generic.  Only a simple
     pole is allowed; its coefficient is an L-product in the remaining
     coordinate times the operator restricted to the hyperplane;
  2. at a point of that line.  The scalar part is expanded as a Laurent
     series (pole order at most two), the operator part is expanded to first
     order, and the u^-1 coefficient of the product is taken.

Residues depend on the coordinates.  The engine works in the native frame of
each hyperplane and rescales to the (x, y) frame by |det| of the change of
coordinates, so S2 results (native tz frame) and S1/S3 results (native xy)
can be added.  A path multiplicity (1 or 1/2) carries the boundary "half
residue" convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import ring
from .affine import Affine, Number, fmt_rat
from .characters import RelationSet, TorusCharacter, char
from .gk_coefficients import normalizing_factor
from .lseries import (
    UNKNOWN,
    LaurentSeries,
    LProduct,
    LSymbol,
    leading_part,
    order_at,
    product_series,
)
from .operator_algebra import (
    OperatorAtom,
    OperatorPolynomial,
    OperatorSeries,
    apply_axioms,
    expand_polynomial,
)
from .root_data import (
    WEYL_GROUP,
    IDENTITY,
    Root,
    Weight,
    WeylElement,
    is_strictly_negative,
    pairing,
    weyl_act_weight,
)


class UnsupportedPole(ValueError):
    """A pole constellation the engine refuses to guess about."""


# ---------------------------------------------------------------------------
# frames and hyperplanes


@dataclass(frozen=True)
class CoordinateFrame:
    """Coordinates (a, b) with (x, y) = matrix (a, b)."""

    name: str
    variables: Tuple[str, str]
    matrix: Tuple[Tuple[int, int], Tuple[int, int]]

    @property
    def determinant(self) -> Q:
        (p, q), (r, s) = self.matrix
        return Q(p * s - q * r)

    @property
    def jacobian(self) -> Q:
        return abs(self.determinant)

    def weight(self, a: "Affine | Number | None" = None, b: "Affine | Number | None" = None) -> Weight:
        """The weight with coordinates (a, b); defaults to the frame variables."""
        a = Affine.var(self.variables[0]) if a is None else Affine.lift(a)
        b = Affine.var(self.variables[1]) if b is None else Affine.lift(b)
        (p, q), (r, s) = self.matrix
        return Weight(a * p + b * q, a * r + b * s)


XY = CoordinateFrame("xy", ("x", "y"), ((1, 0), (0, 1)))
# Lambda = t a2/2 + z a4/2, so x = z - t and y = z + t
TZ = CoordinateFrame("tz", ("t", "z"), ((-1, 1), (1, 1)))
FRAMES = {"xy": XY, "tz": TZ}


@dataclass(frozen=True)
class Hyperplane:
    """The line var = value inside a frame; `remaining` parametrizes it."""

    name: str
    root: Root
    frame: CoordinateFrame
    var: str
    value: Affine
    remaining: str

    @property
    def level(self) -> Q:
        return Q(1, 2) if self.root.is_long else Q(1)

    def equation(self) -> str:
        """The defining equation <Lambda, root^vee> = level in (x, y)."""
        return f"{pairing(XY.weight(), self.root)} = {fmt_rat(self.level)}"

    def restrict(self, lam: Weight) -> Weight:
        return lam.subs({self.var: self.value})

    def contains(self, lam: Weight) -> bool:
        """Check the hyperplane against its root equation."""
        return pairing(self.restrict(lam), self.root) == self.level


def _sroot(name: str) -> Root:
    return Root(name, 1)


HYPERPLANES: Dict[str, Hyperplane] = {
    "S1": Hyperplane("S1", _sroot("a1"), XY, "x", Affine(1), "y"),
    "S2": Hyperplane("S2", _sroot("a2"), TZ, "t", Affine(Q(1, 2)), "z"),
    "S3": Hyperplane("S3", _sroot("a3"), XY, "y", Affine(1), "x"),
    "S4": Hyperplane("S4", _sroot("a4"), TZ, "z", Affine(Q(1, 2)), "t"),
}

# S2 written directly in (x, y): y = x + 1, parametrized by x
S2_IN_XY = Hyperplane("S2", _sroot("a2"), XY, "y", Affine(1, {"x": 1}), "x")


# ---------------------------------------------------------------------------
# residue along a hyperplane


@dataclass(frozen=True)
class HyperplaneResidue:
    weyl: WeylElement
    order: int
    coefficient: LProduct
    operator: OperatorAtom

    @property
    def is_zero(self) -> bool:
        return self.order > -1 or self.coefficient.is_zero()

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"{self.coefficient} * {self.operator}"

    def to_json(self) -> dict:
        return {
            "weyl": self.weyl.name,
            "order": self.order,
            "coefficient": self.coefficient.to_json() if not self.is_zero else None,
            "operator": None if self.is_zero else self.operator.to_json(),
            "text": str(self),
        }


def residue_along(
    h: Hyperplane,
    w: WeylElement,
    rel: RelationSet,
    tc: TorusCharacter | None = None,
) -> HyperplaneResidue:
    """Res along h of r(Lambda, w) R(Lambda, w), Lambda generic in h's frame."""
    tc = tc or TorusCharacter.of()
    lam = h.frame.weight()
    prod = normalizing_factor(w, lam, tc).as_product()
    order, lead = leading_part(prod, h.var, h.value, rel)
    if order < -1:
        raise UnsupportedPole(f"{w}: pole of order {-order} along {h.name}; only simple poles are handled")
    restricted = h.restrict(lam)
    op = OperatorAtom(restricted, rel.reduce_tc(tc), w)
    if order > -1:
        return HyperplaneResidue(w, order, LProduct(0), op)
    return HyperplaneResidue(w, order, lead.normalize(rel), op)


def hyperplane_residues(
    h: Hyperplane, rel: RelationSet, tc: TorusCharacter | None = None,
    weyls: Iterable[WeylElement] = WEYL_GROUP,
) -> List[HyperplaneResidue]:
    return [residue_along(h, w, rel, tc) for w in weyls]


# ---------------------------------------------------------------------------
# iterated residues


@dataclass(frozen=True)
class ResidueStep:
    """One residue: along a hyperplane or at a value of the remaining variable."""

    target: str  # hyperplane name, or "var=value"
    frame: str
    multiplicity: Q = Q(1)

    def __post_init__(self):
        if self.multiplicity not in (Q(1), Q(1, 2)):
            raise ValueError("multiplicity must be 1 or 1/2")


@dataclass(frozen=True)
class ResiduePath:
    hyperplane: Hyperplane
    value: Q
    multiplicity: Q = Q(1)
    name: str = ""

    def __post_init__(self):
        if Q(self.multiplicity) not in (Q(1), Q(1, 2)):
            raise ValueError("multiplicity must be 1 or 1/2")

    @property
    def steps(self) -> Tuple[ResidueStep, ResidueStep]:
        h = self.hyperplane
        return (
            ResidueStep(h.name, h.frame.name),
            ResidueStep(f"{h.remaining}={fmt_rat(self.value)}", h.frame.name, Q(self.multiplicity)),
        )

    @property
    def point(self) -> Weight:
        h = self.hyperplane
        return h.restrict(h.frame.weight()).subs({h.remaining: self.value})

    @property
    def label(self) -> str:
        text = f"{self.hyperplane.name}:{self.hyperplane.remaining}={fmt_rat(self.value)}"
        if self.multiplicity != 1:
            text += f" (multiplicity {fmt_rat(self.multiplicity)})"
        return text


def parse_path(text: str, multiplicity: Number = 1) -> ResiduePath:
    """Parse "S2:z=1/2"; a known preset name is returned as is."""
    text = text.strip()
    if text in PRESETS and multiplicity == 1:
        return PRESETS[text]
    try:
        hname, point = text.split(":", 1)
        var, value = point.split("=")
    except ValueError:
        raise ValueError(f"cannot parse residue path {text!r}; expected e.g. S2:z=1/2") from None
    if hname not in HYPERPLANES:
        raise ValueError(f"unknown hyperplane {hname!r}")
    h = HYPERPLANES[hname]
    if var.strip() != h.remaining:
        raise ValueError(f"{hname} is parametrized by {h.remaining}, not {var.strip()}")
    return ResiduePath(h, Q(value.strip()), Q(multiplicity), text)


PRESETS: Dict[str, ResiduePath] = {
    "S1:y=2": ResiduePath(HYPERPLANES["S1"], Q(2), name="S1:y=2"),
    "S1:y=1": ResiduePath(HYPERPLANES["S1"], Q(1), name="S1:y=1"),
    "S1:y=0": ResiduePath(HYPERPLANES["S1"], Q(0), name="S1:y=0"),
    "S2:z=1/2": ResiduePath(HYPERPLANES["S2"], Q(1, 2), name="S2:z=1/2"),
    # the point a3/2 lies on the boundary of the deformation along S3, so
    # only half of the full residue is picked up there
    "S3:x=0:half": ResiduePath(HYPERPLANES["S3"], Q(0), Q(1, 2), name="S3:x=0:half"),
}


@dataclass
class WeylTrace:
    weyl: WeylElement
    hyperplane_residue: HyperplaneResidue
    scalar: Optional[LaurentSeries] = None
    operator: Optional[OperatorSeries] = None
    residue: OperatorPolynomial = field(default_factory=OperatorPolynomial.zero)

    def recompute(self) -> OperatorPolynomial:
        """The u^-1 coefficient of scalar * operator, from the stored series."""
        if self.scalar is None or self.operator is None:
            return OperatorPolynomial.zero()
        return self.operator.times_scalar_series(self.scalar).coefficient(-1)

    def to_json(self) -> dict:
        return {
            "weyl": self.weyl.name,
            "hyperplane_residue": self.hyperplane_residue.to_json(),
            "laurent": None if self.scalar is None else self.scalar.to_json(),
            "operator_terms": None if self.operator is None else self.operator.to_json(),
            "residue": self.residue.to_json(),
        }


@dataclass
class ResidueResult:
    path: ResiduePath
    relations: RelationSet
    point: Weight
    total: OperatorPolynomial
    scale: Q
    normalization: str
    per_weyl: List[WeylTrace]

    def contributing(self) -> List[WeylElement]:
        return contributing_weyls(self.total)

    @property
    def square_integrable(self) -> bool:
        return (not self.total.is_zero()) and is_square_integrable(self.point, self.contributing())

    def verify_trace(self) -> bool:
        """Rebuild the total from the per-Weyl Laurent data."""
        rebuilt = OperatorPolynomial.zero()
        for t in self.per_weyl:
            rebuilt = rebuilt + t.recompute()
        rebuilt = apply_axioms(rebuilt.scale(self.scale), self.relations)
        return rebuilt.equals(self.total, self.relations)

    def to_json(self) -> dict:
        return {
            "path": self.path.label,
            "relations": str(self.relations),
            "point": str(self.point),
            "normalization": self.normalization,
            "scale": fmt_rat(self.scale),
            "per_weyl": [t.to_json() for t in self.per_weyl],
            "total": self.total.to_json(),
            "total_text": str(self.total),
            "square_integrable": self.square_integrable,
        }


def _scale(path: ResiduePath, normalization: str) -> Q:
    if normalization not in ("xy", "native"):
        raise ValueError("normalization must be 'xy' or 'native'")
    jac = path.hyperplane.frame.jacobian if normalization == "xy" else Q(1)
    return Q(path.multiplicity) * jac


def iterated_residue(
    path: ResiduePath,
    rel: RelationSet,
    tc: TorusCharacter | None = None,
    normalization: str = "xy",
    weyls: Iterable[WeylElement] = WEYL_GROUP,
) -> ResidueResult:
    """Residue at the path's point of the residue along its hyperplane."""
    rel.check_consistent()
    tc = tc or TorusCharacter.of()
    h = path.hyperplane
    value = Q(path.value)
    scale = _scale(path, normalization)
    traces: List[WeylTrace] = []
    total = OperatorPolynomial.zero()
    for w in weyls:
        hres = residue_along(h, w, rel, tc)
        trace = WeylTrace(w, hres)
        traces.append(trace)
        if hres.is_zero:
            continue
        coeff = hres.coefficient
        # scalar part: exact below u^0 is all the residue needs
        scalar = product_series(coeff, h.remaining, value, 0, rel)
        v = scalar.valuation
        if v is None or v >= 0:
            trace.scalar = scalar
            continue
        if v < -2:
            raise UnsupportedPole(f"{w}: pole of order {-v} at {h.remaining}={fmt_rat(value)}")
        op_order = -1 - v
        operator = expand_polynomial(OperatorPolynomial.of(hres.operator), h.remaining, value, op_order, rel)
        trace.scalar, trace.operator = scalar, operator
        trace.residue = apply_axioms(operator.times_scalar_series(scalar).coefficient(-1), rel)
        total = total + trace.residue
    total = apply_axioms(total.scale(scale), rel)
    return ResidueResult(path, rel, path.point, total, scale, normalization, traces)


def total_residue_at(results: Sequence[ResidueResult]) -> OperatorPolynomial:
    """Sum of several path results at one point (all in the same normalization)."""
    if len({r.normalization for r in results}) > 1:
        raise ValueError("cannot add residues computed in different normalizations")
    out = OperatorPolynomial.zero()
    for r in results:
        out = out + r.total
    rel = results[0].relations if results else RelationSet()
    return apply_axioms(out, rel)


# ---------------------------------------------------------------------------
# square integrability


def monomial_weyl(mono: Sequence[OperatorAtom]) -> WeylElement:
    total = IDENTITY
    # atoms are listed in composition order: the rightmost acts first
    for a in reversed(mono):
        total = a.weyl * total
    return total


def contributing_weyls(p: OperatorPolynomial) -> List[WeylElement]:
    return sorted({monomial_weyl(m) for m in p.monomials()})


def is_square_integrable(point: Weight, contributing: Iterable[WeylElement]) -> bool:
    """Every exponent w(point) must lie strictly in the negative cone."""
    ws = list(contributing)
    if not ws:
        return False
    return all(is_strictly_negative(weyl_act_weight(w, point)) for w in ws)


# ---------------------------------------------------------------------------
# the constant in front of Rx(-a3/2, w1) R(a3/2, w212)


def derivative_constant(result: ResidueResult) -> Dict[str, object]:
    """Write the w212 part as k (a_0 R(w212) - c Rx(w1) R(w212)) and report c.

    c is compared with the two closed forms a_-1/2 and a_-1^2/2.
    """
    r212 = None
    rx = None
    for m in result.total.monomials():
        if len(m) == 1 and m[0].weyl.word == "212" and not m[0].is_derivative:
            r212 = m
        if len(m) == 2 and m[0].direction == "x" and m[0].weyl.word == "1" and m[1].weyl.word == "212":
            rx = m
    if r212 is None or rx is None:
        raise ValueError("result has no R(w212) / Rx(w1)R(w212) pair")
    k = result.total.terms[r212] / ring.A0
    c = ring.canon(-result.total.terms[rx] / k)
    forms = {"a_-1/2": ring.A_M1 / 2, "a_-1^2/2": ring.A_M1 ** 2 / 2}
    matches = [name for name, val in forms.items() if ring.equal(c, val)]
    return {"c": ring.to_str(c), "matches": matches, "prefactor": ring.to_str(k)}


# ---------------------------------------------------------------------------
# one-variable pole scans for the maximal parabolics


@dataclass(frozen=True)
class PolePoint:
    s: Q
    pole_order: int
    condition: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"s": fmt_rat(self.s), "pole_order": self.pole_order, "condition": self.condition,
                "detail": self.detail}


def _siegel_sym2_order(arg: Q, datum) -> int:
    """Order of the completed L(arg, tau, Sym2) at a real arg (declared facts).

    It has simple poles at arg = 1 and arg = 0 exactly when tau is self-dual
    with nontrivial quadratic central character, and no zeros for arg >= 1
    or arg <= 0.
    """
    flag = bool(datum.self_dual and datum.central_character_nontrivial_quadratic)
    if arg in (0, 1):
        return -1 if flag else 0
    return 0


def _siegel_scan(datum) -> List[PolePoint]:
    out = []
    for s in (Q(0), Q(1, 2)):
        num = _siegel_sym2_order(2 * s, datum)
        den = _siegel_sym2_order(2 * s + 1, datum)
        order = num - den
        if order < 0:
            out.append(PolePoint(s, -order, "tau self-dual, central character nontrivial quadratic",
                                 "L(2s,tau,Sym2)/L(2s+1,tau,Sym2)"))
    return out


def _candidates(args: Sequence[Affine], var: str) -> List[Q]:
    pts = set()
    for a in args:
        k = a.coeff(var)
        if k == 0:
            continue
        for target in (0, 1):
            s = (Q(target) - a.const) / k
            if s >= 0:
                pts.add(s)
    return sorted(pts)


def _nonsiegel_scan(datum) -> List[PolePoint]:
    rel: RelationSet = datum.relations
    rel.check_consistent()
    s = Affine.var("s")
    chi = char("chi")
    sq = LProduct.of(LSymbol(2 * s, chi ** 2)) / LProduct.of(LSymbol(2 * s + 1, chi ** 2))
    out: List[PolePoint] = []
    if datum.sigma_type == "ETF":
        theta = chi * char("eta")
        rs = LProduct.of(LSymbol(s - Q(1, 2), theta)) / LProduct.of(LSymbol(s + Q(3, 2), theta))
        full = rs * sq
        args = [f.arg for f, _ in full.factors]
        for s0 in _candidates(args, "s"):
            order = order_at(full, {"s": s0}, rel)
            if order is UNKNOWN:
                continue
            # partial L-function: local factors at the places of S_sigma
            if s0 - Q(1, 2) == 0:
                if rel.is_trivial(theta):
                    order += datum.s_sigma_size
                elif not datum.chi_ne_eta_on_s_sigma:
                    order += 1
            if order < 0:
                out.append(PolePoint(s0, -order, str(rel), "L(s-1/2,chi*eta)L(2s,chi^2)/(L(s+3/2,chi*eta)L(2s+1,chi^2))"))
        return out
    if datum.sigma_type == "Lpi":
        args = [f.arg for f, _ in sq.factors]
        for s0 in sorted(set(_candidates(args, "s")) | {Q(1, 2)}):
            order = order_at(sq, {"s": s0}, rel)
            if order is UNKNOWN:
                continue
            # L(s, chi x pi) is entire; at the center it vanishes unless flagged
            if s0 == Q(1, 2) and not datum.central_value_nonzero:
                order += 1
            if order < 0:
                out.append(PolePoint(s0, -order, str(rel), "L(s,chi x pi)L(2s,chi^2)/(L(s+1,chi x pi)L(2s+1,chi^2))"))
        return out
    raise ValueError(f"unknown sigma type {datum.sigma_type!r}")


def single_var_pole_scan(parabolic: str, datum) -> List[PolePoint]:
    """Poles with Re s >= 0 of the nontrivial constant-term coefficient."""
    if parabolic == "siegel":
        return _siegel_scan(datum)
    if parabolic == "nonsiegel":
        return _nonsiegel_scan(datum)
    raise ValueError(f"no one-variable scan for {parabolic!r}")
