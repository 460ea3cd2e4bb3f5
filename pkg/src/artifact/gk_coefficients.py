"""Gindikin-Karpelevich coefficients on the double cover and their normalizations.

For w in the Weyl group the unramified coefficient of M(Lambda, chi x mu, w)
is a product over the inversion set {beta > 0 : w beta < 0}.  A short root
contributes L(n, theta)/L(n + 1, theta), where n = <Lambda, beta^vee> and
theta = (chi x mu) o beta^vee.  A long root contributes the doubled version
L(2n, theta^2)/L(2n + 1, theta^2).  The normalizing factor carries an extra
eps(argument, character) in each denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .affine import Affine
from .characters import RelationSet, TorusCharacter, char_on_coroot
from .lseries import EpsSymbol, LProduct, LSymbol
from .root_data import (
    BETA1,
    BETA2,
    IDENTITY,
    WEYL_GROUP,
    Root,
    Weight,
    WeylElement,
    inversion_set,
    pairing,
    sorted_roots,
    weyl,
)


@dataclass(frozen=True)
class GKFactor:
    root: Root
    numerator: LSymbol
    denominator: LSymbol
    epsilon: Optional[EpsSymbol] = None

    def as_product(self) -> LProduct:
        factors: Dict = {self.numerator: 1}
        factors[self.denominator] = factors.get(self.denominator, 0) - 1
        if self.epsilon is not None:
            factors[self.epsilon] = factors.get(self.epsilon, 0) - 1
        return LProduct(1, factors)

    def __str__(self) -> str:
        den = str(self.denominator)
        if self.epsilon is not None:
            den = f"{den}*{self.epsilon}"
        return f"{self.numerator}/({den})"

    def to_json(self) -> dict:
        return {
            "root": str(self.root),
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "epsilon": None if self.epsilon is None else str(self.epsilon),
        }


@dataclass(frozen=True)
class GKProduct:
    """An ordered product of rank-one factors (order a1, a2, a3, a4)."""

    factors: Tuple[GKFactor, ...] = ()

    def as_product(self) -> LProduct:
        out = LProduct()
        for f in self.factors:
            out = out * f.as_product()
        return out

    def __mul__(self, other: "GKProduct") -> "GKProduct":
        return GKProduct(self.factors + other.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def equals(self, other: "GKProduct", rel: RelationSet | None = None) -> bool:
        return self.as_product().equals(other.as_product(), rel or RelationSet())

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(str(f) for f in self.factors)

    def to_json(self) -> list:
        return [f.to_json() for f in self.factors]


def rank_one_factor(lam: Weight, tc: TorusCharacter, beta: Root, normalized: bool = False) -> GKFactor:
    n = pairing(lam, beta)
    theta = char_on_coroot(tc, beta)
    if beta.is_long:
        n = n * 2
        theta = theta ** 2
    eps = EpsSymbol(n, theta) if normalized else None
    return GKFactor(beta, LSymbol(n, theta), LSymbol(n + 1, theta), eps)


def gk_product(w: WeylElement, lam: Weight, tc: TorusCharacter) -> GKProduct:
    """The unramified coefficient of M(lam, tc, w)."""
    return GKProduct(tuple(rank_one_factor(lam, tc, b) for b in sorted_roots(inversion_set(w))))


def normalizing_factor(w: WeylElement, lam: Weight, tc: TorusCharacter) -> GKProduct:
    """r(lam, tc, w): the coefficient with an eps in every denominator."""
    return GKProduct(
        tuple(rank_one_factor(lam, tc, b, normalized=True) for b in sorted_roots(inversion_set(w)))
    )


# ---------------------------------------------------------------------------
# constant terms

PARABOLIC_WEYL_SETS: Dict[str, Tuple[WeylElement, ...]] = {
    "siegel": (IDENTITY, weyl("w212")),
    "nonsiegel": (IDENTITY, weyl("w121")),
    "borel": WEYL_GROUP,
}


def default_weight(parabolic: str, var: str = "s") -> Weight:
    s = Affine.var(var)
    if parabolic == "siegel":
        return BETA2 * s
    if parabolic == "nonsiegel":
        return BETA1 * s
    if parabolic == "borel":
        return Weight(Affine.var("x"), Affine.var("y"))
    raise ValueError(f"unknown parabolic {parabolic!r}")


def constant_term(
    parabolic: str,
    lam: Weight | None = None,
    tc: TorusCharacter | None = None,
    normalized: bool = False,
) -> List[Tuple[WeylElement, GKProduct]]:
    """One (w, coefficient) pair per w in the parabolic's Weyl set."""
    try:
        ws = PARABOLIC_WEYL_SETS[parabolic]
    except KeyError:
        raise ValueError(f"unknown parabolic {parabolic!r}") from None
    lam = lam if lam is not None else default_weight(parabolic)
    tc = tc if tc is not None else TorusCharacter.of()
    build = normalizing_factor if normalized else gk_product
    return [(w, build(w, lam, tc)) for w in ws]


# ---------------------------------------------------------------------------
# recognizing the unramified Sym^2 and Rankin-Selberg factors


def _ratio_args(f: GKFactor) -> Tuple[Affine, Affine]:
    return f.numerator.arg, f.denominator.arg


def sym2_ratio_text(prod: GKProduct, tc: TorusCharacter, rep: str = "tau") -> Optional[str]:
    """Render prod as L(n,rep,Sym2)/L(n+1,rep,Sym2) when its three factors are
    exactly the unramified Sym^2 characters mu^2, chi*mu, chi^2 of rep at a
    common argument; return None otherwise."""
    chi, mu = tc.first, tc.second
    wanted = sorted(str(c) for c in (mu ** 2, chi * mu, chi ** 2))
    if len(prod) != 3:
        return None
    args = {(_ratio_args(f)) for f in prod.factors}
    if len(args) != 1 or any(f.epsilon is not None for f in prod.factors):
        return None
    if sorted(str(f.numerator.char) for f in prod.factors) != wanted:
        return None
    num, den = args.pop()
    return f"L({num},{rep},Sym2)/L({den},{rep},Sym2)"


def rankin_selberg_split(prod: GKProduct, tc: TorusCharacter) -> Optional[Dict[str, List[GKFactor]]]:
    """Split a w121 coefficient into the chi x sigma part (characters chi*mu and
    chi*mu^-1, same argument) and the chi^2 part."""
    chi, mu = tc.first, tc.second
    rs = [f for f in prod.factors if f.numerator.char in (chi * mu, chi / mu)]
    sq = [f for f in prod.factors if f.numerator.char == chi ** 2]
    if len(rs) != 2 or len(sq) != 1 or len(prod) != 3:
        return None
    if rs[0].numerator.arg != rs[1].numerator.arg:
        return None
    return {"chi_x_sigma": rs, "chi_squared": sq}
