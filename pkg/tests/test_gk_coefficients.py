from fractions import Fraction as Q

import pytest

from artifact.affine import Affine
from artifact.characters import CharacterExpr, RelationSet, TorusCharacter
from artifact.gk_coefficients import (
    constant_term,
    gk_product,
    normalizing_factor,
    rankin_selberg_split,
    sym2_ratio_text,
)
from artifact.lseries import EpsSymbol, LProduct, LSymbol
from artifact.root_data import BETA1, BETA2, WEYL_GROUP, Weight, weyl

from test_root_data import COROOT, E, act_word

x, y, s = Affine.var("x"), Affine.var("y"), Affine.var("s")
TC = TorusCharacter.of()
POSITIVE = set(E.values())


def oracle(word, p, q, normalized=False):
    """Product over {beta > 0 : w beta < 0} written from coroot coordinates."""
    factors = {}
    for name, e in E.items():
        if act_word(word, e) in POSITIVE:
            continue
        c = COROOT[name]
        n = p * c[0] + q * c[1]
        theta = CharacterExpr({"chi": c[0], "mu": c[1]})
        if name in ("a2", "a4"):
            n, theta = 2 * n, theta ** 2
        for f, k in ((LSymbol(n, theta), 1), (LSymbol(n + 1, theta), -1)):
            factors[f] = factors.get(f, 0) + k
        if normalized:
            eps = EpsSymbol(n, theta)
            factors[eps] = factors.get(eps, 0) - 1
    return LProduct(1, factors)


@pytest.mark.parametrize("w", WEYL_GROUP, ids=str)
def test_coefficient_matches_oracle(w):
    lam = Weight(x, y)
    p, q = lam.e_coords
    assert gk_product(w, lam, TC).as_product().equals(oracle(w.word, p, q), RelationSet())
    assert normalizing_factor(w, lam, TC).as_product().equals(oracle(w.word, p, q, True), RelationSet())
    assert len(gk_product(w, lam, TC)) == w.length


def test_identity_has_trivial_coefficient():
    assert str(gk_product(weyl("1"), Weight(x, y), TC)) == "1"


def test_siegel_rendering():
    prod = gk_product(weyl("w212"), BETA2 * s, TC)
    assert sym2_ratio_text(prod, TC) == "L(2*s,tau,Sym2)/L(2*s + 1,tau,Sym2)"
    assert sym2_ratio_text(gk_product(weyl("w121"), BETA1 * s, TC), TC) is None


def test_nonsiegel_split():
    prod = gk_product(weyl("w121"), BETA1 * s, TC)
    split = rankin_selberg_split(prod, TC)
    assert [str(f.numerator) for f in split["chi_x_sigma"]] == ["L(s,chi*mu^-1)", "L(s,chi*mu)"]
    assert [str(f.numerator) for f in split["chi_squared"]] == ["L(2*s,chi^2)"]


def test_constant_terms():
    assert [w.name for w, _ in constant_term("siegel")] == ["1", "w212"]
    assert [w.name for w, _ in constant_term("nonsiegel")] == ["1", "w121"]
    assert len(constant_term("borel")) == 8
    with pytest.raises(ValueError):
        constant_term("mirabolic")


def test_specialization_at_a_point():
    lam = Weight(Q(1), Q(2))
    prod = gk_product(weyl("w1"), lam, TC)
    assert str(prod.factors[0].numerator) == "L(1,chi*mu^-1)"
