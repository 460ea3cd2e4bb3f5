from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.characters import (
    CharacterExpr,
    CharacterSyntaxError,
    InconsistentRelations,
    RelationSet,
    TorusCharacter,
    char,
    char_on_coroot,
    weyl_act_char,
)
from artifact.root_data import WEYL_GROUP, Root, weyl

NAMES = ("chi", "mu", "eta")
MODULUS = 60


def entailed_by_brute_force(rels, e):
    """e = 1 follows iff it holds for every Z/60-valued assignment killing the relations.

    Exponents stay small, so 60 separates everything a test can produce.
    """
    for values in product(range(MODULUS), repeat=len(NAMES)):
        val = dict(zip(NAMES, values))

        def ev(c):
            return sum(val[k] * x for k, x in c.exponents.items()) % MODULUS

        if all(ev(r) == 0 for r in rels) and ev(e) != 0:
            return False
    return True


def test_parse_and_print():
    c = char("chi*mu^-1*chi")
    assert c.exponents == {"chi": 2, "mu": -1}
    assert str(c) == "chi^2*mu^-1"
    assert char("1").is_identity()
    assert char("chi") * char("chi").inverse() == char("1")
    with pytest.raises(CharacterSyntaxError):
        char("chi^x")


def test_relation_dsl():
    rel = RelationSet.parse("chi=mu, chi^2=1")
    assert rel.equal(char("chi"), char("mu"))
    assert rel.is_trivial(char("mu^2"))
    assert not rel.is_trivial(char("chi"))
    assert RelationSet.parse("none") == RelationSet.parse("") == RelationSet()
    assert RelationSet.parse("chi*mu=1").equal(char("chi").inverse(), char("mu"))
    with pytest.raises(CharacterSyntaxError):
        RelationSet.parse("chi")


def test_later_names_are_eliminated_first():
    rel = RelationSet.parse("chi=mu")
    assert rel.reduce(char("mu")) == char("chi")
    assert rel.reduce(char("chi*mu")) == char("chi^2")


def test_closed_world():
    # nothing beyond the stated relations is assumed
    rel = RelationSet.parse("chi^2=1")
    assert not rel.is_trivial(char("mu^2"))
    assert not rel.is_trivial(char("chi^4*mu"))
    assert rel.is_trivial(char("chi^4"))


def test_inequations():
    rel = RelationSet.parse("chi^2=1, mu^2=1, chi!=mu")
    assert rel.is_consistent()
    bad = RelationSet.parse("chi=mu, chi!=mu")
    assert not bad.is_consistent()
    with pytest.raises(InconsistentRelations):
        bad.check_consistent()


def test_equality_ignores_presentation():
    assert RelationSet.parse("chi=mu, chi^2=1") == RelationSet.parse("mu^2=1, chi*mu^-1=1")
    assert hash(RelationSet.parse("chi=mu, chi^2=1")) == hash(RelationSet.parse("mu^2=1, chi=mu"))


small = st.dictionaries(st.sampled_from(NAMES), st.integers(-3, 3), max_size=3).map(CharacterExpr)


@settings(max_examples=25, deadline=None)
@given(st.lists(small, max_size=2), small)
def test_entailment_matches_brute_force(rels, e):
    assert RelationSet(rels).is_trivial(e) == entailed_by_brute_force(rels, e)


def test_character_on_coroots():
    tc = TorusCharacter.of()
    assert char_on_coroot(tc, Root.parse("a1")) == char("chi*mu^-1")
    assert char_on_coroot(tc, Root.parse("a3")) == char("chi*mu")
    assert char_on_coroot(tc, Root.parse("a2")) == char("mu")
    assert char_on_coroot(tc, Root.parse("a4")) == char("chi")


def test_weyl_action_on_characters():
    tc = TorusCharacter.of()
    assert weyl_act_char(weyl("w1"), tc) == TorusCharacter(char("mu"), char("chi"))
    assert weyl_act_char(weyl("w2"), tc) == TorusCharacter(char("chi"), char("mu^-1"))
    for w in WEYL_GROUP:
        assert weyl_act_char(w.inverse(), weyl_act_char(w, tc)) == tc
