from fractions import Fraction as Q

import pytest

from artifact.affine import Affine
from artifact.characters import RelationSet, TorusCharacter
from artifact.operator_algebra import (
    OperatorAtom,
    OperatorPolynomial,
    UnsupportedOrder,
    apply_axioms,
    atom,
    cocycle_split,
    is_identity_atom,
    merge_chain,
    taylor_expand,
)
from artifact.root_data import WEYL_GROUP, Weight, reduced_words, weyl

TC = TorusCharacter.of()
B1 = RelationSet.parse("chi=mu, chi^2=1")
NONE = RelationSet()
x, y = Affine.var("x"), Affine.var("y")


def test_identity_rule_needs_both_conditions():
    on_a3 = Weight(0, Q(3))
    assert is_identity_atom(atom(on_a3, TC, "w1", B1), B1)
    only_equal = RelationSet.parse("chi=mu")
    assert not is_identity_atom(atom(on_a3, TC, "w1", only_equal), only_equal)
    assert not is_identity_atom(atom(Weight(1, 3), TC, "w1", B1), B1)
    on_a4 = Weight(Q(2), Q(2))
    assert is_identity_atom(atom(on_a4, TC, "w2", B1), B1)


def test_identity_atoms_disappear():
    p = OperatorPolynomial.of(atom(Weight(0, 2), TC, "w1", B1))
    assert apply_axioms(p, B1).equals(OperatorPolynomial.one())


def test_derivative_along_identity_family_vanishes():
    d = atom(Weight(0, 2), TC, "w1", B1, direction="y")
    assert apply_axioms(OperatorPolynomial.of(d), B1).is_zero()
    dx = atom(Weight(0, 2), TC, "w1", B1, direction="x")
    assert not apply_axioms(OperatorPolynomial.of(dx), B1).is_zero()


@pytest.mark.parametrize("w", WEYL_GROUP, ids=str)
def test_cocycle_split_merges_back(w):
    lam = Weight(x, y)
    for word in reduced_words(w) if w.length else [""]:
        chain = cocycle_split(lam, TC, w, word if w.length else None)
        assert len(chain) == w.length
        if w.length:
            assert merge_chain(chain, NONE) == [OperatorAtom(lam, TC, w)]


def test_bad_reduced_word():
    with pytest.raises(ValueError):
        cocycle_split(Weight(x, y), TC, weyl("w12"), "21")


def test_composition_with_additive_length():
    lam = Weight(x, y)
    first = OperatorAtom(lam, TC, weyl("w2"))
    second = OperatorAtom(first.target_point, first.target_char, weyl("w1"))
    composed = apply_axioms(OperatorPolynomial.of(second, first), NONE)
    assert composed.equals(OperatorPolynomial.of(OperatorAtom(lam, TC, weyl("w12"))))


def test_polynomial_arithmetic():
    a = OperatorPolynomial.of(OperatorAtom(Weight(x, y), TC, weyl("w1")), coeff=2)
    assert (a - a).is_zero()
    assert str(a) == "(2)*R(x*a1/2 + y*a3/2,w1)"
    assert (a * OperatorPolynomial.one()).equals(a)


def test_first_order_expansion_generic():
    series = taylor_expand(Weight(x, 1), "x", 1, TC, weyl("w12"), 1, NONE)
    point = Weight(1, 1)
    assert series.coefficient(0).equals(OperatorPolynomial.of(OperatorAtom(point, TC, weyl("w12"))))
    assert series.coefficient(1).equals(
        OperatorPolynomial.of(OperatorAtom(point, TC, weyl("w12"), "x")))


def test_first_order_expansion_through_identity_step():
    across = taylor_expand(Weight(x, 2), "x", 0, TC, weyl("w1"), 1, B1)
    assert across.coefficient(0).equals(OperatorPolynomial.one())
    assert across.coefficient(1).equals(OperatorPolynomial.of(atom(Weight(0, 2), TC, "w1", B1, "x")))
    along = taylor_expand(Weight(0, y), "y", 2, TC, weyl("w1"), 1, B1)
    assert along.coefficient(1).is_zero()


def test_higher_orders_are_refused():
    with pytest.raises(UnsupportedOrder):
        taylor_expand(Weight(x, 1), "x", 1, TC, weyl("w1"), 2, NONE)
