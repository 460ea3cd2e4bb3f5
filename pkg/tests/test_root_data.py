from fractions import Fraction as Q
from itertools import product

import pytest

from artifact.affine import Affine
from artifact.root_data import (
    BETA1,
    BETA2,
    IDENTITY,
    LONGEST,
    POSITIVE_ROOTS,
    WEYL_GROUP,
    Root,
    Weight,
    WeylElement,
    basis_weight,
    from_word,
    inversion_set,
    is_strictly_negative,
    pairing,
    reduced_words,
    root_from_e,
    torus_conjugation,
    weyl,
    weyl_act_root,
    weyl_act_velocity,
    weyl_act_weight,
    weyl_table,
)

# e-coordinates and coroots written out by hand
E = {"a1": (1, -1), "a2": (0, 2), "a3": (1, 1), "a4": (2, 0)}
COROOT = {"a1": (1, -1), "a2": (0, 1), "a3": (1, 1), "a4": (1, 0)}


def reflect(v, name):
    """s_alpha(v) = v - <v, alpha^vee> alpha in e-coordinates."""
    a, c = E[name], COROOT[name]
    n = v[0] * c[0] + v[1] * c[1]
    return (v[0] - n * a[0], v[1] - n * a[1])


def act_word(word, v):
    for letter in reversed(word):
        v = reflect(v, "a" + letter)
    return v


def test_eight_elements_with_expected_lengths():
    assert len(WEYL_GROUP) == 8
    assert sorted(w.length for w in WEYL_GROUP) == [0, 1, 1, 2, 2, 3, 3, 4]
    assert IDENTITY.length == 0 and LONGEST.length == 4


def test_root_images_match_reflection_oracle():
    for w in WEYL_GROUP:
        for r in POSITIVE_ROOTS:
            img = weyl_act_root(w, r)
            assert img.e_coords == act_word(w.word, E[r.name])


def test_weight_action_matches_reflection_oracle():
    v = Weight.from_e(Q(3, 7), Q(-2, 5))
    for w in WEYL_GROUP:
        p, q = weyl_act_weight(w, v).e_coords
        assert (p.constant_value(), q.constant_value()) == act_word(w.word, (Q(3, 7), Q(-2, 5)))


def test_pairing_with_coroots():
    lam = Weight.from_e(Q(3), Q(1, 2))
    assert pairing(lam, Root.parse("a1")) == Q(5, 2)
    assert pairing(lam, Root.parse("a2")) == Q(1, 2)
    assert pairing(lam, Root.parse("a4")) == 3
    for r in POSITIVE_ROOTS:
        assert pairing(basis_weight(r.name), r) == 2


def test_fundamental_weights():
    assert BETA1 == basis_weight("a4") / 2
    assert BETA2 == basis_weight("a3")
    assert pairing(BETA1, Root.parse("a1")) == 1 and pairing(BETA1, Root.parse("a2")) == 0
    assert pairing(BETA2, Root.parse("a2")) == 1 and pairing(BETA2, Root.parse("a1")) == 0


def test_long_and_short_roots():
    assert [r.name for r in POSITIVE_ROOTS if r.is_long] == ["a2", "a4"]
    assert root_from_e(Q(-2), Q(0)) == -Root.parse("a4")


def test_inversion_sets_from_definition():
    for w in WEYL_GROUP:
        want = {r for r in POSITIVE_ROOTS if act_word(w.word, E[r.name]) not in [E[n] for n in E]}
        assert inversion_set(w) == frozenset(want)
        assert len(inversion_set(w)) == w.length


def test_parabolic_weyl_sets():
    def hits(name):
        return {w.name for w in WEYL_GROUP if Root.parse(name) in inversion_set(w)}

    assert hits("a1") == {"w1", "w21", "w121", "w1212"}
    assert hits("a2") == {"w2", "w12", "w212", "w1212"}
    assert hits("a3") == {"w12", "w121", "w212", "w1212"}


def test_multiplication_and_inverse():
    for w, v in product(WEYL_GROUP, repeat=2):
        assert (w * v).matrix == from_word(w.word + v.word).matrix
    for w in WEYL_GROUP:
        assert w * w.inverse() == IDENTITY
    assert weyl("w12").inverse() == weyl("w21")


def test_reduced_words():
    assert sorted(reduced_words(LONGEST)) == ["1212", "2121"]
    assert reduced_words(weyl("w121")) == ["121"]
    assert WeylElement.parse("w2121") == LONGEST


def test_parse_rejects_bad_words():
    with pytest.raises(ValueError):
        WeylElement.parse("w13")


def test_torus_conjugation_rows():
    rows = {r["weyl"]: r["torus"] for r in weyl_table()}
    assert rows["w1"] == "t(b,a)"
    assert rows["w12"] == "t(b^-1,a)"
    assert rows["w21"] == "t(b,a^-1)"
    assert torus_conjugation(IDENTITY) == ((1, 0), (0, 1))


def test_weight_coordinates():
    lam = Weight(Affine.var("x"), Affine.var("y"))
    assert str(lam) == "x*a1/2 + y*a3/2"
    t, z = Affine.var("t"), Affine.var("z")
    line = Weight.from_tz(t, z)
    assert line == basis_weight("a2") * t / 2 + basis_weight("a4") * z / 2
    assert str(basis_weight("a1") / 2 + basis_weight("a3")) == "a1/2 + a3"
    assert str(BETA2 * Affine.var("s")) == "s*a3"
    assert basis_weight("a3").simple_root_coords == (1, 1)


def test_velocity_transforms_linearly():
    lam = Weight(Affine.var("x"), 1)
    for w in WEYL_GROUP:
        moved = weyl_act_weight(w, lam)
        assert moved.velocity("x") == weyl_act_velocity(w, *lam.velocity("x"))


def test_strict_negativity():
    assert is_strictly_negative(-basis_weight("a3") / 2)
    assert not is_strictly_negative(-basis_weight("a1") / 2)
    assert not is_strictly_negative(Weight(0, 0))
