from fractions import Fraction as Q

import pytest

from artifact.arthur_params import (
    EXPECTED_FAMILIES,
    PARAM_TYPES,
    NotSymplectic,
    SatakeEntry,
    SatakeMultiset,
    TypeConstraint,
    make_param,
    matching_types,
    near_equivalent,
    satake_at_point,
    satake_of_param,
    signed_permutations,
)
from artifact.characters import RelationSet, char
from artifact.checks import representative_points
from artifact.root_data import basis_weight

KINDS = PARAM_TYPES[1:]


def entries(*pairs):
    return tuple(SatakeEntry(char(c), Q(e)) for c, e in pairs)


def test_signed_permutation_group_has_order_eight():
    g = signed_permutations()
    assert len(g) == 8 and len(set(g)) == 8


@pytest.mark.parametrize("kind", PARAM_TYPES)
def test_parameters_are_symplectic(kind):
    s = satake_of_param(make_param(kind))
    assert s.is_symplectic()
    assert near_equivalent(s, s)


def test_exponents_of_each_type():
    def exps(kind):
        return sorted(e.exponent for e in satake_of_param(make_param(kind)).entries)

    h, t = Q(1, 2), Q(3, 2)
    assert exps("soudry") == [-h, -h, h, h]
    assert exps("saito_kurokawa") == [-h, 0, 0, h]
    assert exps("hps") == [-h, -h, h, h]
    assert exps("principal") == [-t, -h, h, t]


def test_rejects_non_symplectic():
    bad = SatakeMultiset(entries(("chi", 1), ("mu", 1), ("chi", 1), ("mu", -1)))
    assert not bad.is_symplectic()
    with pytest.raises(NotSymplectic):
        near_equivalent(bad, satake_of_param(make_param("hps")))


def test_type_constraints():
    with pytest.raises(TypeConstraint):
        make_param("hps", local="chi=mu")
    with pytest.raises(TypeConstraint):
        make_param("soudry", local="chi^2=mu")
    assert make_param("soudry", local="chi^2=1, mu^2=1").relations.is_trivial(char("mu^2"))


def test_signed_permutation_brute_force():
    a = SatakeMultiset(entries(("chi", Q(1, 2)), ("mu", 0), ("chi^-1", Q(-1, 2)), ("mu^-1", 0)))
    b = SatakeMultiset(entries(("mu^-1", 0), ("chi^-1", Q(-1, 2)), ("mu", 0), ("chi", Q(1, 2))))
    assert near_equivalent(a, b)
    c = SatakeMultiset(entries(("chi", Q(1, 2)), ("mu", Q(1, 2)), ("chi^-1", Q(-1, 2)), ("mu^-1", Q(-1, 2))))
    assert not near_equivalent(a, c)


def test_relations_decide_equality_of_entries():
    a = SatakeMultiset(entries(("chi", 1), ("chi", 0), ("chi^-1", -1), ("chi^-1", 0)))
    b = SatakeMultiset(entries(("mu", 1), ("chi", 0), ("mu^-1", -1), ("chi^-1", 0)))
    assert not near_equivalent(a, b)
    assert near_equivalent(a, SatakeMultiset(b.entries, RelationSet.parse("chi=mu")))
    # relations that contradict each other never give a match
    left = SatakeMultiset(a.entries, RelationSet.parse("chi=mu"))
    right = SatakeMultiset(b.entries, RelationSet.parse("chi!=mu"))
    assert not near_equivalent(left, right)


@pytest.mark.parametrize("i,j", [(i, j) for i in range(len(KINDS)) for j in range(len(KINDS)) if i < j])
def test_cross_type_comparisons_fail(i, j):
    a, b = (satake_of_param(make_param(k)) for k in (KINDS[i], KINDS[j]))
    assert not near_equivalent(a, b)


def test_each_family_matches_its_type():
    for p in representative_points():
        want = [k for k, fams in EXPECTED_FAMILIES.items() if p.family in fams]
        assert matching_types(p) == want, p.quotient_label


def test_hps_point_label():
    rel = RelationSet.parse("chi^2=1, mu^2=1, chi!=mu")
    hps = satake_of_param(make_param("hps"))
    assert near_equivalent(satake_at_point(basis_weight("a3") / 2, ("chi", "mu"), rel), hps)
    assert not near_equivalent(satake_at_point(basis_weight("a3"), ("chi", "mu"), rel), hps)
