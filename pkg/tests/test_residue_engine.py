from fractions import Fraction as Q

import pytest

from artifact.characters import InconsistentRelations, RelationSet
from artifact.residue_engine import (
    HYPERPLANES,
    PRESETS,
    S2_IN_XY,
    TZ,
    ResiduePath,
    derivative_constant,
    hyperplane_residues,
    is_square_integrable,
    iterated_residue,
    parse_path,
    single_var_pole_scan,
    total_residue_at,
)
from artifact.root_data import WEYL_GROUP, Weight, basis_weight, weyl
from artifact.spectrum_classifier import NonSiegelDatum, SiegelDatum

B1 = RelationSet.parse("chi=mu, chi^2=1")
B2 = RelationSet.parse("chi^2=1, mu^2=1, chi!=mu")
RELATION_SETS = [RelationSet(), RelationSet.parse("chi=mu"), B1, B2]


def test_hyperplanes_lie_on_their_root_equations():
    for h in HYPERPLANES.values():
        assert h.contains(h.frame.weight())
    assert S2_IN_XY.contains(S2_IN_XY.frame.weight())
    assert HYPERPLANES["S1"].equation() == "x = 1"
    assert TZ.jacobian == 2


def test_path_points():
    assert str(PRESETS["S1:y=2"].point) == "a1/2 + a3"
    assert str(PRESETS["S1:y=1"].point) == "a4/2"
    assert str(PRESETS["S1:y=0"].point) == "a1/2"
    assert PRESETS["S2:z=1/2"].point == PRESETS["S3:x=0:half"].point == basis_weight("a3") / 2


def test_parse_path():
    assert parse_path("S2:z=1/2") is PRESETS["S2:z=1/2"]
    p = parse_path("S3:x=0", multiplicity=Q(1, 2))
    assert p.multiplicity == Q(1, 2) and p.label == "S3:x=0 (multiplicity 1/2)"
    with pytest.raises(ValueError, match="parametrized by z"):
        parse_path("S2:x=0")
    with pytest.raises(ValueError):
        parse_path("S9:x=0")
    with pytest.raises(ValueError):
        ResiduePath(HYPERPLANES["S1"], Q(2), Q(1, 3))


def test_simple_poles_along_s1():
    res = {r.weyl.name: r for r in hyperplane_residues(HYPERPLANES["S1"], B1)}
    assert {n for n, r in res.items() if not r.is_zero} == {"w1", "w21", "w121", "w1212"}


def test_nonzero_residue_at_a1_half_plus_a3():
    res = iterated_residue(PRESETS["S1:y=2"], B1)
    assert not res.total.is_zero()
    assert res.verify_trace()
    assert res.square_integrable


@pytest.mark.parametrize("name", ["S1:y=1", "S1:y=0"])
def test_vanishing_points(name):
    res = iterated_residue(PRESETS[name], B1)
    assert res.total.is_zero()
    # the vanishing comes from the rewrite rules, not from every term being regular
    assert any(t.operator is not None for t in res.per_weyl)


def test_cancellation_at_a3_half():
    s2 = iterated_residue(PRESETS["S2:z=1/2"], B1)
    s3 = iterated_residue(PRESETS["S3:x=0:half"], B1)
    assert total_residue_at([s2, s3]).is_zero()
    full = iterated_residue(parse_path("S3:x=0"), B1)
    assert not total_residue_at([s2, full]).is_zero()


def test_derived_constant():
    native = iterated_residue(PRESETS["S2:z=1/2"], B1, normalization="native")
    const = derivative_constant(native)
    assert const["matches"] == ["a_-1/2"]
    assert const["c"] == "a_-1/2"


@pytest.mark.parametrize("rel", RELATION_SETS, ids=str)
def test_frame_covariance_of_s2(rel):
    in_xy = iterated_residue(ResiduePath(S2_IN_XY, Q(0)), rel)
    native = iterated_residue(PRESETS["S2:z=1/2"], rel, normalization="native")
    assert in_xy.point == native.point
    assert in_xy.total.equals(native.total.scale(2), rel)


def test_normalizations_cannot_be_mixed():
    a = iterated_residue(PRESETS["S2:z=1/2"], B1)
    b = iterated_residue(PRESETS["S3:x=0:half"], B1, normalization="native")
    with pytest.raises(ValueError):
        total_residue_at([a, b])
    with pytest.raises(ValueError):
        iterated_residue(PRESETS["S2:z=1/2"], B1, normalization="polar")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_weyl_order_does_not_matter(name):
    forward = iterated_residue(PRESETS[name], B2)
    backward = iterated_residue(PRESETS[name], B2, weyls=list(reversed(WEYL_GROUP)))
    assert forward.total.equals(backward.total, B2)
    assert forward.verify_trace()


def test_b2_residue_at_a3_half():
    s2 = iterated_residue(PRESETS["S2:z=1/2"], B2)
    s3 = iterated_residue(PRESETS["S3:x=0:half"], B2)
    total = total_residue_at([s2, s3])
    assert {str(m[0].weyl) for m in total.monomials()} == {"w212", "w1212"}
    assert is_square_integrable(basis_weight("a3") / 2, [weyl("w212"), weyl("w1212")])


def test_square_integrability():
    half = basis_weight("a3") / 2
    assert not is_square_integrable(half, [weyl("w12")])
    assert not is_square_integrable(half, [])
    assert is_square_integrable(Weight(1, 2), [weyl("w1212")])


def test_inconsistent_relations_are_refused():
    with pytest.raises(InconsistentRelations):
        iterated_residue(PRESETS["S1:y=2"], RelationSet.parse("chi=mu, chi!=mu"))


def test_siegel_pole_scan():
    assert [(p.s, p.pole_order) for p in single_var_pole_scan("siegel", SiegelDatum(True, True))] == [(Q(1, 2), 1)]
    assert single_var_pole_scan("siegel", SiegelDatum(True, False)) == []


def test_nonsiegel_pole_scans():
    R = RelationSet.parse
    etf = single_var_pole_scan("nonsiegel", NonSiegelDatum(R("chi=eta, eta^2=1"), "ETF"))
    assert [p.s for p in etf if p.s > 0] == [Q(3, 2)]
    odd = NonSiegelDatum(R("chi^2=1, eta^2=1, chi!=eta"), "ETF", chi_ne_eta_on_s_sigma=True)
    assert [p.s for p in single_var_pole_scan("nonsiegel", odd) if p.s > 0] == [Q(1, 2)]
    lpi = NonSiegelDatum(R("chi^2=1"), "Lpi", central_value_nonzero=True)
    assert [p.s for p in single_var_pole_scan("nonsiegel", lpi) if p.s > 0] == [Q(1, 2)]
    flat = NonSiegelDatum(R("chi^2=1"), "Lpi")
    assert [p.s for p in single_var_pole_scan("nonsiegel", flat) if p.s > 0] == []
