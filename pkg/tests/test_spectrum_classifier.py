import json

import pytest

from artifact.characters import RelationSet
from artifact.checks import spectrum_cases
from artifact.spectrum_classifier import (
    BorelDatum,
    NonSiegelDatum,
    SiegelDatum,
    classify_borel,
    classify_nonsiegel,
    classify_siegel,
)

R = RelationSet.parse


@pytest.mark.parametrize("title,run,want", spectrum_cases(), ids=[c[0] for c in spectrum_cases()])
def test_spectrum_case(title, run, want):
    points = run()
    assert sorted((p.family, str(p.point)) for p in points) == sorted(want)
    assert all(p.square_integrable for p in points)


def test_siegel_point_details():
    (p,) = classify_siegel(SiegelDatum(True, True))
    assert p.quotient_label == "J_P1(1/2,tau)"
    assert p.pole_order == 1
    assert [(str(c), e) for c, e in p.support] == [("chi", 1 / 2), ("mu", 1 / 2)]


def test_nonsiegel_labels():
    (p,) = classify_nonsiegel(NonSiegelDatum(R("chi=eta, eta^2=1"), "ETF"))
    assert p.quotient_label == "J_ETF(3/2,chi x sigma)"
    (q,) = classify_nonsiegel(NonSiegelDatum(R("chi^2=1"), "Lpi", central_value_nonzero=True))
    assert q.quotient_label == "J_pi(1/2,chi x sigma)"
    assert str(q.support[1][0]) == "mu"


def test_borel_points_carry_their_residues():
    (p,) = classify_borel(BorelDatum(R("chi=mu, chi^2=1")))
    assert p.paths == ("S1:y=2",)
    assert not p.residue.is_zero()
    (q,) = classify_borel(BorelDatum(R("chi^2=1, mu^2=1, chi!=mu")))
    assert set(q.paths) == {"S2:z=1/2", "S3:x=0:half"}


def test_datum_validation():
    with pytest.raises(ValueError):
        NonSiegelDatum(R("chi^2=1"), "ETF")
    with pytest.raises(ValueError):
        NonSiegelDatum(R("eta^2=1"), "ETF", s_sigma_size=3)
    with pytest.raises(ValueError):
        NonSiegelDatum(R(""), "theta")
    with pytest.raises(ValueError):
        BorelDatum(R("chi=mu, chi!=mu"))


def test_json_is_plain_data():
    for p in classify_borel(BorelDatum(R("chi^2=1, mu^2=1, chi!=mu"))):
        text = json.dumps(p.to_json(), sort_keys=True)
        assert json.loads(text) == p.to_json()
