import json

import numpy as np
import pytest

from orthoposet.oracle import (OracleError, SearchConfig, cross_validate,
                               enumerate_dim1, rank_profiles, search_numeric)
from orthoposet.poset import Poset
from orthoposet.spectrum import Character
from orthoposet.verify import check_all, commutant_dim

QUAD = Poset(["g1", "g2", "g3", "g4"], [])
CHAIN2 = Poset(["x", "y"], [("x", "y")])

POINT_SIX = Character({g: 0.6 for g in QUAD.elements})
QUICK = SearchConfig(dimension=1, restarts=4, max_iterations=2000, seed=0)


def test_search_config_validation():
    with pytest.raises(OracleError):
        SearchConfig(dimension=0)
    with pytest.raises(OracleError):
        SearchConfig(dimension=2, restarts=0)
    cfg = QUICK.replace(dimension=3, rank_profile=(1, 1, 1, 1))
    assert cfg.dimension == 3 and cfg.rank_profile == (1, 1, 1, 1)
    assert QUICK.rank_profile is None  # replace does not mutate
    doc = json.loads(cfg.to_json())
    assert doc["restarts"] == 4 and doc["seed"] == 0


def test_enumerate_dim1_lists_unit_weight_up_sets():
    chi = Character({"g1": 0.2, "g2": 0.8, "g3": 0.2, "g4": 0.8})
    assert enumerate_dim1(QUAD, chi) == [(0, 0, 1, 1), (0, 1, 1, 0),
                                         (1, 0, 0, 1), (1, 1, 0, 0)]


def test_enumerate_dim1_respects_order():
    # {x} alone has unit weight but is not upward closed
    assert enumerate_dim1(CHAIN2, Character({"x": 1.0, "y": 0.4})) == []
    assert enumerate_dim1(CHAIN2, Character({"x": 0.4, "y": 1.0})) == [(0, 1)]


def test_rank_profiles_keep_exact_trace():
    profiles = rank_profiles(QUAD, Character({g: 0.5 for g in QUAD.elements}), 2)
    assert len(profiles) == 19
    for ranks in profiles:
        assert abs(sum(0.5 * r for r in ranks) - 2.0) <= 1e-6


def test_rank_profiles_are_monotone():
    assert rank_profiles(CHAIN2, Character({"x": 0.5, "y": 0.5}), 2) == [(2, 2)]
    chi = Character({"x": 0.31415926, "y": 0.2718281828})
    assert rank_profiles(CHAIN2, chi, 2) == []


def test_search_finds_the_three_point_family():
    fam = search_numeric(QUAD, POINT_SIX, QUICK.replace(dimension=3))
    assert fam is not None
    report = check_all(fam)
    assert report.passed and report.irreducible
    eigs = np.sort(np.linalg.eigvalsh(fam.weighted_sum(("g1", "g2"))))
    assert np.allclose(eigs, [0.0, 0.4, 0.8], atol=1e-8)


def test_search_is_deterministic():
    cfg = QUICK.replace(dimension=3)
    first = search_numeric(QUAD, POINT_SIX, cfg)
    second = search_numeric(QUAD, POINT_SIX, cfg)
    assert first.to_json() == second.to_json()


def test_search_reports_absence():
    assert search_numeric(QUAD, POINT_SIX, QUICK.replace(dimension=2)) is None


def test_search_rejects_incomplete_character():
    with pytest.raises(OracleError):
        search_numeric(QUAD, Character({"g1": 0.6}), QUICK)


def test_search_finds_continuous_series_member():
    half = Character({g: 0.5 for g in QUAD.elements})
    fam = search_numeric(QUAD, half, QUICK.replace(dimension=2),
                         require_irreducible=True)
    assert fam is not None
    assert commutant_dim(fam) == 1
    layer = np.sort(np.linalg.eigvalsh(fam.weighted_sum(("g1", "g2"))))
    assert abs(layer.sum() - 1.0) < 1e-8  # reflection pair about sigma/2


def test_cross_validate_three_dimensions():
    cv = cross_validate(Poset(["g1", "g2"], []), POINT_SIX.restrict(("g1", "g2")),
                        Poset(["g3", "g4"], []), POINT_SIX.restrict(("g3", "g4")),
                        (1, 2, 3), QUICK)
    assert cv.agree
    by_dim = {r["dimension"]: r for r in cv.rows}
    assert not by_dim[1]["theory"] and not by_dim[1]["oracle"]
    assert not by_dim[2]["theory"]
    assert by_dim[3]["theory"] and by_dim[3]["oracle"]
    assert by_dim[3]["spectrum_matched"]
    doc = json.loads(cv.to_json())
    assert doc["agree"] is True and len(doc["rows"]) == 3


def test_cross_validate_degenerate_character():
    # g1 is screened out (weight above one) yet a scalar family survives
    heavy = Character({"g1": 1.2, "g2": 0.4, "g3": 0.3, "g4": 0.3})
    cv = cross_validate(Poset(["g1", "g2"], []), heavy.restrict(("g1", "g2")),
                        Poset(["g3", "g4"], []), heavy.restrict(("g3", "g4")),
                        (1, 2), QUICK)
    assert cv.agree
    by_dim = {r["dimension"]: r for r in cv.rows}
    assert by_dim[1]["theory"] and by_dim[1]["oracle"]
    assert not by_dim[2]["theory"] and not by_dim[2]["oracle"]
