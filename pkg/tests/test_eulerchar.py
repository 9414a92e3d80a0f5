import dataclasses
import json

import numpy as np
import pytest

from kloosterman import eulerchar as E
from kloosterman import rootsys as R

TYPES = list(R.ALL_TYPES)
NON_SIMPLY_LACED = [t for t in TYPES if t[0] in "BCF"] + ["C2"]


@pytest.mark.parametrize("label", TYPES)
def test_qm_census_all_types(label):
    rs = R.build(label)
    rep = E.qm_census(rs)
    assert rep.matches_theorem
    assert rep.case_counts["II"] == rs.r_l == rep.predicted_minus_chi
    # every long root except -theta lands in exactly one case
    assert sum(rep.case_counts.values()) == int(rs.long.sum()) - 1


@pytest.mark.parametrize("label,case_ii", [("G2", 1), ("A1", 1), ("A5", 5), ("B2", 1), ("E8", 8), ("C4", 1), ("B4", 3)])
def test_qm_census_examples(label, case_ii):
    rep = E.qm_census(R.build(label))
    assert rep.case_counts["II"] == case_ii
    assert rep.predicted_minus_chi == case_ii


@pytest.mark.parametrize("label", NON_SIMPLY_LACED)
def test_adjoint_census(label):
    rs = R.build(label)
    rep = E.adjoint_census(rs)
    c = rep.case_counts
    assert rep.matches_theorem
    assert rep.predicted_minus_chi == rs.rank
    assert c["N_s"] == rs.r_s
    assert c["N_l"] == rs.r_l * c["parabolic_index"]
    assert c["phi2_contains_simple"] - rs.r_l * c["parabolic_index"] == rs.r_s
    assert c["short_roots"] == rs.h * rs.r_s
    assert "good_char_required" in rep.notes


def test_adjoint_census_examples():
    b2 = E.adjoint_census(R.build("B2"))
    assert b2.case_counts["parabolic_index"] == 2 and b2.predicted_minus_chi == 2
    assert E.adjoint_census(R.build("F4")).predicted_minus_chi == 4
    assert E.adjoint_census(R.build("C3")).case_counts["N_s"] == 2


@pytest.mark.parametrize("label", NON_SIMPLY_LACED + ["G2"])
def test_phi_beta_2_structure(label):
    rs = R.build(label)
    for b in np.where(rs.short)[0]:
        b = int(b)
        members = E.check_phi_beta_2(rs, b)
        assert b in members
        hts = [int(rs.heights[m]) for m in members]
        assert hts == sorted(set(hts))
        # the involution b' -> 2b - b' stays inside the level
        for m in members:
            assert rs.index[tuple(int(x) for x in 2 * rs.roots[b] - rs.roots[m])] in members
        assert all(rs.long[m] for m in members if m != b)


@pytest.mark.parametrize("label", ["A3", "D4", "E6", "G2"])
def test_adjoint_census_wrong_type(label):
    with pytest.raises(E.WrongType):
        E.adjoint_census(R.build(label))


def test_g2_census():
    rep = E.g2_census()
    c = rep.case_counts
    assert c["short_no_simple_in_phi_ge2"] == 3
    assert c["long_no_simple_in_phi_ge1"] == 1
    assert c["chi_orbit_gamma"] == -1
    assert c["chi_subregular"] == 0
    assert c["minus_chi_gamma"] == 1
    assert rep.predicted_minus_chi == 2
    assert rep.matches_theorem


@pytest.mark.parametrize("label", TYPES)
def test_census_dispatch_adjoint(label):
    rs = R.build(label)
    rep = E.census(rs, "adjoint")
    assert rep.matches_theorem
    assert rep.predicted_minus_chi == rs.rank


@pytest.mark.parametrize("label", TYPES)
def test_swan_prediction_agrees_with_census(label):
    rs = R.build(label)
    d = R.dual(rs)
    # quasi-minuscule Swan for the dual group is the short rank of the dual = long rank of G
    assert E.swan_prediction(d, "qm") == E.census(rs, "qm").predicted_minus_chi
    assert E.swan_prediction(d, "ad") == E.census(rs, "ad").predicted_minus_chi


def test_swan_prediction_examples():
    assert E.swan_prediction(R.build("G2"), "qm") == 1
    assert E.swan_prediction(R.build("E8"), "ad") == 8
    assert E.swan_prediction(R.build("A1"), "qm") == 1
    with pytest.raises(ValueError):
        E.swan_prediction(R.build("A1"), "spin")


def test_census_detects_broken_length_data():
    rs = R.build("B3")
    bad = dataclasses.replace(rs, long=~rs.long)
    with pytest.raises(E.CensusError):
        E.check_phi_beta_2(bad, rs.gamma)
    with pytest.raises(E.CensusError):
        E.qm_census(bad)


def test_report_json_roundtrip():
    doc = E.census(R.build("F4"), "adjoint").to_json()
    again = json.loads(json.dumps(doc))
    assert again["predicted_minus_chi"] == 4
    assert set(again) == {"type", "rep", "case_counts", "predicted_minus_chi", "matches_theorem", "notes"}
