import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from kloosterman import equidist as EQ
from kloosterman import sums
from kloosterman.field import make_field
from kloosterman.sums import make_spec

GEOM_MONODROMY = {
    "A2": "A2", "A4": "A4", "A6": "A6", "A8": "A8",
    "A1": "A1", "A3": "C2", "A5": "C3", "A7": "C4",
    "C3": "C3", "C5": "C5", "C8": "C8",
    "B4": "B4", "B7": "B7", "D5": "B4", "D8": "B7",
    "E6": "F4", "E7": "E7", "E8": "E8", "F4": "F4",
    "B3": "G2", "D4": "G2", "G2": "G2",
    "B2": "C2", "C2": "C2",
}


def kl2_table(p, k=1):
    return sums.table_convolution(make_spec(make_field(p, k), 2))


@pytest.mark.parametrize("n,p,label,type_label", [
    (7, 2, "G2", "G2"), (2, 5, "Sp2", "A1"), (2, 2, "Sp2", "A1"), (4, 3, "Sp4", "C2"),
    (6, 2, "Sp6", "C3"), (3, 5, "SL3", "A2"), (5, 7, "SL5", "A4"), (5, 2, "SO5", "B2"), (9, 2, "SO9", "B4"),
])
def test_monodromy_target(n, p, label, type_label):
    t = EQ.monodromy_target(n, p)
    assert t.label == label and t.type_label == type_label
    assert t.mixed == label.startswith("SL")


@pytest.mark.parametrize("n,p", [(3, 2), (1, 5)])
def test_unlisted(n, p):
    with pytest.raises(EQ.Unlisted):
        EQ.monodromy_target(n, p)


@pytest.mark.parametrize("label,expected", sorted(GEOM_MONODROMY.items()))
def test_monodromy_target_dual(label, expected):
    t = EQ.monodromy_target_dual(label)
    assert t.type_label == expected
    assert "p > 2" in t.note


def test_b3_note():
    assert "p > 3" in EQ.monodromy_target_dual("B3").note


def test_m0_is_one():
    for table in (kl2_table(101), sums.table_convolution(make_spec(make_field(3, 3), 3))):
        assert EQ.empirical_moments(table, 0)[0] == 1
        assert EQ.empirical_mixed(table, 0, 0) == 1


def test_kl2_moments_pass():
    table = kl2_table(10007)
    reports = EQ.compare(table, EQ.monodromy_target(2, 10007), 6)
    assert [r.theoretical for r in reports] == [1, 0, 1, 0, 2, 0, 5]
    # the low moments sit well inside A / sqrt(q)
    for r in reports[:5]:
        assert r.passed, r.to_json()
    assert abs(reports[1].empirical) < 10 / math.sqrt(10007)
    assert abs(reports[2].empirical - 1) < 10 / math.sqrt(10007)


def test_self_dual_moments_are_real():
    for table in (kl2_table(1009), sums.table_convolution(make_spec(make_field(2, 8), 7))):
        assert all(abs(m.imag) <= 1e-9 for m in EQ.empirical_moments(table, 6))


def test_mixed_with_b_zero_is_plain():
    table = sums.table_convolution(make_spec(make_field(5, 3), 3))
    plain = EQ.empirical_moments(table, 4)
    for a in range(5):
        assert abs(EQ.empirical_mixed(table, a, 0) - plain[a]) <= 1e-12


def test_sl3_compare_is_mixed():
    table = sums.table_convolution(make_spec(make_field(5, 4), 3))
    reports = EQ.compare(table, EQ.monodromy_target(3, 5), 3)
    keys = [r.k for r in reports]
    assert (1, 1) in keys and (3, 0) in keys and (0, 3) in keys
    by_key = {r.k: r for r in reports}
    assert by_key[(1, 1)].theoretical == 1
    assert by_key[(3, 0)].theoretical == 1
    assert by_key[(2, 0)].theoretical == 0
    assert by_key[(1, 1)].passed and by_key[(3, 0)].passed


def test_error_shrinks_with_q():
    # |m2 - 1| over F_{3^k} for growing k, compared at q ratios of at least 100
    errs = {}
    for k in (2, 7, 11):
        t = sums.table_convolution(make_spec(make_field(3, k), 2))
        errs[3**k] = abs(EQ.empirical_moments(t, 2)[2] - 1)
    assert errs[3**7] <= errs[3**2]
    assert errs[3**11] <= errs[3**7]


def test_tolerance():
    assert EQ.tolerance(10000, 2, 0) == pytest.approx(0.1 + 1e-9)
    assert EQ.tolerance(10000, 2, 8, A=20) == pytest.approx(0.2 + 1e-9 * 256)


def test_moment_report():
    r = EQ.MomentReport(4, 2.05 + 0.0j, 2, 10007, 0.1)
    assert r.passed and abs(r.error - 0.05) < 1e-12
    doc = r.to_json()
    assert doc["k"] == 4 and doc["pass"] is True and doc["theoretical"] == 2
    assert EQ.MomentReport((1, 1), 1.5 + 0j, 1, 49, 0.1).to_json()["k"] == [1, 1]
    assert not EQ.MomentReport(4, 3.0 + 0j, 2, 10007, 0.1).passed


def test_sato_tate_cdf_matches_quadrature():
    for theta in (0.0, 0.3, 1.0, math.pi / 2, 2.5, math.pi):
        val, _ = integrate.quad(lambda u: 2 / math.pi * math.sin(u) ** 2, 0, theta)
        assert abs(EQ.sato_tate_cdf(theta) - val) < 1e-12


def test_ks_matches_scipy():
    rng = np.random.default_rng(3)
    x = rng.uniform(0, math.pi, 500)
    ours = EQ.ks_statistic(x)
    theirs = stats.kstest(x, EQ.sato_tate_cdf).statistic
    assert abs(ours - theirs) < 1e-12


def test_uniform_input_fails():
    m = 10006
    theta = (np.arange(m) + 0.5) / m * math.pi
    st_ = EQ.angle_statistics_from(theta)
    assert not st_.passed
    assert st_.ks > 0.05


def test_quantile_grid_passes():
    m = 10006
    st_ = EQ.angle_statistics_from(EQ.sato_tate_quantiles(m))
    assert st_.ks <= 1 / m
    assert st_.passed


def test_kl2_angles_pass():
    st_ = EQ.angle_statistics(kl2_table(10007).normalize())
    assert st_.passed
    assert len(st_.histogram) == EQ.DEFAULT_BINS
    assert sum(st_.histogram) == 10006
    assert abs(sum(st_.expected) - 10006) < 1e-6
    assert st_.threshold == pytest.approx(3 / math.sqrt(10006))
    doc = st_.to_json()
    assert len(doc["edges"]) == EQ.DEFAULT_BINS + 1


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(0, math.pi), min_size=1, max_size=200))
def test_ks_bounds(xs):
    ks = EQ.ks_statistic(xs)
    assert 0 <= ks <= 1
    assert ks >= 1 / (2 * len(xs)) - 1e-12
