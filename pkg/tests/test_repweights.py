import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kloosterman import repweights as RW
from kloosterman import rootsys as R

TYPES = list(R.ALL_TYPES)


def torus_moment(rs, weights, a, b=0, N=None):
    """Weyl integration on the maximal torus by an exact grid quadrature.

    The integrand chi^a conj(chi)^b |Delta|^2 / |W| is a trigonometric polynomial
    in Dynkin coordinates, so a uniform grid finer than its degree is exact.
    """
    roots = [rs.to_weight(v) for v in rs.roots]
    if N is None:
        span = (a + b) * max(np.abs(w).sum() for w in weights) + sum(np.abs(r).sum() for r in roots)
        N = int(span) + 1
    axes = np.meshgrid(*[np.arange(N) / N] * rs.rank, indexing="ij")
    x = np.stack([ax.ravel() for ax in axes], axis=1)
    chi = sum(np.exp(2j * np.pi * (x @ np.array(w))) for w in weights)
    delta2 = np.ones(len(x), dtype=complex)
    for r in roots:
        delta2 *= 1 - np.exp(2j * np.pi * (x @ r))
    val = np.mean(chi**a * np.conj(chi) ** b * delta2) / rs.weyl_order
    return val


def short_root_weights(rs):
    ws = [tuple(int(c) for c in rs.to_weight(rs.roots[i])) for i in np.where(rs.short)[0]]
    return ws + [(0,) * rs.rank] * rs.r_s


def test_quasi_minuscule_examples():
    assert RW.quasi_minuscule(R.build("G2")).dim == 7
    assert RW.quasi_minuscule(R.build("A1")).dim == 3
    assert RW.quasi_minuscule(R.build("C2")).dim == 5


@pytest.mark.parametrize("label,dim", [("G2", 14), ("A1", 3), ("E8", 248), ("E7", 133), ("F4", 52), ("B3", 21), ("C4", 36)])
def test_adjoint_dims(label, dim):
    rs = R.build(label)
    V = RW.adjoint(rs)
    assert V.dim == dim
    assert RW.weyl_dimension(rs, V.highest) == dim


@pytest.mark.parametrize("label", TYPES)
def test_representations_are_weyl_stable(label):
    rs = R.build(label)
    for V in (RW.quasi_minuscule(rs), RW.adjoint(rs)):
        assert V.is_weyl_stable()
        assert V.dim == sum(V.weights.values())
        assert RW.weyl_dimension(rs, V.highest) == V.dim


@pytest.mark.parametrize("label", TYPES)
def test_same_number_chain(label):
    rs = R.build(label)
    V = RW.quasi_minuscule(rs)
    zero = V.weights[(0,) * rs.rank]
    strings = RW.principal_strings(V)
    n_short = int(rs.short.sum())
    assert zero == len(strings) == rs.r_s == n_short // rs.h
    assert sum(strings) == Fraction(rs.h * rs.r_s, 2)
    assert sum(2 * ell + 1 for ell in strings) == V.dim


@pytest.mark.parametrize("label", TYPES)
def test_adjoint_strings_are_exponents(label):
    rs = R.build(label)
    strings = RW.principal_strings(RW.adjoint(rs))
    assert len(strings) == rs.rank
    # exponents are degrees minus one
    assert sorted(strings) == sorted(d - 1 for d in R.weyl_degrees(rs.letter, rs.rank))


def test_principal_string_examples():
    assert RW.principal_strings(RW.adjoint(R.build("A1"))) == [1]
    assert RW.principal_strings(RW.quasi_minuscule(R.build("G2"))) == [3]
    # standard of SL_3 is Sym^2 of the standard sl_2
    assert RW.principal_strings(RW.standard(R.build("A2"))) == [1]
    assert RW.principal_strings(RW.standard(R.build("A1"))) == [Fraction(1, 2)]


def test_not_sl2_decomposable():
    rs = R.build("A1")
    bad = RW.WeightMultiset(rs, {(2,): 1, (0,): 1})
    with pytest.raises(RW.NotSL2Decomposable):
        RW.principal_strings(bad)


def test_clebsch_gordan():
    rs = R.build("A1")
    std = RW.standard(rs)
    assert RW.tensor_decompose(std, std) == {(0,): 1, (2,): 1}


@pytest.mark.parametrize("label", ["A3", "G2", "F4", "C3"])
def test_tensor_with_trivial(label):
    rs = R.build(label)
    V = RW.adjoint(rs)
    assert RW.tensor_decompose(V, RW.trivial(rs)) == {V.highest: 1}


def test_g2_v7_squared():
    rs = R.build("G2")
    V = RW.standard(rs)
    dec = RW.tensor_decompose(V, V)
    dims = sorted(RW.weyl_dimension(rs, w) * m for w, m in dec.items())
    assert dims == [1, 7, 14, 27]


def test_not_irreducible():
    rs = R.build("A2")
    V = RW.WeightMultiset(rs, dict(RW.standard(rs).weights))
    with pytest.raises(RW.NotIrreducible):
        RW.tensor_decompose(V, V)


@pytest.mark.parametrize("label,rep1,rep2", [
    ("G2", "std", "ad"), ("B3", "std", "std"), ("C3", "qm", "std"), ("A3", "std", "ad"),
    ("D4", "std", "ad"), ("E6", "ad", "qm"), ("F4", "qm", "qm"),
])
def test_tensor_conserves_dimension(label, rep1, rep2):
    rs = R.build(label)
    V = RW.representation(rs, rep1)
    W = RW.representation(rs, rep2)
    dec = RW.tensor_decompose(V, W)
    assert all(m > 0 for m in dec.values())
    assert sum(m * RW.weyl_dimension(rs, w) for w, m in dec.items()) == V.dim * W.dim


def test_moment_examples():
    a1 = RW.standard(R.build("A1"))
    assert RW.invariant_moments(a1, 6) == [1, 0, 1, 0, 2, 0, 5]
    g2 = RW.standard(R.build("G2"))
    assert RW.invariant_moments(g2, 4) == [1, 0, 1, 1, 4]
    assert RW.invariant_moment(RW.standard(R.build("B3")), 4) == 3
    assert RW.invariant_moment(RW.adjoint(R.build("E8")), 0) == 1


@pytest.mark.parametrize("label,kmax", [("A1", 8), ("G2", 6), ("B3", 5), ("C2", 6)])
def test_moments_match_torus_integration(label, kmax):
    rs = R.build(label)
    V = RW.standard(rs)
    ours = RW.invariant_moments(V, kmax)
    weights = [w for w, m in V.weights.items() for _ in range(m)]
    for k in range(kmax + 1):
        val = torus_moment(rs, weights, k)
        assert abs(val.imag) < 1e-8
        assert abs(val.real - ours[k]) < 1e-8


def test_sl3_mixed_moments_match_torus_integration():
    rs = R.build("A2")
    V = RW.standard(rs)
    weights = list(V.weights)
    assert sorted(weights) == sorted([(1, 0), (-1, 1), (0, -1)])
    for a, b in itertools.product(range(4), repeat=2):
        val = torus_moment(rs, weights, a, b)
        assert abs(val - RW.mixed_moment(V, a, b)) < 1e-8
    assert [RW.mixed_moment(V, a, a) for a in range(4)] == [1, 1, 2, 6]
    assert RW.mixed_moment(V, 3, 0) == 1
    assert RW.mixed_moment(V, 1, 0) == 0


@pytest.mark.parametrize("label", ["G2", "B3", "C3", "D4", "A1"])
def test_self_dual_duality_symmetry(label):
    V = RW.standard(R.build(label))
    Vd = V.dual()
    for k in range(5):
        assert RW.invariant_moment(V, k) == RW.invariant_moment(Vd, k)


def test_dual_highest_weight():
    V = RW.standard(R.build("A3"))
    assert V.dual().highest == (0, 0, 1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "C3", "A3"]), st.data())
def test_weyl_dimension_matches_orbit_count(label, data):
    # dim of an irreducible >= size of the Weyl orbit of its highest weight
    rs = R.build(label)
    hw = tuple(data.draw(st.lists(st.integers(0, 3), min_size=rs.rank, max_size=rs.rank)))
    d = RW.weyl_dimension(rs, hw)
    assert d >= len(R.weyl_orbit(rs, hw, "weight"))
    std = RW.standard(rs)
    dec = RW.tensor_with_weights(rs, hw, std.weights)
    assert sum(m * RW.weyl_dimension(rs, w) for w, m in dec.items()) == d * std.dim


def test_haar_moments_cached():
    assert RW.haar_moments("G2", "std", 6) == (1, 0, 1, 1, 4, 10, 35)
    assert RW.haar_moments("G2", "std", 6) is RW.haar_moments("G2", "std", 6)


def test_unknown_representation():
    with pytest.raises(ValueError):
        RW.representation(R.build("A2"), "spin")
