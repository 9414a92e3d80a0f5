"""Weights of small representations of the dual group and their tensor algebra.

A ``WeightMultiset`` lives on the root system of the dual group and stores
weights as Dynkin labels (fundamental-weight coordinates).  Tensor products
with an irreducible are decomposed by the Brauer-Klimyk rule, which only
needs the highest weight of one factor and the full weight multiset of the
other; Haar moments are then multiplicities of the trivial representation in
iterated tensor powers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import rootsys
from .rootsys import RootSystem

Weight = tuple[int, ...]


class NotIrreducible(ValueError):
    pass


class NotSL2Decomposable(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WeightMultiset:
    rs: RootSystem
    weights: dict[Weight, int]
    highest: Weight | None = None
    label: str = ""
    dim: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "dim", sum(self.weights.values()))

    def dual(self) -> WeightMultiset:
        hw = None
        if self.highest is not None:
            # highest weight of V* is -w0(lambda), the dominant weight in the orbit of -lambda
            hw = dominant_rep(self.rs, tuple(-x for x in self.highest))
        return WeightMultiset(
            self.rs, {tuple(-x for x in w): m for w, m in self.weights.items()}, hw, self.label + "*"
        )

    def is_weyl_stable(self) -> bool:
        for w, m in self.weights.items():
            for i in range(self.rs.rank):
                s = tuple(int(x) for x in rootsys._reflect(np.array(w), i, "weight", self.rs.cartan))
                if self.weights.get(s) != m:
                    return False
        return True


def dominant_rep(rs: RootSystem, wt: Weight) -> Weight:
    v = np.array(wt, dtype=np.int64)
    while True:
        neg = np.where(v < 0)[0]
        if len(neg) == 0:
            return tuple(int(x) for x in v)
        i = int(neg[0])
        v = v - v[i] * rs.cartan[:, i]


def trivial(rs: RootSystem) -> WeightMultiset:
    z = (0,) * rs.rank
    return WeightMultiset(rs, {z: 1}, z, "trivial")


def quasi_minuscule(rs_dual: RootSystem) -> WeightMultiset:
    """Short roots with multiplicity one plus the zero weight with multiplicity r_s."""
    wts: dict[Weight, int] = {}
    for i in np.where(rs_dual.short)[0]:
        wts[tuple(int(x) for x in rs_dual.to_weight(rs_dual.roots[i]))] = 1
    wts[(0,) * rs_dual.rank] = rs_dual.r_s
    hw = tuple(int(x) for x in rs_dual.to_weight(rs_dual.roots[rs_dual.gamma]))
    return WeightMultiset(rs_dual, wts, hw, "qm")


def adjoint(rs_dual: RootSystem) -> WeightMultiset:
    wts: dict[Weight, int] = {tuple(int(x) for x in rs_dual.to_weight(v)): 1 for v in rs_dual.roots}
    wts[(0,) * rs_dual.rank] = rs_dual.rank
    hw = tuple(int(x) for x in rs_dual.to_weight(rs_dual.roots[rs_dual.theta]))
    return WeightMultiset(rs_dual, wts, hw, "adjoint")


def minuscule_orbit(rs: RootSystem, hw: Weight, label: str = "") -> WeightMultiset:
    orbit = rootsys.weyl_orbit(rs, hw, "weight")
    return WeightMultiset(rs, {w: 1 for w in orbit}, tuple(hw), label)


def standard(rs: RootSystem) -> WeightMultiset:
    """Defining representation: SL_{n+1}, SO_{2n+1}, Sp_{2n}, SO_{2n}, and V_7 of G_2."""
    omega1 = tuple([1] + [0] * (rs.rank - 1))
    if rs.letter in "ACD":
        return minuscule_orbit(rs, omega1, "standard")
    if rs.letter in "BG":
        # vector representation of SO_{2n+1} and V_7 of G_2 are quasi-minuscule
        v = quasi_minuscule(rs)
        return WeightMultiset(rs, v.weights, v.highest, "standard")
    raise ValueError(f"no standard representation implemented for {rs.type_label}")


def representation(rs: RootSystem, name: str) -> WeightMultiset:
    name = name.lower()
    if name in ("qm", "quasi-minuscule", "quasi_minuscule"):
        return quasi_minuscule(rs)
    if name in ("ad", "adjoint"):
        return adjoint(rs)
    if name in ("std", "standard", "vector", "v7"):
        return standard(rs)
    raise ValueError(f"unknown representation {name!r}")


# --- Weyl dimension formula ---------------------------------------------------------


def weyl_dimension(rs: RootSystem, hw: Weight) -> int:
    """prod over positive coroots of <lambda + rho, a^vee> / <rho, a^vee>, exactly."""
    lam_rho = np.array(hw, dtype=np.int64) + 1
    num = Fraction(1)
    for b in rs.coroots[rs.heights > 0]:
        num *= Fraction(int(b @ lam_rho), int(b.sum()))
    if num.denominator != 1:
        raise ArithmeticError("non-integral Weyl dimension")
    return int(num)


# --- Brauer-Klimyk ------------------------------------------------------------------


def _reflect_to_dominant(rs: RootSystem, v: np.ndarray) -> tuple[Weight | None, int]:
    """Dominant representative of a rho-shifted weight with the sign of the reflecting element.

    Returns (None, 0) if the weight lies on a wall (its contribution cancels).
    """
    sign = 1
    v = v.copy()
    while True:
        if np.any(v == 0):
            return None, 0
        neg = np.where(v < 0)[0]
        if len(neg) == 0:
            return tuple(int(x) for x in v), sign
        i = int(neg[0])
        v = v - v[i] * rs.cartan[:, i]
        sign = -sign


def tensor_with_weights(rs: RootSystem, hw: Weight, weights: dict[Weight, int]) -> dict[Weight, int]:
    """V(hw) (x) W for W given by its weight multiset."""
    lam_rho = np.array(hw, dtype=np.int64) + 1
    out: Counter[Weight] = Counter()
    for mu, m in weights.items():
        dom, sign = _reflect_to_dominant(rs, lam_rho + np.array(mu, dtype=np.int64))
        if dom is not None:
            out[tuple(x - 1 for x in dom)] += sign * m
    if any(v < 0 for v in out.values()):
        raise ArithmeticError("Brauer-Klimyk produced a negative multiplicity")
    return {w: m for w, m in sorted(out.items()) if m != 0}


def tensor_decompose(V: WeightMultiset, W: WeightMultiset) -> dict[Weight, int]:
    """Decompose V (x) W into irreducibles, V irreducible with known highest weight."""
    if V.highest is None:
        raise NotIrreducible("V must be presented by its highest weight")
    if V.rs is not W.rs and not np.array_equal(V.rs.cartan, W.rs.cartan):
        raise ValueError("representations of different groups")
    return tensor_with_weights(V.rs, V.highest, W.weights)


def tensor_power_step(rs: RootSystem, current: dict[Weight, int], W: WeightMultiset) -> dict[Weight, int]:
    out: Counter[Weight] = Counter()
    for lam, mult in current.items():
        for nu, m in tensor_with_weights(rs, lam, W.weights).items():
            out[nu] += mult * m
    return {w: m for w, m in sorted(out.items()) if m != 0}


def _zero(rs: RootSystem) -> Weight:
    return (0,) * rs.rank


def invariant_moments(V: WeightMultiset, kmax: int) -> list[int]:
    """dim (V^{(x)k})^G for k = 0..kmax."""
    rs = V.rs
    z = _zero(rs)
    current = {z: 1}
    out = [1]
    for _ in range(kmax):
        current = tensor_power_step(rs, current, V)
        out.append(current.get(z, 0))
    return out


def invariant_moment(V: WeightMultiset, k: int) -> int:
    return invariant_moments(V, k)[k]


def mixed_moment(V: WeightMultiset, a: int, b: int) -> int:
    """dim (V^{(x)a} (x) V*^{(x)b})^G."""
    rs = V.rs
    current = {_zero(rs): 1}
    Vd = V.dual()
    for _ in range(a):
        current = tensor_power_step(rs, current, V)
    for _ in range(b):
        current = tensor_power_step(rs, current, Vd)
    return current.get(_zero(rs), 0)


@lru_cache(maxsize=None)
def haar_moments(type_label: str, rep: str, kmax: int) -> tuple[int, ...]:
    rs = rootsys.build(type_label)
    return tuple(invariant_moments(representation(rs, rep), kmax))


# --- principal sl_2 -----------------------------------------------------------------


def principal_grades(V: WeightMultiset) -> Counter[int]:
    """Multiplicity of each eigenvalue <mu, 2 rho^vee> of the principal semisimple element."""
    c = V.rs.rho_check_2
    grades: Counter[int] = Counter()
    for w, m in V.weights.items():
        grades[int(np.dot(c, w))] += m
    return grades


def principal_strings(V: WeightMultiset) -> list[int | Fraction]:
    """The l_i with V = sum Sym^{2 l_i}(St) under a principal sl_2, largest first.

    Odd-dimensional strings give integer l_i; even-dimensional ones give
    half-integers (returned as Fractions).
    """
    grades = principal_grades(V)
    if not grades:
        return []
    top = max(grades)
    out: list[int | Fraction] = []
    for g in range(top, -1, -1):
        count = grades.get(g, 0) - grades.get(g + 2, 0)
        if count < 0:
            raise NotSL2Decomposable(f"negative string count at grade {g}")
        ell: int | Fraction = g // 2 if g % 2 == 0 else Fraction(g, 2)
        out.extend([ell] * count)
    if sum(2 * ell + 1 for ell in out) != V.dim:
        raise NotSL2Decomposable("strings do not exhaust the representation")
    return out
