"""The simple wild parameter: Coxeter action on the p-torsion of the dual torus.

Cox acts on X_*(T^) (x) F_p, here the coroot lattice of the dual group in the
simple-coroot basis mod p (isomorphic to the cocharacter lattice mod p as
soon as p does not divide the connection index, which divides #W).  For
p not dividing #W the primitive h-th roots of unity of F_p-bar form Galois
orbits of size d = ord_p(h); the kernel of one such minimal polynomial
evaluated at Cox is the module T(zeta).  The Swan conductor of the adjoint
representation is then the number of roots that are nontrivial on T(zeta),
each contributing break 1/h.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import polyfp, repweights, rootsys
from .rootsys import RootSystem


class BadPrime(ValueError):
    pass


class NonUniqueSubmodule(ArithmeticError):
    pass


class NonIntegerSwan(ArithmeticError):
    pass


# --- linear algebra mod p -------------------------------------------------------------


def _modp(M, p: int) -> list[list[int]]:
    return [[int(x) % p for x in row] for row in np.asarray(M)]


def hessenberg_charpoly(M, p: int) -> list[int]:
    """det(X I - M) over F_p, low degree first, via reduction to upper Hessenberg form."""
    H = _modp(M, p)
    n = len(H)
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(H[j + 1][j], -1, p)
        for i in range(j + 2, n):
            u = H[i][j] * inv % p
            if not u:
                continue
            for c in range(n):
                H[i][c] = (H[i][c] - u * H[j + 1][c]) % p
            for r in range(n):
                H[r][j + 1] = (H[r][j + 1] + u * H[r][i]) % p
    # charpoly of the leading m x m block, recursively in m
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        cur = polyfp.mul([(-H[m - 1][m - 1]) % p, 1], polys[m - 1], p)
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            term = polyfp.scale(polys[i - 1], prod * H[i - 1][m - 1], p)
            cur = polyfp.sub(cur, term, p)
        polys.append(cur)
    return polys[n]


def matmul_mod(A: list[list[int]], B: list[list[int]], p: int) -> list[list[int]]:
    n, m = len(A), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) % p for j in range(m)] for i in range(n)]


def poly_at_matrix(f: list[int], M: list[list[int]], p: int) -> list[list[int]]:
    n = len(M)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(f):
        acc = matmul_mod(acc, M, p)
        for i in range(n):
            acc[i][i] = (acc[i][i] + c) % p
    return acc


def nullspace_mod(M: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {v : M v = 0} over F_p, from the reduced row echelon form."""
    A = [row[:] for row in M]
    rows, cols = len(A), len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                u = A[i][c]
                A[i] = [(x - u * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-A[i][fc]) % p
        basis.append(v)
    return basis


# --- the wild parameter ---------------------------------------------------------------


@dataclass
class WildParameter:
    rs: RootSystem
    p: int
    cox_mod_p: list[list[int]]
    d: int
    charpoly: list[int]
    factors: list[tuple[list[int], int]]
    zeta_poly: list[int]
    t_zeta_basis: list[list[int]]
    p_divides_W: bool = False
    qualifying: list[list[int]] = field(default_factory=list)

    @property
    def h(self) -> int:
        return self.rs.h

    def to_json(self) -> dict:
        return {
            "type": self.rs.type_label,
            "p": self.p,
            "h": self.h,
            "d": self.d,
            "p_divides_W": self.p_divides_W,
            "cox_mod_p": self.cox_mod_p,
            "charpoly": self.charpoly,
            "factors": [{"poly": f, "mult": e} for f, e in self.factors],
            "zeta_minpoly": self.zeta_poly,
            "t_zeta_basis": self.t_zeta_basis,
        }


def construct(rs: RootSystem, p: int, seed: int = 0, strict: bool = True) -> WildParameter:
    """Build T(zeta) for a prime p with p not dividing #W.

    ``strict=False`` admits p | #W as long as p does not divide h; the
    construction still goes through whenever the chosen factor is simple.
    """
    if not polyfp.is_prime(p):
        raise BadPrime(f"{p} is not prime")
    h = rs.h
    divides_w = rs.weyl_order % p == 0
    if h % p == 0:
        raise BadPrime(f"p = {p} divides h = {h}: no primitive h-th roots of unity in characteristic p")
    if divides_w and strict:
        raise BadPrime(f"p = {p} divides #W = {rs.weyl_order}")
    cox = _modp(rootsys.coxeter_matrix(rs), p)
    cp = hessenberg_charpoly(cox, p)
    if cp != polyfp.trim(rootsys.int_charpoly(rootsys.coxeter_matrix(rs)), p):
        raise ArithmeticError("mod-p charpoly disagrees with the integer charpoly")
    d = polyfp.multiplicative_order(p, h)
    factors = polyfp.factor(cp, p, seed=seed)
    qualifying = [
        (f, e) for f, e in factors if polyfp.deg(f) == d and polyfp.frobenius_orbit_order(f, h, p)
    ]
    if not qualifying:
        raise ArithmeticError(f"no degree-{d} factor with primitive {h}-th roots")
    f, e = min(qualifying, key=lambda t: t[0])
    if e != 1:
        raise NonUniqueSubmodule(f"factor {f} has multiplicity {e}")
    basis = nullspace_mod(poly_at_matrix(f, cox, p), p)
    if len(basis) != d:
        raise NonUniqueSubmodule(f"dim T(zeta) = {len(basis)}, expected {d}")
    return WildParameter(rs, p, cox, d, cp, factors, f, basis, divides_w, [g for g, _ in qualifying])


def _trivial_roots(rs: RootSystem, basis: list[list[int]], p: int) -> list[int]:
    B = np.array(basis, dtype=np.int64).T  # rank x d
    vals = (rs.roots @ rs.cartan.T @ B) % p  # functional A @ alpha evaluated on coroot coords
    return [int(i) for i in np.where(~vals.any(axis=1))[0]]


def roots_nontrivial_on_tzeta(wp: WildParameter) -> bool:
    return not _trivial_roots(wp.rs, wp.t_zeta_basis, wp.p)


def submodule_for(wp: WildParameter, f: list[int]) -> list[list[int]]:
    return nullspace_mod(poly_at_matrix(f, wp.cox_mod_p, wp.p), wp.p)


def swan_count(rs: RootSystem, basis: list[list[int]], p: int) -> tuple[int, int]:
    """(Swan, dim of the wild-inertia invariants) for the adjoint representation."""
    trivial = _trivial_roots(rs, basis, p)
    nontrivial = len(rs.roots) - len(trivial)
    if nontrivial % rs.h:
        raise NonIntegerSwan(f"{nontrivial} roots with break 1/{rs.h}")
    return nontrivial // rs.h, rs.rank + len(trivial)


def swan_from_breaks(wp: WildParameter) -> int:
    return swan_count(wp.rs, wp.t_zeta_basis, wp.p)[0]


def invariants_dim(wp: WildParameter) -> int:
    return swan_count(wp.rs, wp.t_zeta_basis, wp.p)[1]


def all_factors_same_swan(wp: WildParameter) -> bool:
    swans = {swan_count(wp.rs, submodule_for(wp, f), wp.p)[0] for f in wp.qualifying}
    return len(swans) == 1


def cox_tame_no_invariants(rs: RootSystem) -> bool:
    M = rootsys.coxeter_matrix(rs)
    return rootsys.int_det(M - np.eye(rs.rank, dtype=np.int64)) != 0


def smallest_good_primes(rs: RootSystem, count: int = 3) -> list[int]:
    out = []
    q = 2
    while len(out) < count:
        if polyfp.is_prime(q) and rs.weyl_order % q:
            out.append(q)
        q += 1
    return out


@dataclass(frozen=True)
class PGL2Bound:
    bound: Fraction
    r_s: int
    strings: tuple
    excluded: bool
    applicable: bool

    def to_json(self) -> dict:
        return {
            "bound": str(self.bound),
            "r_s": self.r_s,
            "strings": [str(x) for x in self.strings],
            "excluded": self.excluded,
            "applicable": self.applicable,
        }


def pgl2_swan_bound(rs_dual: RootSystem, p: int) -> PGL2Bound:
    """Lower bound sum(l - floor(l/p)) on Swan of V_qm under principal PGL2 monodromy."""
    strings = tuple(repweights.principal_strings(repweights.quasi_minuscule(rs_dual)))
    bound = sum((Fraction(ell) - (Fraction(ell) // p) for ell in strings), Fraction(0))
    applicable = rs_dual.rank >= 2
    return PGL2Bound(bound, rs_dual.r_s, strings, applicable and bound > rs_dual.r_s, applicable)
