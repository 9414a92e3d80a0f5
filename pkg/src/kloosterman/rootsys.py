"""Root systems of the simple types A_n..G_2 in exact integer arithmetic.

Conventions
-----------
* Bourbaki numbering of simple roots.
* ``cartan[i, j] = <alpha_j, alpha_i^vee>``, so row i belongs to the i-th
  simple coroot.
* Roots are integer vectors in the simple-root basis, coroots in the
  simple-coroot basis, weights in the fundamental-weight basis (Dynkin
  labels).  The pairing of a root ``a`` with a coroot ``b`` is ``b @ cartan @ a``.
* In simply-laced types every root counts as both long and short, so
  ``r_s == r_l == rank`` there.

Weyl groups are never enumerated; every orbit is a BFS over vectors.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np


class InvalidType(ValueError):
    pass


_DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "G2": (2, 6),
}


def parse_type(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", label)
    if not m:
        raise InvalidType(f"cannot parse root system type {label!r}")
    letter, rank = m.group(1).upper(), int(m.group(2))
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[letter]
    if not ok:
        raise InvalidType(f"no simple root system of type {letter}{rank}")
    return letter, rank


def cartan_matrix(letter: str, r: int) -> np.ndarray:
    A = 2 * np.eye(r, dtype=np.int64)

    def link(i: int, j: int, a_ij: int = -1, a_ji: int = -1) -> None:
        A[i, j], A[j, i] = a_ij, a_ji

    if letter in "ABC":
        for i in range(r - 1):
            link(i, i + 1)
        if letter == "B":
            link(r - 2, r - 1, -1, -2)  # alpha_r short
        elif letter == "C":
            link(r - 2, r - 1, -2, -1)  # alpha_r long
    elif letter == "D":
        for i in range(r - 2):
            link(i, i + 1)
        link(r - 3, r - 1)
    elif letter == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, r - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -1, -2)  # alpha_3, alpha_4 short
        link(2, 3)
    elif letter == "G":
        link(0, 1, -3, -1)  # alpha_1 short
    return A


def weyl_degrees(letter: str, r: int) -> tuple[int, ...]:
    if letter == "A":
        return tuple(range(2, r + 2))
    if letter in "BC":
        return tuple(range(2, 2 * r + 1, 2))
    if letter == "D":
        return tuple(sorted(list(range(2, 2 * r - 1, 2)) + [r]))
    return _DEGREES[f"{letter}{r}"]


def _symmetrizer(A: np.ndarray) -> list[Fraction]:
    """d_i with d_i A_ij = d_j A_ji, normalised so the smallest is 1."""
    r = A.shape[0]
    d: list[Fraction | None] = [None] * r
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(r):
            if j != i and A[i, j] != 0 and d[j] is None:
                d[j] = d[i] * int(A[i, j]) / int(A[j, i])
                todo.append(j)
    lo = min(d)
    return [x / lo for x in d]


@dataclass(frozen=True, eq=False)
class RootSystem:
    letter: str
    rank: int
    cartan: np.ndarray = field(repr=False)
    roots: np.ndarray = field(repr=False)
    coroots: np.ndarray = field(repr=False)
    long: np.ndarray = field(repr=False)
    norms: tuple[int, ...] = field(repr=False)

    @property
    def type_label(self) -> str:
        return f"{self.letter}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label})"

    # basic invariants ---------------------------------------------------------

    @cached_property
    def simply_laced(self) -> bool:
        return bool(np.all(self.long))

    @cached_property
    def short(self) -> np.ndarray:
        return np.ones_like(self.long) if self.simply_laced else ~self.long

    @cached_property
    def heights(self) -> np.ndarray:
        return self.roots.sum(axis=1)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {tuple(int(c) for c in v): i for i, v in enumerate(self.roots)}

    @cached_property
    def coroot_index(self) -> dict[tuple[int, ...], int]:
        return {tuple(int(c) for c in v): i for i, v in enumerate(self.coroots)}

    @cached_property
    def simple(self) -> list[int]:
        return [self.index[tuple(int(x) for x in row)] for row in np.eye(self.rank, dtype=np.int64)]

    @cached_property
    def theta(self) -> int:
        """Index of the highest root."""
        return int(np.argmax(self.heights))

    @cached_property
    def gamma(self) -> int:
        """Index of the dominant short root (the highest short root)."""
        cand = np.where(self.short)[0]
        return int(cand[np.argmax(self.heights[cand])])

    @property
    def h(self) -> int:
        return len(self.roots) // self.rank

    @cached_property
    def r_l(self) -> int:
        return int(sum(self.long[i] for i in self.simple))

    @cached_property
    def r_s(self) -> int:
        return int(sum(self.short[i] for i in self.simple))

    @cached_property
    def weyl_order(self) -> int:
        out = 1
        for d in weyl_degrees(self.letter, self.rank):
            out *= d
        return out

    @cached_property
    def pairings(self) -> np.ndarray:
        """P[i, j] = <root_i, coroot_j>."""
        return (self.roots @ self.cartan.T) @ self.coroots.T

    def root(self, i: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.roots[i])

    def is_simple(self, i: int) -> bool:
        return int(self.heights[i]) == 1

    def is_positive(self, i: int) -> bool:
        return int(self.heights[i]) > 0

    def negative(self, i: int) -> int:
        return self.index[tuple(-int(c) for c in self.roots[i])]

    def to_weight(self, vec) -> np.ndarray:
        """Root-basis vector -> Dynkin labels."""
        return self.cartan @ np.asarray(vec, dtype=np.int64)

    @cached_property
    def rho_check_2(self) -> np.ndarray:
        """Sum of positive coroots, in the simple-coroot basis."""
        return self.coroots[self.heights > 0].sum(axis=0)

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "cartan": self.cartan.tolist(),
            "roots": [
                {"vector": self.root(i), "length": "long" if self.long[i] else "short"}
                for i in range(len(self.roots))
            ],
            "theta": list(self.root(self.theta)),
            "gamma": list(self.root(self.gamma)),
            "h": self.h,
            "r_s": self.r_s,
            "r_l": self.r_l,
            "rank": self.rank,
            "num_roots": len(self.roots),
        }


def _close_roots(A: np.ndarray) -> list[tuple[int, ...]]:
    r = A.shape[0]
    simple = [tuple(int(x) for x in row) for row in np.eye(r, dtype=np.int64)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        v = np.array(queue.popleft(), dtype=np.int64)
        pair = A @ v
        for i in range(r):
            w = v.copy()
            w[i] -= pair[i]
            t = tuple(int(x) for x in w)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen, key=lambda t: (sum(t), t))


@lru_cache(maxsize=None)
def build(type_label: str, rank: int | None = None) -> RootSystem:
    """Root system of the given type, e.g. ``build("G2")`` or ``build("B", 3)``."""
    letter, r = parse_type(type_label if rank is None else f"{type_label}{rank}")
    return from_cartan(letter, cartan_matrix(letter, r))


def from_cartan(letter: str, A: np.ndarray) -> RootSystem:
    """Root system for an explicit Cartan matrix of the given type (any node order)."""
    r = A.shape[0]
    d = _symmetrizer(A)
    roots = _close_roots(A)
    norms = []
    coroots = []
    for a in roots:
        # (alpha, alpha)/2 with (alpha_i, alpha_j) = d_i A_ij
        norm = sum(Fraction(a[i] * a[j]) * d[i] * int(A[i, j]) for i in range(r) for j in range(r)) / 2
        co = [a[j] * d[j] / norm for j in range(r)]
        if any(c.denominator != 1 for c in co):
            raise ArithmeticError("non-integral coroot")
        coroots.append([int(c) for c in co])
        norms.append(norm)
    top = max(norms)
    long = np.array([x == top for x in norms])
    scale = min(norms)
    return RootSystem(
        letter,
        r,
        A,
        np.array(roots, dtype=np.int64),
        np.array(coroots, dtype=np.int64),
        long,
        tuple(int(x / scale) for x in norms),
    )


ALL_TYPES: tuple[str, ...] = tuple(
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"C{n}" for n in range(3, 9)]
    + [f"D{n}" for n in range(4, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)
"""Every simple type of rank <= 8 up to isomorphism (C2 = B2 omitted)."""


def pairing(rs: RootSystem, alpha, beta_coroot) -> int:
    """<alpha, beta^vee> for a root-basis vector and a coroot-basis vector."""
    return int(np.asarray(beta_coroot, dtype=np.int64) @ rs.cartan @ np.asarray(alpha, dtype=np.int64))


def coroot_of(rs: RootSystem, alpha) -> tuple[int, ...]:
    return tuple(int(c) for c in rs.coroots[rs.index[tuple(int(x) for x in alpha)]])


def phi_level(rs: RootSystem, beta, n: int) -> set[tuple[int, ...]]:
    """Phi^beta_n = {alpha : <alpha, beta^vee> = n} for a root ``beta`` (vector)."""
    j = rs.index[tuple(int(x) for x in beta)]
    col = rs.pairings[:, j]
    return {rs.root(i) for i in np.where(col == n)[0]}


def phi_level_indices(rs: RootSystem, beta_index: int, n: int, at_least: bool = False) -> list[int]:
    col = rs.pairings[:, beta_index]
    mask = col >= n if at_least else col == n
    return [int(i) for i in np.where(mask)[0]]


def _reflect(vec: np.ndarray, i: int, space: str, A: np.ndarray) -> np.ndarray:
    w = vec.copy()
    if space == "root":
        w[i] -= (A @ vec)[i]
    elif space == "coroot":
        w[i] -= (A.T @ vec)[i]
    elif space == "weight":
        w = w - vec[i] * A[:, i]
    else:
        raise ValueError(f"unknown space {space!r}")
    return w


def weyl_orbit(rs: RootSystem, vec, space: str = "root", generators: list[int] | None = None) -> set[tuple[int, ...]]:
    """Orbit of ``vec`` under W (or the subgroup generated by ``generators``).

    ``space`` selects the basis of ``vec``: "root", "coroot" or "weight".
    """
    gens = range(rs.rank) if generators is None else generators
    start = tuple(int(x) for x in vec)
    seen = {start}
    queue = deque([start])
    while queue:
        v = np.array(queue.popleft(), dtype=np.int64)
        for i in gens:
            t = tuple(int(x) for x in _reflect(v, i, space, rs.cartan))
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def parabolic_orbit_index(rs: RootSystem) -> int:
    """#(W_theta / W_theta cap W_gamma), the size of the W_theta-orbit of gamma."""
    theta_pair = rs.cartan @ rs.roots[rs.theta]
    gens = [i for i in range(rs.rank) if theta_pair[i] == 0]
    return len(weyl_orbit(rs, rs.roots[rs.gamma], "root", gens))


def simple_reflection_matrix(rs: RootSystem, i: int) -> np.ndarray:
    """s_i acting on the coroot lattice in the simple-coroot basis."""
    S = np.eye(rs.rank, dtype=np.int64)
    S[i, :] -= rs.cartan[:, i]
    return S


def coxeter_matrix(rs: RootSystem) -> np.ndarray:
    """s_1 s_2 ... s_r on the coroot lattice (simple-coroot basis)."""
    M = np.eye(rs.rank, dtype=np.int64)
    for i in range(rs.rank):
        M = M @ simple_reflection_matrix(rs, i)
    return M


def matrix_order(M: np.ndarray, limit: int = 1000) -> int:
    eye = np.eye(M.shape[0], dtype=np.int64)
    P = M.copy()
    for k in range(1, limit + 1):
        if np.array_equal(P, eye):
            return k
        P = P @ M
    raise ArithmeticError("matrix order exceeds limit")


def int_det(M: np.ndarray) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = [[int(x) for x in row] for row in M]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_charpoly(M: np.ndarray) -> list[int]:
    """Characteristic polynomial det(X I - M), coefficients low degree first (Faddeev-LeVerrier)."""
    n = M.shape[0]
    A = [[Fraction(int(x)) for x in row] for row in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = A @ M_{k-1} + c_{n-k+1} I
        prev = Mk
        Mk = [[sum(A[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            Mk[i][i] += coeffs[n - k + 1]
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("non-integral characteristic polynomial")
        out.append(int(c))
    return out


_DUAL_LETTER = {"B": "C", "C": "B"}


def dual(rs: RootSystem) -> RootSystem:
    """Langlands dual: Cartan transpose, roots and coroots exchanged."""
    letter = _DUAL_LETTER.get(rs.letter, rs.letter)
    d = build(letter, rs.rank)
    if np.array_equal(d.cartan, rs.cartan.T):
        return d
    # F4 and G2: same type with the node order reversed
    key = (letter, rs.cartan.T.tobytes())
    if key not in _dual_cache:
        _dual_cache[key] = from_cartan(letter, np.ascontiguousarray(rs.cartan.T))
    return _dual_cache[key]


_dual_cache: dict = {}
