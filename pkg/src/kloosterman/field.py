"""Finite fields F_{p^k} in discrete-log representation.

Elements are stored by their discrete logarithm with respect to the class of
X in F_p[X]/(modulus), which is a multiplicative generator by construction;
log -1 encodes zero.  Multiplication is addition of logs, addition goes
through the Zech table ``Z`` defined by g^{Z(j)} = 1 + g^j.

Integers ``0 <= v < q`` are used as the external encoding of elements: the
base-p digits of ``v`` are the polynomial coefficients, lowest degree first.
For a prime field this is just the residue.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from . import polyfp

MAX_Q = 1 << 24
ZERO_LOG = -1


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class TableTooLarge(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


@dataclass(frozen=True, eq=False)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]
    exp_table: np.ndarray = dc_field(repr=False)
    log_table: np.ndarray = dc_field(repr=False)
    zech: np.ndarray = dc_field(repr=False)
    trace_by_log: np.ndarray = dc_field(repr=False)
    generator_index: int = 1

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def order(self) -> int:
        """Size of the multiplicative group, q - 1."""
        return self.q - 1

    # construction of elements -------------------------------------------------

    def zero(self) -> FieldElement:
        return FieldElement(self, ZERO_LOG)

    def one(self) -> FieldElement:
        return FieldElement(self, 0)

    def gen(self) -> FieldElement:
        return FieldElement(self, 1 % self.order)

    def from_log(self, j: int) -> FieldElement:
        if j == ZERO_LOG:
            return self.zero()
        return FieldElement(self, j % self.order)

    def from_int(self, v: int) -> FieldElement:
        """Element whose base-p digits are ``v``'s polynomial coefficients."""
        if not 0 <= v < self.q:
            raise FieldError(f"integer encoding {v} outside [0, {self.q})")
        return FieldElement(self, int(self.log_table[v]))

    def to_int(self, x: FieldElement) -> int:
        return 0 if x.log == ZERO_LOG else int(self.exp_table[x.log])

    def elements(self) -> list[FieldElement]:
        return [self.zero()] + [FieldElement(self, j) for j in range(self.order)]

    # arithmetic on logs -------------------------------------------------------

    def add_logs(self, i: int, j: int) -> int:
        if i == ZERO_LOG:
            return j
        if j == ZERO_LOG:
            return i
        z = int(self.zech[(j - i) % self.order])
        if z == ZERO_LOG:
            return ZERO_LOG
        return (i + z) % self.order

    def neg_log(self, i: int) -> int:
        if i == ZERO_LOG or self.p == 2:
            return i
        return (i + self.order // 2) % self.order

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(self, self.add_logs(x.log, y.log))

    def neg(self, x: FieldElement) -> FieldElement:
        return FieldElement(self, self.neg_log(x.log))

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.add(x, self.neg(y))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if x.log == ZERO_LOG or y.log == ZERO_LOG:
            return self.zero()
        return FieldElement(self, (x.log + y.log) % self.order)

    def inv(self, x: FieldElement) -> FieldElement:
        if x.log == ZERO_LOG:
            raise DivisionByZero("inverse of zero")
        return FieldElement(self, (-x.log) % self.order)

    def pow(self, x: FieldElement, m: int) -> FieldElement:
        if x.log == ZERO_LOG:
            if m < 0:
                raise DivisionByZero("negative power of zero")
            return self.one() if m == 0 else self.zero()
        return FieldElement(self, (x.log * m) % self.order)

    def trace(self, x: FieldElement) -> int:
        """Absolute trace to F_p, as an integer in [0, p)."""
        if x.log == ZERO_LOG:
            return 0
        return int(self.trace_by_log[x.log])

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec = dc_field(repr=False, compare=False)
    log: int

    def is_zero(self) -> bool:
        return self.log == ZERO_LOG

    def __add__(self, other: FieldElement) -> FieldElement:
        return self.field.add(self, other)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self.field.sub(self, other)

    def __neg__(self) -> FieldElement:
        return self.field.neg(self)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return self.field.mul(self, other)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self.field.mul(self, self.field.inv(other))

    def __pow__(self, m: int) -> FieldElement:
        return self.field.pow(self, m)

    def __int__(self) -> int:
        return self.field.to_int(self)


# --- construction --------------------------------------------------------------


def _is_generating(f: list[int], p: int) -> bool:
    """X generates (F_p[X]/f)^x, assuming f irreducible of degree k."""
    k = len(f) - 1
    order = p**k - 1
    x = [0, 1]
    return all(polyfp.powmod(x, order // r, f, p) != [1] for r in polyfp.prime_factors(order))


def find_modulus(p: int, k: int) -> list[int]:
    """Smallest generating irreducible monic polynomial of degree ``k``.

    Candidates are ordered lexicographically on their coefficient tuples,
    low-degree coefficient first.  Degree one is special-cased so that the
    generator of F_p is its smallest primitive root.
    """
    if k == 1:
        if p == 2:
            return [1, 1]
        for g in range(1, p):
            if all(pow(g, (p - 1) // r, p) != 1 for r in polyfp.prime_factors(p - 1)):
                return [(-g) % p, 1]
    for coeffs in itertools.product(range(p), repeat=k):
        if coeffs[0] == 0:
            continue
        f = list(coeffs) + [1]
        if polyfp.is_irreducible(f, p) and _is_generating(f, p):
            return f
    raise FieldError(f"no generating modulus of degree {k} over F_{p}")


def _mult_matrix(c_digits: np.ndarray, modulus: list[int], p: int) -> np.ndarray:
    """Matrix (acting on digit row vectors) of multiplication by the element c."""
    k = len(modulus) - 1
    rows = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        prod = polyfp.rem(polyfp.mul(polyfp.trim(e, p), polyfp.trim(list(c_digits), p), p), modulus, p)
        rows.append(prod + [0] * (k - len(prod)))
    return np.array(rows, dtype=np.int64)


def _build_exp_table(p: int, k: int, modulus: list[int]) -> np.ndarray:
    """exp[j] = integer encoding of X^j for j in [0, q-1).

    Built by doubling: the block [m, 2m) is the block [0, m) times X^m, which
    is one F_p-linear map on digit vectors.
    """
    q = p**k
    n = q - 1
    weights = p ** np.arange(k, dtype=np.int64)
    digits = np.zeros((n, k), dtype=np.int64)
    digits[0, 0] = 1
    filled = 1
    while filled < n:
        m = min(filled, n - filled)
        xm = polyfp.powmod([0, 1], filled, modulus, p)
        mat = _mult_matrix(np.array(xm + [0] * (k - len(xm))), modulus, p)
        digits[filled : filled + m] = (digits[:m] @ mat) % p
        filled += m
    return digits @ weights


def _trace_basis(p: int, k: int, modulus: list[int]) -> np.ndarray:
    """Tr(X^i) for i < k, as the trace of the multiplication-by-X^i matrix."""
    out = np.zeros(k, dtype=np.int64)
    for i in range(k):
        xi = polyfp.rem([0] * i + [1], modulus, p)
        mat = _mult_matrix(np.array(xi + [0] * (k - len(xi))), modulus, p)
        out[i] = int(np.trace(mat)) % p
    return out


def _digits(values: np.ndarray, p: int, k: int) -> np.ndarray:
    return (values[:, None] // (p ** np.arange(k, dtype=np.int64))[None, :]) % p


def _tables_from_modulus(p: int, k: int, modulus: list[int]):
    q = p**k
    exp_table = _build_exp_table(p, k, modulus)
    log_table = np.full(q, ZERO_LOG, dtype=np.int64)
    log_table[exp_table] = np.arange(q - 1, dtype=np.int64)
    if np.any(log_table[1:] == ZERO_LOG):
        raise FieldError("modulus root does not generate the multiplicative group")
    digits = _digits(exp_table, p, k)
    trace_by_log = (digits @ _trace_basis(p, k, modulus)) % p
    return exp_table, log_table, trace_by_log


def _zech_from_tables(p: int, exp_table: np.ndarray, log_table: np.ndarray) -> np.ndarray:
    d0 = exp_table % p
    plus_one = exp_table - d0 + (d0 + 1) % p
    return log_table[plus_one]


def _cache_path(cache_dir: Path, p: int, k: int) -> Path:
    return cache_dir / f"field_p{p}_k{k}.tbl"


def write_cache(path: Path, modulus: list[int], zech: np.ndarray) -> None:
    blob = np.asarray(modulus, dtype="<i4").tobytes() + np.asarray(zech, dtype="<i4").tobytes()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + f".{os.getpid()}.tmp")
    tmp.write_bytes(blob)
    os.replace(tmp, path)


def read_cache(path: Path, p: int, k: int) -> tuple[list[int], np.ndarray] | None:
    """Modulus (k+1 coefficients, low degree first) and Zech table, or None if unusable."""
    try:
        raw = np.frombuffer(path.read_bytes(), dtype="<i4")
    except OSError:
        return None
    if raw.size != (k + 1) + (p**k - 1):
        return None
    return [int(c) for c in raw[: k + 1]], raw[k + 1 :].astype(np.int64)


def default_cache_dir() -> Path:
    return Path(os.environ.get("KL_CACHE_DIR", ".kl-cache"))


@functools.lru_cache(maxsize=64)
def _make_field_cached(p: int, k: int, cache_dir: str | None) -> FieldSpec:
    path = _cache_path(Path(cache_dir), p, k) if cache_dir is not None else None
    cached = read_cache(path, p, k) if path is not None else None
    modulus = None
    if cached is not None:
        modulus, zech = cached
        if len(modulus) != k + 1 or modulus[-1] != 1 or not (
            polyfp.is_irreducible(modulus, p) and _is_generating(modulus, p)
        ):
            modulus = None
    if modulus is None:
        modulus = find_modulus(p, k)
        zech = None
    exp_table, log_table, trace_by_log = _tables_from_modulus(p, k, modulus)
    fresh = _zech_from_tables(p, exp_table, log_table)
    if zech is None or not np.array_equal(zech, fresh):
        zech = fresh
        if path is not None:
            try:
                write_cache(path, modulus, zech)
            except OSError:
                pass
    for arr in (exp_table, log_table, zech, trace_by_log):
        arr.setflags(write=False)
    return FieldSpec(p, k, tuple(modulus), exp_table, log_table, zech, trace_by_log)


def make_field(p: int, k: int = 1, cache_dir: str | os.PathLike | None | bool = None) -> FieldSpec:
    """Build (or load from the table cache) the field with p^k elements.

    ``cache_dir=None`` uses ``$KL_CACHE_DIR`` (default ``.kl-cache``);
    ``cache_dir=False`` disables the on-disk cache.
    """
    if not polyfp.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if p**k > MAX_Q:
        raise TableTooLarge(f"q = {p}^{k} exceeds the table limit 2^24")
    if cache_dir is False:
        cdir = None
    elif cache_dir is None or cache_dir is True:
        cdir = str(default_cache_dir())
    else:
        cdir = str(cache_dir)
    return _make_field_cached(p, k, cdir)


def prime_powers(limit: int) -> list[tuple[int, int]]:
    """All (p, k) with p^k <= limit, ordered by q."""
    out = []
    for q in range(2, limit + 1):
        fs = polyfp.prime_factors(q)
        if len(fs) == 1:
            p = fs[0]
            k = 0
            while p**k < q:
                k += 1
            out.append((p, k))
    return out
