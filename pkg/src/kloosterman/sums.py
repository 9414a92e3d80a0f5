"""Kloosterman sums Kl(a) = (-1)^{n-1} sum_{x_1...x_n = a} prod chi_i(x_i) psi(sum c_i x_i).

Two independent table builders are provided: ``table_naive`` visits every
tuple of (F_q^x)^n once, ``table_convolution`` uses the fact that the table
is the n-fold convolution over the cyclic group F_q^x (indexed by discrete
log) of the factor functions x -> chi_i(x) psi(c_i x), and evaluates it with
FFTs of length q - 1.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, replace

import numpy as np

from ._backend import kernels
from .characters import AdditiveCharacter, MultiplicativeCharacter
from .field import ZERO_LOG, FieldElement, FieldSpec

DEFAULT_BUDGET = 10**9
N_CHUNKS = 64


class SumError(ValueError):
    pass


class ZeroArgument(SumError):
    pass


class BudgetExceeded(SumError):
    pass


class NotReal(SumError):
    pass


@dataclass(frozen=True, eq=False)
class KloostermanSpec:
    n: int
    field: FieldSpec
    coeffs: tuple[FieldElement, ...]
    chars: tuple[MultiplicativeCharacter, ...]

    def __post_init__(self):
        if self.n < 1:
            raise SumError("n must be >= 1")
        if len(self.coeffs) != self.n or len(self.chars) != self.n:
            raise SumError("need exactly n coefficients and n characters")
        if any(c.is_zero() for c in self.coeffs):
            raise SumError("linear form coefficients must be nonzero")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def scale(self) -> float:
        """q^{(n-1)/2}, the normalizing factor to weight zero."""
        return float(self.q) ** ((self.n - 1) / 2)

    @property
    def trivial_chars(self) -> bool:
        return all(ch.is_trivial for ch in self.chars)

    @property
    def sign(self) -> int:
        return -1 if self.n % 2 == 0 else 1

    def factor_matrix(self) -> np.ndarray:
        """Row i: chi_i(g^j) psi(c_i g^j) for j = 0..q-2."""
        psi = AdditiveCharacter(self.field)
        rows = [ch.by_log() * psi.by_log(c.log) for c, ch in zip(self.coeffs, self.chars)]
        return np.ascontiguousarray(np.vstack(rows), dtype=np.complex128)

    def with_unit_coeffs(self) -> KloostermanSpec:
        return replace(self, coeffs=tuple(self.field.one() for _ in range(self.n)))

    def describe(self) -> dict:
        return {
            "p": self.field.p,
            "k": self.field.k,
            "n": self.n,
            "coeffs": [self.field.to_int(c) for c in self.coeffs],
            "chi": [ch.exponent for ch in self.chars],
        }


def make_spec(
    field: FieldSpec,
    n: int,
    coeffs: Sequence[int | FieldElement] | None = None,
    chi: Sequence[int] | None = None,
) -> KloostermanSpec:
    """Convenience constructor; integer coefficients use the field's integer encoding."""
    if coeffs is None:
        coeffs = [1] * n
    elems = tuple(c if isinstance(c, FieldElement) else field.from_int(int(c)) for c in coeffs)
    if chi is None:
        chi = [0] * n
    chars = tuple(MultiplicativeCharacter(field, int(m)) for m in chi)
    return KloostermanSpec(n, field, elems, chars)


@dataclass(frozen=True, eq=False)
class SumTable:
    """Kl(a) for every a in F_q^x, indexed by discrete log of a.

    ``raw`` always holds the unnormalized sums; ``values`` honours the
    ``normalized`` flag.
    """

    spec: KloostermanSpec
    raw: np.ndarray
    normalized: bool = False

    @property
    def values(self) -> np.ndarray:
        return self.raw / self.spec.scale if self.normalized else self.raw

    def normalize(self) -> SumTable:
        return replace(self, normalized=True)

    def __getitem__(self, a: FieldElement) -> complex:
        if a.log == ZERO_LOG:
            raise ZeroArgument("Kl(0) is not defined")
        return complex(self.values[a.log])

    def to_json(self) -> dict:
        doc = self.spec.describe()
        doc["normalized"] = self.normalized
        vals = self.values
        doc["values"] = [
            {"a": j, "re": float(v.real), "im": float(v.imag)} for j, v in enumerate(vals)
        ]
        return doc


def chunk_size(N: int) -> int:
    """Fixed x_1-chunk length; depends on q only, never on the thread count."""
    return max(1, -(-N // N_CHUNKS))


def kloosterman(spec: KloostermanSpec, a: FieldElement) -> complex:
    """Kl(a) by iterating x_1..x_{n-1} and solving for x_n; O(q^{n-1})."""
    if a.log == ZERO_LOG:
        raise ZeroArgument("Kl(0) is not defined")
    return spec.sign * kernels.single_sum(spec.factor_matrix(), a.log)


def table_naive(spec: KloostermanSpec, budget: int = DEFAULT_BUDGET, threads: int = 1) -> SumTable:
    """One full pass over (F_q^x)^n, bucketed by the product."""
    N = spec.field.order
    work = N**spec.n
    if work > budget:
        raise BudgetExceeded(f"(q-1)^n = {work} exceeds budget {budget}")
    out = kernels.naive_table(spec.factor_matrix(), chunk_size(N), threads)
    return SumTable(spec, spec.sign * out)


def table_convolution(spec: KloostermanSpec) -> SumTable:
    """n-fold cyclic convolution over Z/(q-1), evaluated by FFT."""
    f = spec.factor_matrix()
    transformed = np.fft.fft(f, axis=1)
    prod = transformed[0].copy()
    for row in transformed[1:]:
        prod *= row
    out = np.fft.ifft(prod)
    return SumTable(spec, spec.sign * out)


def build_table(spec: KloostermanSpec, method: str = "conv", budget: int = DEFAULT_BUDGET, threads: int = 1) -> SumTable:
    if method == "naive":
        return table_naive(spec, budget=budget, threads=threads)
    if method == "conv":
        return table_convolution(spec)
    raise SumError(f"unknown method {method!r}")


@dataclass(frozen=True)
class WeilReport:
    max_ratio: float
    bound: int
    passed: bool

    def to_json(self) -> dict:
        return {"max_ratio": self.max_ratio, "bound": self.bound, "pass": self.passed}


def weil_report(table: SumTable) -> WeilReport:
    ratio = float(np.max(np.abs(table.raw))) / table.spec.scale
    n = table.spec.n
    return WeilReport(ratio, n, ratio <= n + 1e-6)


def _require_kl2(table: SumTable) -> None:
    if table.spec.n != 2 or not table.spec.trivial_chars:
        raise SumError("angles need n = 2 with trivial characters")


def angles(table: SumTable) -> np.ndarray:
    """theta(a) in [0, pi] with 2 cos(theta) = Kl_2(a)/sqrt(q), for all a by log."""
    _require_kl2(table)
    t = table.raw / table.spec.scale
    if np.max(np.abs(t.imag), initial=0.0) > 1e-8:
        raise NotReal("Kl_2 values have a non-negligible imaginary part")
    return np.arccos(np.clip(t.real / 2.0, -1.0, 1.0))


def angle(table: SumTable, a: FieldElement) -> float:
    _require_kl2(table)
    if a.log == ZERO_LOG:
        raise ZeroArgument("Kl(0) is not defined")
    t = table.raw[a.log] / table.spec.scale
    if abs(t.imag) > 1e-8:
        raise NotReal(f"Kl_2(a) = {t} is not real")
    return math.acos(max(-1.0, min(1.0, t.real / 2.0)))


def conj_symmetry_check(table: SumTable) -> bool:
    """conj Kl(a) == Kl((-1)^n a) for trivial characters."""
    spec = table.spec
    if not spec.trivial_chars:
        raise SumError("conjugation symmetry is stated for trivial characters")
    F = spec.field
    N = F.order
    shift = 0 if (spec.n % 2 == 0 or F.p == 2) else N // 2
    partner = np.roll(table.raw, -shift)
    return bool(np.max(np.abs(np.conj(table.raw) - partner)) <= 1e-9 * spec.scale)


def coeff_covariance_check(spec: KloostermanSpec, a: FieldElement) -> bool:
    """Kl_{c,chi}(a) == (prod chi_i(c_i))^{-1} Kl_{1,chi}(a prod c_i)."""
    F = spec.field
    lhs = kloosterman(spec, a)
    prod_c = F.one()
    twist = 1 + 0j
    for c, ch in zip(spec.coeffs, spec.chars):
        prod_c = prod_c * c
        twist *= ch(c)
    rhs = kloosterman(spec.with_unit_coeffs(), a * prod_c) / twist
    return abs(lhs - rhs) <= 1e-9 * spec.scale
