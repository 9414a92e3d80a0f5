"""Additive and multiplicative characters of F_q with complex values.

The additive character is pinned to psi(x) = exp(2 pi i Tr(x) / p).  Both
kinds expose ``by_log()``, the vector of values at g^0, ..., g^{q-2}, which
is what the sum engine consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import ZERO_LOG, FieldElement, FieldSpec


@dataclass(frozen=True, eq=False)
class AdditiveCharacter:
    field: FieldSpec
    root_table: np.ndarray = dc_field(init=False, repr=False)

    def __post_init__(self):
        p = self.field.p
        roots = np.exp(2j * np.pi * np.arange(p) / p)
        # exact values where they are known, so psi(0) == 1 and psi over F_2 is real
        roots[0] = 1.0
        if p % 2 == 0:
            roots[p // 2] = -1.0
        roots.setflags(write=False)
        object.__setattr__(self, "root_table", roots)

    def __call__(self, x: FieldElement) -> complex:
        return complex(self.root_table[self.field.trace(x)])

    def by_log(self, shift: int = 0) -> np.ndarray:
        """psi(g^{shift + j}) for j = 0..q-2; ``shift`` is the log of a scalar c."""
        tr = np.roll(self.field.trace_by_log, -shift)
        return self.root_table[tr]


@dataclass(frozen=True, eq=False)
class MultiplicativeCharacter:
    field: FieldSpec
    exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.field.order)

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    def __call__(self, x: FieldElement) -> complex:
        if x.log == ZERO_LOG:
            return 0j
        return complex(self.by_log()[x.log])

    def by_log(self) -> np.ndarray:
        n = self.field.order
        if self.exponent == 0:
            return np.ones(n, dtype=np.complex128)
        # reduce m*j mod n before scaling so large q keeps full phase precision
        phase = (self.exponent * np.arange(n, dtype=np.int64)) % n
        return np.exp(2j * np.pi * phase / n)

    def conj(self) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self.field, -self.exponent)


def eval_add(psi: AdditiveCharacter, x: FieldElement) -> complex:
    return psi(x)


def eval_mul(chi: MultiplicativeCharacter, x: FieldElement) -> complex:
    return chi(x)


def parse_chi_list(text: str | None, field: FieldSpec, n: int) -> list[MultiplicativeCharacter]:
    """Parse the ``--chi 0,3,0`` notation; missing means all trivial."""
    if not text:
        return [MultiplicativeCharacter(field, 0) for _ in range(n)]
    exps = [int(t) for t in text.split(",")]
    if len(exps) != n:
        raise ValueError(f"expected {n} character exponents, got {len(exps)}")
    return [MultiplicativeCharacter(field, m) for m in exps]
