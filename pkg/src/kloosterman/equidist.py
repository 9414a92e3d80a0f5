"""Empirical trace statistics of Kloosterman sums against Haar-measure predictions.

Targets come from two lookup tables: Katz's list for the classical Kl_n and
the geometric monodromy of Kl for a dual group.  Theoretical moments are
multiplicities of the trivial representation (see ``repweights``); sums of
powers are accumulated with ``math.fsum`` so they do not depend on
evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import repweights, rootsys
from .sums import SumTable, angles

DEFAULT_A = 10.0
DEFAULT_B = 3.0
DEFAULT_BINS = 40


class Unlisted(LookupError):
    pass


@dataclass(frozen=True)
class MonodromyTarget:
    label: str
    type_label: str
    rep: str
    source: str
    mixed: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "type": self.type_label,
            "rep": self.rep,
            "source": self.source,
            "mixed": self.mixed,
            "note": self.note,
        }


def monodromy_target(n: int, p: int) -> MonodromyTarget:
    """Katz's monodromy group of Kl_n in characteristic p, with its defining representation."""
    src = "katz"
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        raise Unlisted("Kl_1 is a character; its monodromy is finite")
    if n % 2 == 0:
        rank = n // 2
        return MonodromyTarget(f"Sp{n}", "A1" if rank == 1 else f"C{rank}", "standard", src)
    if p != 2:
        return MonodromyTarget(f"SL{n}", f"A{n - 1}", "standard", src, mixed=True)
    if n == 7:
        return MonodromyTarget("G2", "G2", "standard", src, note="V7")
    if n == 3:
        raise Unlisted("n = 3, p = 2 is excluded")
    return MonodromyTarget(f"SO{n}", f"B{(n - 1) // 2}", "standard", src)


def monodromy_target_dual(type_label: str) -> MonodromyTarget:
    """Geometric monodromy of the Kloosterman sheaf of a simple adjoint dual group."""
    letter, r = rootsys.parse_type(type_label)
    src = "dual"
    note = "p > 2" + (", p > 3" if (letter, r) == ("B", 3) else "")
    if letter == "A":
        if r % 2 == 0:
            target = f"A{r}"
        else:
            target = "A1" if r == 1 else f"C{(r + 1) // 2}"
    elif letter == "C":
        target = f"C{r}"
    elif letter == "B":
        if r == 2:
            target = "C2"  # B2 = C2
        elif r == 3:
            target = "G2"
        else:
            target = f"B{r}"
    elif letter == "D":
        target = "G2" if r == 4 else f"B{r - 1}"
    elif letter == "E":
        target = "F4" if r == 6 else f"E{r}"
    elif letter == "F":
        target = "F4"
    elif letter == "G":
        target = "G2"
    else:
        raise Unlisted(type_label)
    return MonodromyTarget(target, target, "adjoint", src, note=note)


# --- moments --------------------------------------------------------------------------


def _normalized(table: SumTable) -> np.ndarray:
    return table.raw / table.spec.scale


def _cmean(z: np.ndarray) -> complex:
    n = len(z)
    return complex(math.fsum(z.real) / n, math.fsum(z.imag) / n)


def empirical_moments(table: SumTable, kmax: int) -> list[complex]:
    """m_k = mean over a of t(a)^k, k = 0..kmax, with t the normalized sum."""
    t = _normalized(table)
    out = []
    power = np.ones_like(t)
    for _ in range(kmax + 1):
        out.append(_cmean(power))
        power = power * t
    return out


def empirical_mixed(table: SumTable, a: int, b: int) -> complex:
    t = _normalized(table)
    return _cmean(t**a * np.conj(t) ** b)


@dataclass(frozen=True)
class MomentReport:
    k: int | tuple[int, int]
    empirical: complex
    theoretical: int
    q: int
    tolerance: float

    @property
    def error(self) -> float:
        return abs(self.empirical - self.theoretical)

    @property
    def passed(self) -> bool:
        return self.error <= self.tolerance

    def to_json(self) -> dict:
        return {
            "k": list(self.k) if isinstance(self.k, tuple) else self.k,
            "re": self.empirical.real,
            "im": self.empirical.imag,
            "theoretical": self.theoretical,
            "q": self.q,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def tolerance(q: int, n: int, k: int, A: float = DEFAULT_A) -> float:
    """A / sqrt(q) plus a rounding allowance for |t|^k <= n^k."""
    return A / math.sqrt(q) + 1e-9 * float(n) ** k


def theory_moments(target: MonodromyTarget, kmax: int) -> list[int]:
    return list(repweights.haar_moments(target.type_label, target.rep, kmax))


def theory_mixed(target: MonodromyTarget, a: int, b: int) -> int:
    rs = rootsys.build(target.type_label)
    return repweights.mixed_moment(repweights.representation(rs, target.rep), a, b)


def compare(table: SumTable, target: MonodromyTarget, kmax: int, A: float = DEFAULT_A) -> list[MomentReport]:
    """Per-moment verdicts; mixed targets get every (a, b) with a + b <= kmax."""
    q, n = table.spec.q, table.spec.n
    if target.mixed:
        out = []
        for total in range(kmax + 1):
            for a in range(total, -1, -1):
                b = total - a
                out.append(
                    MomentReport((a, b), empirical_mixed(table, a, b), theory_mixed(target, a, b), q,
                                 tolerance(q, n, total, A))
                )
        return out
    emp = empirical_moments(table, kmax)
    th = theory_moments(target, kmax)
    return [MomentReport(k, emp[k], th[k], q, tolerance(q, n, k, A)) for k in range(kmax + 1)]


# --- Sato-Tate angles -----------------------------------------------------------------


def sato_tate_cdf(theta):
    """CDF of (2/pi) sin^2(u) du on [0, pi]."""
    theta = np.asarray(theta, dtype=float)
    return (theta - np.sin(theta) * np.cos(theta)) / np.pi


def ks_statistic(samples, cdf=sato_tate_cdf) -> float:
    x = np.sort(np.asarray(samples, dtype=float))
    n = len(x)
    F = cdf(x)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


def sato_tate_quantiles(m: int) -> np.ndarray:
    """The m mid-point quantiles of the Sato-Tate law, by bisection."""
    targets = (np.arange(m) + 0.5) / m
    lo = np.zeros(m)
    hi = np.full(m, np.pi)
    for _ in range(60):
        mid = (lo + hi) / 2
        below = sato_tate_cdf(mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return (lo + hi) / 2


@dataclass(frozen=True)
class AngleStats:
    histogram: list[int]
    edges: list[float]
    expected: list[float]
    ks: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.ks <= self.threshold

    def to_json(self) -> dict:
        return {
            "histogram": self.histogram,
            "edges": self.edges,
            "expected": self.expected,
            "ks_statistic": self.ks,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def angle_statistics_from(theta, B: float = DEFAULT_B, bins: int = DEFAULT_BINS) -> AngleStats:
    theta = np.asarray(theta, dtype=float)
    counts, edges = np.histogram(theta, bins=bins, range=(0.0, np.pi))
    expected = np.diff(sato_tate_cdf(edges)) * len(theta)
    return AngleStats(
        [int(c) for c in counts],
        [float(e) for e in edges],
        [float(e) for e in expected],
        ks_statistic(theta),
        B / math.sqrt(len(theta)),
    )


def angle_statistics(table2: SumTable, B: float = DEFAULT_B, bins: int = DEFAULT_BINS) -> AngleStats:
    """Histogram and KS statistic of theta(a) over all a in F_q^x; threshold B/sqrt(q-1)."""
    return angle_statistics_from(angles(table2), B, bins)
