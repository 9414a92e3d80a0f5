"""The acceptance suite behind ``kl verify-all``.

Each check returns a ``CheckResult`` whose ``details`` hold only
deterministic data (no timings, no paths), so the rendered report is
byte-identical across runs.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import equidist, eulerchar, repweights, rootsys, sums, wildmono
from .field import make_field, prime_powers
from .polyfp import is_prime, multiplicative_order


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}"

    def to_json(self) -> dict:
        return {"id": self.number, "name": self.name, "pass": self.passed, "details": self.details}


@dataclass
class Suite:
    A: float = equidist.DEFAULT_A
    B: float = equidist.DEFAULT_B
    threads: int = 1
    seed: int = 0
    cache_dir: object = None
    budget: int = sums.DEFAULT_BUDGET
    weil: list = field(default_factory=list)
    _tables: dict = field(default_factory=dict)

    def field(self, p: int, k: int = 1):
        return make_field(p, k, cache_dir=self.cache_dir)

    def table(self, p: int, k: int, n: int, method: str) -> sums.SumTable:
        key = (p, k, n, method)
        if key not in self._tables:
            spec = sums.make_spec(self.field(p, k), n)
            self._tables[key] = sums.build_table(spec, method, budget=self.budget, threads=self.threads)
            self._record(self._tables[key])
        return self._tables[key]

    def _record(self, table: sums.SumTable) -> None:
        self.weil.append(sums.weil_report(table))

    # --- 1 ------------------------------------------------------------------------

    def random_specs(self, F, n: int, count: int = 20):
        rng = np.random.default_rng([self.seed, F.p, F.k, n])
        for _ in range(count):
            coeffs = [int(c) for c in rng.integers(1, F.q, size=n)]
            chi = [int(m) for m in rng.integers(0, F.order, size=n)]
            yield sums.make_spec(F, n, coeffs, chi)

    def check_oracle(self) -> CheckResult:
        worst = 0.0
        count = 0
        failures = []
        for p, k in prime_powers(64):
            F = self.field(p, k)
            for n in range(1, 5):
                for spec in self.random_specs(F, n):
                    naive = sums.table_naive(spec, budget=self.budget, threads=self.threads)
                    conv = sums.table_convolution(spec)
                    self._record(naive)
                    self._record(conv)
                    err = float(np.max(np.abs(naive.raw - conv.raw))) / spec.scale
                    worst = max(worst, err)
                    count += 1
                    if err > 1e-9:
                        failures.append(spec.describe())
        return CheckResult(
            1, "sum oracle equivalence (naive vs convolution)", not failures,
            {"specs": count, "max_scaled_error": worst, "bound": 1e-9, "failures": failures[:5]},
        )

    # --- 2 ------------------------------------------------------------------------

    def check_weil(self) -> CheckResult:
        for p in range(2, 201):
            if is_prime(p):
                self.table(p, 1, 2, "conv")
        for p in range(2, 51):
            if is_prime(p):
                self.table(p, 1, 3, "conv")
        # the moment checks' tables are part of the suite too
        self.table(10007, 1, 2, "naive")
        self.table(2, 13, 7, "conv")
        self.table(5, 4, 3, "conv")
        bad = [r.to_json() for r in self.weil if not r.passed]
        worst = max(r.max_ratio / r.bound for r in self.weil)
        return CheckResult(
            2, "Weil bound on every table", not bad,
            {"tables": len(self.weil), "max_ratio_over_n": worst, "violations": bad[:5]},
        )

    # --- 3 ------------------------------------------------------------------------

    def check_sato_tate(self) -> CheckResult:
        q = 10007
        table = self.table(q, 1, 2, "naive")
        stats = equidist.angle_statistics(table, B=self.B)
        target = equidist.monodromy_target(2, q)
        reports = equidist.compare(table, target, 8, A=self.A)[1:]
        expected = [0, 1, 0, 2, 0, 5, 0, 14]
        oracle_ok = [r.theoretical for r in reports] == expected
        ok = stats.passed and oracle_ok and all(r.passed for r in reports)
        return CheckResult(
            3, "Sato-Tate angles and moments of Kl2 at q = 10007", ok,
            {
                "ks_statistic": stats.ks,
                "ks_threshold": stats.threshold,
                "ks_pass": stats.passed,
                "moments": [r.to_json() for r in reports],
            },
        )

    # --- 4 ------------------------------------------------------------------------

    def check_g2(self) -> CheckResult:
        table = self.table(2, 13, 7, "conv")
        target = equidist.monodromy_target(7, 2)
        reports = equidist.compare(table, target, 4, A=self.A)
        g2 = [r for r in reports if r.k in (2, 3, 4)]
        so7 = equidist.MonodromyTarget("SO7", "B3", "standard", "alternative")
        m4_so7 = equidist.compare(table, so7, 4, A=self.A)[4]
        margin = m4_so7.error
        ok = (
            target.label == "G2"
            and [r.theoretical for r in g2] == [1, 1, 4]
            and all(r.passed for r in g2)
            and m4_so7.theoretical == 3
            and margin > 0.5
        )
        return CheckResult(
            4, "G2 monodromy of Kl7 at q = 2^13", ok,
            {
                "moments": [r.to_json() for r in g2],
                "so7_m4_theoretical": m4_so7.theoretical,
                "so7_m4_margin": margin,
            },
        )

    # --- 5 ------------------------------------------------------------------------

    def check_su3(self) -> CheckResult:
        table = self.table(5, 4, 3, "conv")
        target = equidist.monodromy_target(3, 5)
        wanted = {(1, 1): 1, (3, 0): 1, (2, 1): 0}
        reports = [r for r in equidist.compare(table, target, 3, A=self.A) if r.k in wanted]
        ok = all(r.passed and r.theoretical == wanted[r.k] for r in reports) and len(reports) == 3
        return CheckResult(
            5, "SU(3) mixed moments of Kl3 at q = 5^4", ok, {"moments": [r.to_json() for r in reports]}
        )

    # --- 6 ------------------------------------------------------------------------

    def check_same_number(self) -> CheckResult:
        rows = []
        ok = True
        for label in rootsys.ALL_TYPES:
            rs = rootsys.build(label)
            V = repweights.quasi_minuscule(rs)
            zero = V.weights[(0,) * rs.rank]
            strings = repweights.principal_strings(V)
            n_short = int(rs.short.sum())
            quantities = [zero, len(strings), rs.r_s, Fraction(n_short, rs.h)]
            row_ok = (
                len(set(quantities)) == 1
                and sum(strings, Fraction(0)) == Fraction(rs.h * rs.r_s, 2)
                and len(rs.roots) == rs.rank * rs.h
            )
            ok &= row_ok
            rows.append({"type": label, "zero_weight": zero, "strings": len(strings), "r_s": rs.r_s,
                         "short_over_h": str(Fraction(n_short, rs.h)), "ok": row_ok})
        return CheckResult(6, "zero weight = strings = r_s = #short/h", ok, {"types": rows})

    # --- 7 ------------------------------------------------------------------------

    def check_census(self) -> CheckResult:
        rows = []
        ok = True
        for label in rootsys.ALL_TYPES:
            rs = rootsys.build(label)
            rep = eulerchar.qm_census(rs)
            row_ok = rep.matches_theorem and rep.predicted_minus_chi == rs.r_l
            ok &= row_ok
            rows.append({"type": label, "rep": "qm", "minus_chi": rep.predicted_minus_chi, "ok": row_ok})
        adj = [f"B{r}" for r in range(2, 9)] + [f"C{r}" for r in range(2, 9)] + ["F4"]
        for label in adj:
            rs = rootsys.build(label)
            rep = eulerchar.adjoint_census(rs)
            row_ok = rep.matches_theorem and rep.predicted_minus_chi == rs.rank
            ok &= row_ok
            rows.append({"type": label, "rep": "adjoint", "minus_chi": rep.predicted_minus_chi, "ok": row_ok})
        g2 = eulerchar.g2_census()
        c = g2.case_counts
        g2_ok = (
            g2.matches_theorem
            and c["short_no_simple_in_phi_ge2"] == 3
            and c["long_no_simple_in_phi_ge1"] == 1
            and (c["chi_G/P_gamma"], c["chi_P1"], c["chi_cone_over_P1"]) == (6, 2, 3)
            and g2.predicted_minus_chi == 2
        )
        ok &= g2_ok
        for label in rootsys.ALL_TYPES:
            # Swan prediction of the dual group agrees with the census of G
            rs = rootsys.build(label)
            ok &= eulerchar.qm_census(rootsys.dual(rs)).predicted_minus_chi == eulerchar.swan_prediction(rs, "qm")
        return CheckResult(7, "Euler characteristic censuses", ok, {"rows": rows, "g2": g2.to_json()})

    # --- 8 ------------------------------------------------------------------------

    def check_wild(self) -> CheckResult:
        rows = []
        ok = True
        for label in rootsys.ALL_TYPES:
            rs = rootsys.build(label)
            tame = wildmono.cox_tame_no_invariants(rs)
            for p in wildmono.smallest_good_primes(rs):
                wp = wildmono.construct(rs, p, seed=self.seed)
                d_ok = len(wp.t_zeta_basis) == wp.d == multiplicative_order(p, rs.h)
                nontriv = wildmono.roots_nontrivial_on_tzeta(wp)
                swan = wildmono.swan_from_breaks(wp)
                same = wildmono.all_factors_same_swan(wp)
                row_ok = d_ok and nontriv and swan == rs.rank and tame and same
                ok &= row_ok
                rows.append({"type": label, "p": p, "d": wp.d, "swan": swan, "ok": row_ok})
        return CheckResult(8, "simple wild parameter", ok, {"rows": rows})

    # --- 9 ------------------------------------------------------------------------

    def check_pgl2(self) -> CheckResult:
        a2 = wildmono.pgl2_swan_bound(rootsys.build("A2"), 3)
        ok = a2.bound == 3 and a2.r_s == 2 and a2.excluded
        missed = []
        for label in rootsys.ALL_TYPES:
            rs = rootsys.build(label)
            if rs.rank < 2:
                continue
            for p in (5, 7):
                if not wildmono.pgl2_swan_bound(rs, p).excluded:
                    missed.append([label, p])
        ok &= not missed
        return CheckResult(9, "principal PGL2 monodromy excluded", ok, {"A2_p3": a2.to_json(), "not_excluded": missed})

    # --- 10 -----------------------------------------------------------------------

    def check_determinism(self) -> CheckResult:
        spec = next(self.random_specs(self.field(2, 6), 4, 1))
        threads = max(2, self.threads)
        a = sums.table_naive(spec, threads=1).raw
        b = sums.table_naive(spec, threads=threads).raw
        c = sums.table_naive(spec, threads=1).raw
        bitwise = a.tobytes() == b.tobytes() == c.tobytes()
        r1 = render([self.check_same_number(), self.check_pgl2()])
        r2 = render([self.check_same_number(), self.check_pgl2()])
        ok = bitwise and r1 == r2
        return CheckResult(10, "deterministic tables and reports", ok, {"naive_bitwise": bitwise, "report_identical": r1 == r2})

    def run(self, only: set[int] | None = None) -> list[CheckResult]:
        checks = [
            self.check_oracle, self.check_weil, self.check_sato_tate, self.check_g2, self.check_su3,
            self.check_same_number, self.check_census, self.check_wild, self.check_pgl2,
            self.check_determinism,
        ]
        return [c() for i, c in enumerate(checks, 1) if only is None or i in only]


def render(results: list[CheckResult]) -> str:
    doc = {
        "checks": [r.to_json() for r in results],
        "passed": sum(r.passed for r in results),
        "total": len(results),
        "all_pass": all(r.passed for r in results),
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def default_threads() -> int:
    env = os.environ.get("KL_THREADS", "")
    if env.isdigit() and int(env) > 0:
        return int(env)
    return os.cpu_count() or 1
