"""``kl`` command line interface.

Every subcommand writes JSON (or CSV where noted) to stdout or ``--out``.
Exit status: 0 on success, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import equidist, eulerchar, repweights, rootsys, sums, verify, wildmono
from .characters import parse_chi_list
from .field import FieldError, default_cache_dir, make_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    cache_dir: Path | None = None
    budget: int = sums.DEFAULT_BUDGET
    tolerance_A: float = equidist.DEFAULT_A
    tolerance_B: float = equidist.DEFAULT_B
    threads: int = 1
    seed: int = 0

    @classmethod
    def from_args(cls, args) -> RunConfig:
        if args.no_cache:
            cache = None
        else:
            cache = Path(args.cache_dir) if args.cache_dir else default_cache_dir()
        return cls(cache, args.budget, args.A, args.B, _threads(args.threads), args.seed)

    @property
    def cache_arg(self):
        return False if self.cache_dir is None else self.cache_dir


def _threads(value: str | None) -> int:
    if value is None:
        value = os.environ.get("KL_THREADS", "1")
    if value == "auto":
        return os.cpu_count() or 1
    try:
        n = int(value)
    except ValueError:
        raise UsageError(f"invalid thread count {value!r}") from None
    if n < 1:
        raise UsageError("thread count must be positive")
    return n


def _int_list(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _spec(cfg: RunConfig, args) -> sums.KloostermanSpec:
    F = make_field(args.p, args.k, cache_dir=cfg.cache_arg)
    coeffs = _int_list(args.coeffs)
    if coeffs is not None:
        if len(coeffs) != args.n:
            raise UsageError(f"--coeffs needs {args.n} entries")
        if any(not 0 < c < F.q for c in coeffs):
            raise UsageError("coefficients must be nonzero field elements in 1..q-1")
    chars = parse_chi_list(args.chi, F, args.n)
    return sums.make_spec(F, args.n, coeffs, [ch.exponent for ch in chars])


def _complex_str(z: complex) -> str:
    re_, im = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
    return f"{re_!r}{'-' if im < 0 else '+'}{abs(im)!r}i"


# --- subcommands ----------------------------------------------------------------------


def cmd_field(cfg, args) -> int:
    F = make_field(args.p, args.k, cache_dir=cfg.cache_arg)
    _emit(args, {
        "p": F.p, "k": F.k, "q": F.q,
        "modulus": list(F.modulus),
        "generator_index": F.generator_index,
        "generator": F.to_int(F.gen()),
    })
    return EXIT_OK


def cmd_sum(cfg, args) -> int:
    spec = _spec(cfg, args)
    if not 0 < args.a < spec.q:
        raise UsageError("a must be a nonzero field element in 1..q-1")
    a = spec.field.from_int(args.a)
    v = sums.kloosterman(spec, a)
    if args.normalized:
        v /= spec.scale
    doc = spec.describe()
    doc.update({"a": args.a, "normalized": args.normalized, "re": v.real, "im": v.imag, "value": _complex_str(v)})
    _emit(args, doc)
    return EXIT_OK


def cmd_table(cfg, args) -> int:
    spec = _spec(cfg, args)
    table = sums.build_table(spec, args.method, budget=cfg.budget, threads=cfg.threads)
    if args.normalized:
        table = table.normalize()
    if args.format == "csv":
        rows = [[j, v.real, v.imag] for j, v in enumerate(table.values)]
        _emit(args, _csv(rows, ["a", "re", "im"]))
    else:
        _emit(args, table.to_json())
    return EXIT_OK


def cmd_weil(cfg, args) -> int:
    spec = _spec(cfg, args)
    rep = sums.weil_report(sums.build_table(spec, args.method, budget=cfg.budget, threads=cfg.threads))
    doc = spec.describe()
    doc.update(rep.to_json())
    _emit(args, doc)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_angles(cfg, args) -> int:
    F = make_field(args.p, args.k, cache_dir=cfg.cache_arg)
    table = sums.build_table(sums.make_spec(F, 2), args.method, budget=cfg.budget, threads=cfg.threads)
    stats = equidist.angle_statistics(table, B=cfg.tolerance_B, bins=args.bins)
    doc = {"p": F.p, "k": F.k, "q": F.q}
    doc.update(stats.to_json())
    if not args.ks:
        for key in ("ks_statistic", "threshold", "pass"):
            doc.pop(key)
    if args.angles:
        doc["angles"] = [float(x) for x in sums.angles(table)]
    _emit(args, doc)
    return EXIT_OK if (not args.ks or stats.passed) else EXIT_FAIL


def _parse_target(text: str, n: int, p: int) -> equidist.MonodromyTarget:
    if text == "auto":
        return equidist.monodromy_target(n, p)
    label, _, rep = text.partition(":")
    letter, r = rootsys.parse_type(label)
    rs = rootsys.build(letter, r)
    return equidist.MonodromyTarget(
        label, rs.type_label, rep or "standard", "user", mixed=(letter == "A" and r >= 2)
    )


def cmd_moments(cfg, args) -> int:
    spec = _spec(cfg, args)
    target = _parse_target(args.target, args.n, args.p)
    table = sums.build_table(spec, args.method, budget=cfg.budget, threads=cfg.threads)
    reports = equidist.compare(table, target, args.kmax, A=cfg.tolerance_A)
    ok = all(r.passed for r in reports)
    if args.format == "csv":
        rows = []
        for r in reports:
            a, b = r.k if isinstance(r.k, tuple) else (r.k, 0)
            rows.append([a, b, r.empirical.real, r.empirical.imag, r.theoretical, r.tolerance, int(r.passed)])
        _emit(args, _csv(rows, ["a", "b", "re", "im", "theoretical", "tolerance", "pass"]))
    else:
        doc = {
            "metadata": {
                **spec.describe(),
                "q": spec.q,
                "method": args.method,
                "target": target.to_json(),
                "tolerance_A": cfg.tolerance_A,
                "limitation": "only the defining representation of the target is tested",
            },
            "reports": [r.to_json() for r in reports],
            "all_pass": ok,
        }
        _emit(args, doc)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_moments_theory(cfg, args) -> int:
    rs = rootsys.build(args.type)
    V = repweights.representation(rs, args.rep)
    if args.mixed:
        a, b = _int_list(args.mixed) or [0, 0]
        _emit(args, repweights.mixed_moment(V, a, b))
    else:
        _emit(args, repweights.invariant_moments(V, args.kmax))
    return EXIT_OK


def cmd_roots(cfg, args) -> int:
    _emit(args, rootsys.build(args.type).to_json())
    return EXIT_OK


def cmd_census(cfg, args) -> int:
    rs = rootsys.build(args.type)
    rep = eulerchar.census(rs, args.rep)
    doc = rep.to_json()
    doc["swan_prediction_dual"] = eulerchar.swan_prediction(rootsys.dual(rs), args.rep)
    _emit(args, doc)
    return EXIT_OK if rep.matches_theorem else EXIT_FAIL


def cmd_wild(cfg, args) -> int:
    rs = rootsys.build(args.type)
    wp = wildmono.construct(rs, args.p, seed=cfg.seed, strict=args.strict)
    swan, inv_dim = wildmono.swan_count(rs, wp.t_zeta_basis, wp.p)
    verdicts = {
        "roots_nontrivial_on_t_zeta": wildmono.roots_nontrivial_on_tzeta(wp),
        "swan_equals_rank": swan == rs.rank,
        "cox_no_invariants": wildmono.cox_tame_no_invariants(rs),
        "all_factors_same_swan": wildmono.all_factors_same_swan(wp),
        "dim_t_zeta_is_d": len(wp.t_zeta_basis) == wp.d,
    }
    doc = wp.to_json()
    doc.update({"swan": swan, "wild_invariants_dim": inv_dim, "verdicts": verdicts})
    _emit(args, doc)
    return EXIT_OK if all(verdicts.values()) else EXIT_FAIL


def cmd_verify_all(cfg, args) -> int:
    only = set(_int_list(args.only)) if args.only else None
    suite = verify.Suite(
        A=cfg.tolerance_A, B=cfg.tolerance_B, threads=cfg.threads, seed=cfg.seed,
        cache_dir=cfg.cache_arg, budget=cfg.budget,
    )
    results = suite.run(only)
    for r in results:
        print(r.line(), file=sys.stderr)
    _emit(args, verify.render(results) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# --- parser ---------------------------------------------------------------------------


def _sum_args(sp, with_a: bool = False) -> None:
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--n", type=int, required=True)
    if with_a:
        sp.add_argument("--a", type=int, required=True, help="argument as an integer (base-p digits)")
    sp.add_argument("--coeffs", help="c1,..,cn as field integers")
    sp.add_argument("--chi", help="multiplicative character exponents m1,..,mn")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kl", description="Kloosterman sums and root-system checks")
    ap.add_argument("--cache-dir", help="field table cache (default $KL_CACHE_DIR or .kl-cache)")
    ap.add_argument("--no-cache", action="store_true")
    ap.add_argument("--threads", help="worker threads or 'auto' (default $KL_THREADS or 1)")
    ap.add_argument("--budget", type=int, default=sums.DEFAULT_BUDGET)
    ap.add_argument("--A", type=float, default=equidist.DEFAULT_A, help="moment tolerance constant")
    ap.add_argument("--B", type=float, default=equidist.DEFAULT_B, help="KS tolerance constant")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("sum")
    _sum_args(sp, with_a=True)
    sp.add_argument("--normalized", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sum)

    sp = sub.add_parser("table")
    _sum_args(sp)
    sp.add_argument("--method", choices=["naive", "conv"], default="conv")
    sp.add_argument("--normalized", action="store_true")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("weil")
    _sum_args(sp)
    sp.add_argument("--method", choices=["naive", "conv"], default="conv")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_weil)

    sp = sub.add_parser("angles")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--method", choices=["naive", "conv"], default="conv")
    sp.add_argument("--bins", type=int, default=equidist.DEFAULT_BINS)
    sp.add_argument("--ks", action="store_true", help="add the Kolmogorov-Smirnov verdict")
    sp.add_argument("--angles", action="store_true", help="include every angle")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_angles)

    sp = sub.add_parser("moments")
    _sum_args(sp)
    sp.add_argument("--target", default="auto", help="'auto' or TYPE[:rep], e.g. G2:standard")
    sp.add_argument("--kmax", type=int, default=6)
    sp.add_argument("--method", choices=["naive", "conv"], default="conv")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("moments-theory")
    sp.add_argument("--type", required=True)
    sp.add_argument("--rep", default="standard")
    sp.add_argument("--kmax", type=int, default=8)
    sp.add_argument("--mixed", help="a,b for the mixed moment")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_moments_theory)

    sp = sub.add_parser("roots")
    sp.add_argument("--type", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("census")
    sp.add_argument("--type", required=True)
    sp.add_argument("--rep", default="qm")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("wild")
    sp.add_argument("--type", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--strict", action="store_true", help="refuse primes dividing #W")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_wild)

    sp = sub.add_parser("verify-all")
    sp.add_argument("--only", help="comma-separated check numbers")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify_all)
    return ap


_USAGE_ERRORS = (
    UsageError,
    FieldError,
    sums.SumError,
    rootsys.InvalidType,
    equidist.Unlisted,
    wildmono.BadPrime,
    eulerchar.WrongType,
    ValueError,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(cfg, args)
    except (eulerchar.CensusError, wildmono.NonUniqueSubmodule, wildmono.NonIntegerSwan) as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_FAIL
    except _USAGE_ERRORS as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
