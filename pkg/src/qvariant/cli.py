"""Batch runner: verification reports for the catalog, degenerations, limits and gauge moves.

Exit codes: 0 when every gated check passes, 1 when one fails, 2 for usage
or configuration errors. Output depends only on the arguments, so a fixed
seed gives byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from .equations import ConstraintError, Family, ParamSet, build_operator
from .gauge import (
    check_correspondence_B02_B20,
    check_correspondence_C12_C21,
    check_gauge_partner,
    gauged_residual_identity,
    natural_gauge_factor,
    series_roundtrip,
)
from .limits import (
    ARROWS,
    CONFLUENCE_PAIRS,
    Exponents,
    degeneration_check,
    hermite_limit_B20,
    hermite_limit_report,
    hermite_report_csv,
    kummer_limit_study,
    kummer_limit_study_C21,
    solution_confluence_check,
)
from .qalg import BasisKind, as_rational, format_rational
from .sampling import Resample, draw_admissible, rng_for
from .solutions import CATALOG, SolutionId, construct, get_entry, list_catalog, resolve_id
from .verify import DEFAULT_WINDOW, verify_solution

PASS, FAIL, USAGE = 0, 1, 2


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params_path: Optional[Path] = None
    ids: List[str] = field(default_factory=list)
    N: int = 16
    window: int = DEFAULT_WINDOW
    trials: int = 20
    seed: int = 0
    output: Optional[Path] = None
    fmt: str = "json"
    workers: int = 1


def _rationals(text: str) -> List[Any]:
    try:
        return [as_rational(part) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc)) from None


def _rational(text: str) -> Any:
    vals = _rationals(text)
    if len(vals) != 1:
        raise ConfigError(f"expected one rational, got {text!r}")
    return vals[0]


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _map(fn: Callable[[Any], Any], jobs: Sequence[Any], workers: int) -> List[Any]:
    # results keep job order, so the report does not depend on scheduling
    if workers <= 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def cmd_catalog(cfg: RunConfig) -> int:
    rows = [{**r, "id": str(r["id"]), "basis": r["basis"].value} for r in list_catalog()]
    if cfg.fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["id", "mu", "basis", "verifiable", "printed_mu", "description"],
                           lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        _emit(buf.getvalue(), cfg.output)
    else:
        _emit(_dump(rows), cfg.output)
    return PASS


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_trial(job: tuple) -> dict:
    sid_text, seed, trial, N, w = job
    sid = SolutionId.parse(sid_text)
    rng = rng_for(seed, sid_text, trial)
    try:
        p, sol = draw_admissible(sid.family, rng, lambda p: construct(sid, p, N))
    except Resample as exc:
        return {"id": sid_text, "trial": trial, "pass": False, "error": str(exc)}
    return {**verify_solution(p, sol, w).to_json(), "trial": trial}


def _selected_ids(cfg: RunConfig, all_ids: bool) -> List[str]:
    if all_ids:
        return [str(sid) for e in CATALOG if e.verifiable for sid in e.ids()]
    if not cfg.ids:
        raise ConfigError("give --all or at least one --id")
    out = []
    for text in cfg.ids:
        try:
            sid = resolve_id(text)
            get_entry(sid)
        except (KeyError, ValueError) as exc:
            raise ConfigError(str(exc).strip("'\"")) from None
        out.append(str(sid))
    return out


def _load_params(path: Path) -> ParamSet:
    try:
        return ParamSet.from_json(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from None
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"{path}: {exc}") from None


def cmd_verify(cfg: RunConfig, all_ids: bool = False) -> int:
    if cfg.N < 1 or cfg.window < 1 or cfg.trials < 1:
        raise ConfigError("--order, --window and --trials must be positive")
    ids = _selected_ids(cfg, all_ids)
    header = {"command": "verify", "N": cfg.N, "window": cfg.window}
    if cfg.params_path is not None:
        p = _load_params(cfg.params_path)
        reports = []
        for sid_text in ids:
            sid = SolutionId.parse(sid_text)
            try:
                sol = construct(sid, p, cfg.N)
            except (ConstraintError, ZeroDivisionError) as exc:
                raise ConfigError(f"{sid_text}: {exc}") from None
            reports.append(verify_solution(p, sol, cfg.window).to_json())
    else:
        header.update(trials=cfg.trials, seed=cfg.seed)
        jobs = [(sid, cfg.seed, t, cfg.N, cfg.window) for sid in ids for t in range(cfg.trials)]
        reports = _map(_verify_trial, jobs, cfg.workers)
    failures = [r for r in reports if not r["pass"]]
    doc = {**header, "pass": not failures, "checked": len(reports), "failed": len(failures),
           "reports": reports}
    _emit(_dump(doc), cfg.output)
    return PASS if not failures else FAIL


# ---------------------------------------------------------------------------
# degenerate
# ---------------------------------------------------------------------------

def _degenerate_trial(job: tuple) -> dict:
    name, seed, trial, u0, with_solutions = job
    arrow = ARROWS[name]
    rng = rng_for(seed, name, trial)
    try:
        p, res = draw_admissible(arrow.target, rng, lambda p: degeneration_check(arrow, p, u0))
    except Resample as exc:
        return {"trial": trial, "pass": False, "error": str(exc)}
    out = {**res.to_json(), "trial": trial, "params": p.to_dict()}
    if with_solutions:
        pairs = {}
        for a, parent, child in CONFLUENCE_PAIRS:
            if a == name:
                try:
                    ok = solution_confluence_check(arrow, SolutionId.parse(parent),
                                                   SolutionId.parse(child), p)
                except ZeroDivisionError:
                    ok = None  # degenerate draw for this pair; not counted
                pairs[f"{parent} -> {child}"] = ok
        out["solution_limits"] = pairs
        out["pass"] = out["pass"] and all(v is not False for v in pairs.values())
    return out


def cmd_degenerate(cfg: RunConfig, arrow: str, u0: Any, with_solutions: bool) -> int:
    names = list(ARROWS) if arrow == "all" else [arrow]
    for n in names:
        if n not in ARROWS:
            raise ConfigError(f"unknown arrow {n!r}; choose from {', '.join(ARROWS)} or all")
    if cfg.trials < 1:
        raise ConfigError("--trials must be positive")
    sections = []
    for n in names:
        jobs = [(n, cfg.seed, t, u0, with_solutions) for t in range(cfg.trials)]
        results = _map(_degenerate_trial, jobs, cfg.workers)
        sections.append({"arrow": n, "pass": all(r["pass"] for r in results), "trials": results})
    ok = all(s["pass"] for s in sections)
    doc = {"command": "degenerate", "seed": cfg.seed, "u0": format_rational(u0), "pass": ok,
           "arrows": sections}
    _emit(_dump(doc), cfg.output)
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# limit
# ---------------------------------------------------------------------------

def _exponents(args: argparse.Namespace) -> Exponents:
    try:
        return Exponents(lam=_rational(args.lam), alpha1=_rational(args.alpha1), h1=_rational(args.h1),
                         h2=_rational(args.h2), l1=_rational(args.l1), l2=_rational(args.l2))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_limit(cfg: RunConfig, args: argparse.Namespace) -> int:
    ex = _exponents(args)
    kind = args.kind
    if kind in ("kummer", "kummer-c21"):
        T, t1, eps = _rational(args.T), _rational(args.t1), _rationals(args.eps)
        if T == 0 or any(e <= 0 for e in eps) or len(eps) < 2:
            raise ConfigError("need T != 0 and at least two positive eps values")
        try:
            if kind == "kummer":
                table = kummer_limit_study(T, ex, eps, K=args.K, t1=t1)
            else:
                table = kummer_limit_study_C21(T, ex, eps, K=args.K, t1=t1, sign=args.sign)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(str(exc)) from None
        if cfg.fmt == "json":
            _emit(_dump({"command": "limit", "kind": kind, "label": table.label, "pass": table.passed,
                         "eps": [format_rational(e) for e in table.eps],
                         "max_abs_diff": [format_rational(d) for d in table.max_abs_diff],
                         "ratios": [None if r is None else format_rational(r) for r in table.ratios]}),
                  cfg.output)
        else:
            _emit(table.to_csv(), cfg.output)
        return PASS if table.passed else FAIL
    B = _rational(args.B)
    if B == 0:
        raise ConfigError("B must be nonzero")
    if kind == "hermite":
        ms = [int(m) for m in _rationals(args.m)]
        if any(m <= 0 for m in ms):
            raise ConfigError("--m values must be positive integers")
        rows = hermite_limit_report(B, ex, ms, K=args.K)
        if cfg.fmt == "json":
            _emit(_dump([dict(zip(["m", "n", "solution", "target", "target_2^n", "diff", "diff_2^n"],
                                  r.to_row())) for r in rows]), cfg.output)
        else:
            _emit(hermite_report_csv(rows), cfg.output)
        return PASS
    # hermite-b20: leading eps-order of the (2,0) operator, reported only
    res = hermite_limit_B20(B, ex)
    if cfg.fmt == "json":
        _emit(_dump(res.to_json()), cfg.output)
    else:
        lines = ["label,leading_order_r,vanishing_orders_r,scalar,matches",
                 f"{res.label},{res.leading_order},{' '.join(map(str, res.vanishing_orders))},"
                 f"{'' if res.scalar is None else format_rational(res.scalar)},{res.matches}"]
        _emit("\n".join(lines) + "\n", cfg.output)
    return PASS


# ---------------------------------------------------------------------------
# gauge-check
# ---------------------------------------------------------------------------

_ASCENDING = [str(sid) for e in CATALOG if e.verifiable and e.kind in (BasisKind.POCH_ASC, BasisKind.MIXED_ASC)
              for sid in e.ids()]
_GAUGE_ENTRIES = [str(sid) for e in CATALOG if e.gauge_note for sid in e.ids()]


def _gauge_trial(job: tuple) -> dict:
    seed, trial = job
    out: Dict[str, Any] = {"trial": trial}
    for name, fam, check in (("C12-C21", "C12", check_correspondence_C12_C21),
                             ("B02-B20", "B02", check_correspondence_B02_B20)):
        rng = rng_for(seed, name, trial)
        try:
            _, ok = draw_admissible(Family(fam), rng, check)
        except Resample:
            ok = False
        out[name] = ok
    return out


def _gauge_series_checks(seed: int, N: int) -> List[dict]:
    rows = []
    for sid_text in _ASCENDING:
        sid = SolutionId.parse(sid_text)
        rng = rng_for(seed, "series", sid_text)
        try:
            p, sol = draw_admissible(sid.family, rng, lambda p: construct(sid, p, N))
        except Resample as exc:
            rows.append({"id": sid_text, "pass": False, "error": str(exc)})
            continue
        op = build_operator(p)
        gf = natural_gauge_factor(op, sol)
        ident = gauged_residual_identity(op, sol, gf, N)
        back = series_roundtrip(sol, gf, N)
        rows.append({"id": sid_text, "move": gf.side.value, "alpha": format_rational(gf.alpha),
                     "residual_identity": ident, "roundtrip": back, "pass": ident and back})
    return rows


def _gauge_partner_checks(seed: int, N: int) -> List[dict]:
    rows = []
    for sid_text in _GAUGE_ENTRIES:
        sid = SolutionId.parse(sid_text)
        rng = rng_for(seed, "partner", sid_text)

        def both(p):
            return check_gauge_partner(sid, p, N, printed=True), check_gauge_partner(sid, p, N, printed=False)

        try:
            _, (printed, corrected) = draw_admissible(sid.family, rng, both)
        except Resample as exc:
            rows.append({"id": sid_text, "pass": False, "error": str(exc)})
            continue
        rows.append({"id": sid_text, "printed_form_matches": printed, "corrected_form_matches": corrected,
                     "pass": corrected})
    return rows


def cmd_gauge_check(cfg: RunConfig) -> int:
    if cfg.trials < 1:
        raise ConfigError("--trials must be positive")
    trials = _map(_gauge_trial, [(cfg.seed, t) for t in range(cfg.trials)], cfg.workers)
    corr = {name: all(t[name] for t in trials) for name in ("C12-C21", "B02-B20")}
    series = _gauge_series_checks(cfg.seed, cfg.N)
    partners = _gauge_partner_checks(cfg.seed, cfg.N)
    ok = all(corr.values()) and all(r["pass"] for r in series) and all(r["pass"] for r in partners)
    doc = {"command": "gauge-check", "seed": cfg.seed, "N": cfg.N, "pass": ok,
           "correspondences": {**corr, "trials": trials},
           "series": series, "partners": partners}
    _emit(_dump(doc), cfg.output)
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qvariant", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, trials: int = 20, fmt: str = "json") -> None:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=trials)
        p.add_argument("--workers", type=int, default=1, help="worker processes; output does not depend on it")
        p.add_argument("--out", "--output", dest="out", type=Path)
        p.add_argument("--format", dest="fmt", choices=["json", "csv"], default=fmt)

    p = sub.add_parser("catalog", help="list catalog ids")
    p.add_argument("--out", "--output", dest="out", type=Path)
    p.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")

    p = sub.add_parser("verify", help="residual checks of catalog solutions")
    common(p)
    p.add_argument("--all", action="store_true", help="every verifiable id")
    p.add_argument("--id", dest="ids", action="append", default=[], help="solution id; repeatable")
    p.add_argument("--params", type=Path, help="JSON parameter set used instead of random draws")
    p.add_argument("--order", type=int, default=16)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)

    p = sub.add_parser("degenerate", help="confluence arrows between families")
    common(p)
    p.add_argument("--arrow", default="all", help="D2-C12, C12-B02, D2-C21, C21-B20 or all")
    p.add_argument("--u0", default="1/7")
    p.add_argument("--no-solutions", action="store_true", help="skip the solution-level limits")

    p = sub.add_parser("limit", help="continuum limits q -> 1")
    p.add_argument("kind", choices=["kummer", "kummer-c21", "hermite", "hermite-b20"])
    p.add_argument("--out", "--output", dest="out", type=Path)
    p.add_argument("--format", dest="fmt", choices=["json", "csv"], default="csv")
    p.add_argument("--T", default="1")
    p.add_argument("--t1", default="1")
    p.add_argument("--eps", default="1/10,1/100,1/1000", help="comma-separated rationals")
    p.add_argument("--K", type=int, default=None, help="series truncation order")
    p.add_argument("--sign", type=int, choices=[-1, 1], default=-1, help="sign of T*eps*t2 (kummer-c21)")
    p.add_argument("--B", default="2")
    p.add_argument("--m", default="10,100", help="comma-separated scale values, eps = 1/m")
    p.add_argument("--lam", default="1")
    p.add_argument("--alpha1", default="1")
    p.add_argument("--h1", default="2")
    p.add_argument("--h2", default="0")
    p.add_argument("--l1", default="1")
    p.add_argument("--l2", default="0")

    p = sub.add_parser("gauge-check", help="gauge correspondences and roundtrips")
    common(p, trials=50)
    p.add_argument("--order", type=int, default=16)
    return ap


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        params_path=getattr(args, "params", None),
        ids=getattr(args, "ids", []),
        N=getattr(args, "order", 16),
        window=getattr(args, "window", DEFAULT_WINDOW),
        trials=getattr(args, "trials", 20),
        seed=getattr(args, "seed", 0),
        output=args.out,
        fmt=args.fmt,
        workers=getattr(args, "workers", 1),
    )


def main(argv: Optional[Iterable[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(None if argv is None else list(argv))
    cfg = _config(args)
    try:
        if args.command == "catalog":
            return cmd_catalog(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, all_ids=args.all)
        if args.command == "degenerate":
            return cmd_degenerate(cfg, args.arrow, _rational(args.u0), not args.no_solutions)
        if args.command == "limit":
            if args.K is None:
                args.K = 8 if args.kind.startswith("kummer") else 4
            return cmd_limit(cfg, args)
        return cmd_gauge_check(cfg)
    except ConfigError as exc:
        print(f"qvariant {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
