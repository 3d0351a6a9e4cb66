"""Command line entry point: ``dworkzeta <subcommand> ...``.

Exit codes: 0 on success, 1 when a computation fails or an internal check
does not pass (a JSON error object is printed), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import acceptance
from .charsums import identity_suite
from .counting import count_dwork, count_hyper, count_hypersurface, count_mirror, default_threads
from .errors import DworkZetaError
from .ffield import DEFAULT_TABLE_CAP, build_extension, build_field
from .formulas import N_hyper_formula, decompose, lambda_of_psi
from .orbits import canonical, enumerate_classes
from .reference import REFERENCE
from .varieties import HyperVariety
from .zetaseries import strip_trivial, zeta_from_counts


class UsageError(DworkZetaError):
    pass


@dataclass
class RunConfig:
    tolerance_round: float = 1e-6
    tolerance_identity: float = 1e-9
    threads: int = 1
    table_cap: int = DEFAULT_TABLE_CAP
    output: str = "human"
    seed: int = acceptance.DEFAULT_SEED

    def __post_init__(self):
        if not (self.tolerance_round > 0 and self.tolerance_identity > 0):
            raise UsageError("tolerances must be positive")
        if self.threads < 1:
            raise UsageError("threads must be at least 1")
        if self.output not in ("human", "json", "csv"):
            raise UsageError(f"unknown output format {self.output!r}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        output = "json" if args.json else "csv" if args.csv else args.output
        return cls(
            tolerance_round=args.tol_round,
            tolerance_identity=args.tol_identity,
            threads=args.threads or default_threads(),
            table_cap=args.table_cap,
            output=output,
            seed=args.seed,
        )


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def parse_element(text: str, p: int, f: int) -> int:
    """An integer reduced mod p when f = 1; a base-p digit string otherwise.

    Digits run from the leading coefficient down.  For p > 36 the digits are
    given comma separated, e.g. ``"3,0,41"``.
    """
    text = text.strip()
    if f == 1:
        return int(text) % p
    if "," in text:
        digits = [int(d) for d in text.split(",")]
    else:
        digits = [int(ch, 36) for ch in text]
    if any(not 0 <= d < p for d in digits) or len(digits) > f:
        raise UsageError(f"{text!r} is not an element of F_{p}^{f}")
    value = 0
    for d in digits:
        value = value * p + d
    return value


def parse_ints(text: str) -> list[int]:
    """Inline comma list, or a file with one integer per line."""
    path = Path(text)
    if "," not in text and path.is_file():
        return [int(line) for line in path.read_text().split() if line.strip()]
    return [int(x) for x in text.split(",") if x.strip()]


def _fields(args, cfg: RunConfig):
    base = build_field(args.p, args.f, table_cap=cfg.table_cap)
    r = getattr(args, "r", 1) or 1
    ctx = base if r == 1 else build_extension(base, r, table_cap=cfg.table_cap)
    return base, ctx


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "item"):
        return x.item()
    return x


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        flat = [{k: json.dumps(_jsonable(v)) if isinstance(v, (list, tuple, dict)) else v
                 for k, v in row.items()} for row in rows]
        writer = csv.DictWriter(buf, fieldnames=list(flat[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
    return buf.getvalue()


def _table(rows: list[dict], cols: list[str]) -> str:
    cells = [[str(_jsonable(r.get(c, ""))) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def emit(cfg: RunConfig, payload: dict, rows: list[dict] | None = None, human: str | None = None) -> None:
    if cfg.output == "json":
        print(json.dumps(_jsonable(payload), indent=2))
    elif cfg.output == "csv":
        print(_csv(rows if rows is not None else [payload]), end="")
    else:
        print(human if human is not None else json.dumps(_jsonable(payload), indent=2))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_field(args, cfg: RunConfig) -> int:
    ctx = build_field(args.p, args.f, table_cap=cfg.table_cap)
    info = {"p": ctx.p, "f": ctx.f, "q": ctx.q, "modulus": list(ctx.modulus),
            "generator": ctx.generator}
    human = "\n".join(f"{k}: {v}" for k, v in info.items())
    emit(cfg, info, human=human)
    return 0


def cmd_char(args, cfg: RunConfig) -> int:
    ctx = build_field(args.p, args.f, table_cap=cfg.table_cap)
    tol = args.tol if args.tol is not None else cfg.tolerance_identity
    rep = identity_suite(ctx, tol=tol, seed=cfg.seed)
    d = rep.to_dict()
    rows = [{"identity": x.name, "checked": x.checked, "max_residual": x.max_residual,
             "passed": x.max_residual < tol} for x in rep.results]
    human = _table(rows, ["identity", "checked", "max_residual", "passed"])
    human += f"\nseed {cfg.seed}, max residual {rep.max_residual:.3e}, tol {tol:g}"
    emit(cfg, d, rows, human)
    return 0 if rep.passed else 1


def _class_rows(n: int) -> list[dict]:
    rows = []
    for rec in enumerate_classes(n):
        d = rec.to_dict()
        rows.append({
            "rep": d["rep"], "gamma": d["gamma"], "K": d["K"], "m": d["m"],
            "mprime": d["mprime"], "d": d["d"], "special": d["special"],
            "equation": d.get("equation", ""),
        })
    return rows


def cmd_classes(args, cfg: RunConfig) -> int:
    rows = _class_rows(args.n)
    human = _table(rows, ["rep", "gamma", "K", "m", "mprime", "d", "equation"])
    emit(cfg, {"n": args.n, "classes": rows}, rows, human)
    return 0


def cmd_count(args, cfg: RunConfig) -> int:
    base, ctx = _fields(args, cfg)
    psi = parse_element(args.psi, base.p, base.f) if args.psi is not None else None
    if args.variety in ("dwork", "mirror"):
        if psi is None:
            raise UsageError("--psi is required")
        fn = count_dwork if args.variety == "dwork" else count_mirror
        res = fn(ctx, args.n, psi, base=base, threads=cfg.threads)
    else:
        if not (args.alphas and args.betas):
            raise UsageError("hyper needs --alphas and --betas")
        alphas, betas = parse_ints(args.alphas), parse_ints(args.betas)
        if args.lam is not None:
            lam = parse_element(args.lam, base.p, base.f)
        elif psi is not None:
            lam = lambda_of_psi(base, args.n, psi)
        else:
            raise UsageError("hyper needs --lam or --psi")
        H = HyperVariety(args.n, len(betas), len(alphas), tuple(alphas), tuple(betas), lam=lam)
        res = count_hyper(ctx, H, base=base, threads=cfg.threads)
    d = res.to_dict()
    emit(cfg, d, human="\n".join(f"{k}: {v}" for k, v in d.items()))
    return 0


def cmd_decompose(args, cfg: RunConfig) -> int:
    ctx = build_field(args.p, args.f, table_cap=cfg.table_cap)
    psi = parse_element(args.psi, ctx.p, ctx.f)
    rep = decompose(ctx, args.n, psi, brute=not args.no_brute,
                    count_varieties=args.count_varieties, threads=cfg.threads)
    d = rep.to_dict()
    rows = d["rows"]
    human = _table(rows, ["rep", "gamma", "K", "weight", "d", "N_lam", "N_class", "equation"])
    human += (f"\ntrivial part {rep.trivial_part}, N_mirror {rep.N_mirror_formula}"
              f" (count {rep.N_mirror_count}), singular term {rep.singular_term_formula}"
              f"\nformula total {rep.formula_total}, brute force {rep.brute_force_total}"
              f"\n{'ok' if rep.ok else 'PROBLEMS: ' + '; '.join(rep.problems)}")
    emit(cfg, d, rows, human)
    return 0 if rep.ok else 1


def cmd_examples(args, cfg: RunConfig) -> int:
    if args.n not in REFERENCE:
        raise UsageError("examples exist for n = 5 and n = 7")
    ctx = build_field(args.p, 1, table_cap=cfg.table_cap)
    psi = parse_element(args.psi, ctx.p, 1)
    lam = lambda_of_psi(ctx, args.n, psi)
    recs = {r.rep: r for r in enumerate_classes(args.n)}
    rows = []
    ok = True
    for ref in REFERENCE[args.n]:
        rec = recs[canonical(ref.rep, args.n)]
        S = ref.checked_surface.with_lambda(lam)
        formula = N_hyper_formula(ctx, rec.hyper.with_lambda(lam)).N_lam_int
        brute = count_hypersurface(ctx, S, base=ctx, threads=cfg.threads).affine - ctx.q ** S.nvars
        ok &= formula == brute
        rows.append({
            "label": ref.label, "rep": list(ref.rep), "weight": ref.weight,
            "equation": S.equation("L"), "printed_ok": ref.printed_ok,
            "N_formula": formula, "N_brute": brute,
        })
    human = _table(rows, ["label", "rep", "weight", "N_formula", "N_brute", "printed_ok", "equation"])
    emit(cfg, {"n": args.n, "q": ctx.q, "psi": psi, "rows": rows, "ok": ok}, rows, human)
    return 0 if ok else 1


def cmd_zeta(args, cfg: RunConfig) -> int:
    counts = parse_ints(args.counts)
    zs = zeta_from_counts(args.q, counts)
    if args.strip_n:
        zs = strip_trivial(zs, args.strip_n)
    d = zs.to_dict()
    human = "coefficients: " + ", ".join(str(c) for c in zs.coeffs)
    human += f"\nintegral: {zs.is_integral}"
    emit(cfg, d, [{"degree": i, "coeff": str(c)} for i, c in enumerate(zs.coeffs)], human)
    return 0


def cmd_selftest(args, cfg: RunConfig) -> int:
    only = set(parse_ints(args.only)) if args.only else None
    results = []
    for c in acceptance.run_all(only, seed=cfg.seed):
        results.append(c)
        if cfg.output == "human":
            print(c.line(), flush=True)
    passed = all(c.passed for c in results)
    if cfg.output == "human":
        print(f"seed {cfg.seed}: {'all criteria pass' if passed else 'FAILURES'}")
    else:
        emit(cfg, {"seed": cfg.seed, "passed": passed, "criteria": [c.to_dict() for c in results]},
             [{k: v for k, v in c.to_dict().items() if k != "checks"} for c in results])
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output")
    fmt.add_argument("--csv", action="store_true", help="CSV output")
    fmt.add_argument("--output", choices=["human", "json", "csv"], default="human")
    c.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: $DWORKZETA_THREADS or cpu count)")
    c.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    c.add_argument("--tol-round", type=float, default=1e-6)
    c.add_argument("--tol-identity", type=float, default=1e-9)
    c.add_argument("--table-cap", type=int, default=DEFAULT_TABLE_CAP)
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="dworkzeta", description="Point counts and zeta factors of Dwork hypersurfaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="field info")
    p.add_argument("action", nargs="?", choices=["info"], default="info")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, default=1)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("char", parents=[common], help="character-sum identity checks")
    p.add_argument("action", nargs="?", choices=["check"], default="check")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("classes", parents=[common], help="class table for prime n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("count", parents=[common], help="brute-force point counts")
    p.add_argument("variety", choices=["dwork", "mirror", "hyper"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--r", type=int, default=1, help="count over the degree-r extension")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--psi", type=str, default=None)
    p.add_argument("--lam", type=str, default=None, help="lambda for hyper (default 1/psi^n)")
    p.add_argument("--alphas", type=str, default=None, help="comma list, length k")
    p.add_argument("--betas", type=str, default=None, help="comma list, length l")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("decompose", parents=[common], help="formula vs brute-force decomposition")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--psi", type=str, required=True)
    p.add_argument("--no-brute", action="store_true", help="skip direct counts")
    p.add_argument("--count-varieties", action="store_true", help="count each hypergeometric variety")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("examples", parents=[common], help="one-equation forms for n = 5, 7")
    p.add_argument("--n", type=int, choices=[5, 7], required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--psi", type=str, required=True)
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("zeta", parents=[common], help="truncated zeta series from counts")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--counts", type=str, required=True, help="comma list or file")
    p.add_argument("--strip-n", type=int, default=None)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=str, default=None, help="comma list of criterion numbers")
    p.set_defaults(func=cmd_selftest)
    return ap


def _error(exc: Exception, code: int, as_json: bool) -> int:
    obj = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    if as_json:
        print(json.dumps(obj))
    else:
        print(json.dumps(obj), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    as_json = bool(args.json or args.output == "json")
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except UsageError as exc:
        return _error(exc, 2, as_json)
    except (DworkZetaError, ValueError, OSError) as exc:
        return _error(exc, 1, as_json)


if __name__ == "__main__":
    sys.exit(main())
