"""Command-line front end.

Every subcommand assembles a report dict {command, inputs, result,
provenance} and prints it in the selected format.  Result payloads are
deterministic: reruns with identical inputs produce identical payloads
(timing lives in provenance only).  Exit codes: 0 success/pass,
1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time

from . import __version__
from ._kernels import BACKEND
from .errors import InputError, InternalConsistencyError
from .lfold import cheb_decomposition, fold_constants
from .modforms import (
    LEVEL_ONE_WEIGHTS,
    Eigenform,
    build_level_one_eigenform,
    load_eigenform,
    save_eigenform,
    verify_eigenform,
)
from .quadforms import (
    QuadraticForm,
    class_set,
    reduce_form,
    representation_counts,
    verify_rep_formula,
)
from .sigma import alpha_step, find_u0, pow_step, solve_sigma
from .sums import (
    BoundInputs,
    SumReport,
    bound_ratio_sweep,
    first_sign_change,
    lowerbound_lhs,
    summatory_SD,
    summatory_SQ,
    thm11_log_bound,
    thm12_log_bound,
)


@dataclasses.dataclass
class Config:
    cache_dir: str | None = None
    default_weight: int = 12
    default_level: int = 1
    output_format: str = "table"
    epsilon: float = 0.01
    grid_step: float = 1e-4
    truncation_K: int = 20
    thread_count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise InputError("epsilon must be > 0")
        if not 0 < self.grid_step <= 1e-2:
            raise InputError("grid step must lie in (0, 1e-2]")
        if self.truncation_K < 1:
            raise InputError("truncation order must be >= 1")


def _provenance(cfg: Config, t0: float, seed: int | None = None) -> dict:
    return {
        "tool": "lfoldq",
        "version": __version__,
        "backend": BACKEND,
        "K": cfg.truncation_K,
        "h": cfg.grid_step,
        "seed": cfg.seed if seed is None else seed,
        "threads": 1,
        "timing_s": round(time.perf_counter() - t0, 6),
    }


def _flatten(prefix: str, obj, rows: list[tuple[str, str]]) -> None:
    if isinstance(obj, dict):
        for key in obj:
            _flatten(f"{prefix}{key}." if prefix else f"{key}.", obj[key], rows)
        return
    if isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}{i}.", v, rows)
        return
    rows.append((prefix[:-1] if prefix.endswith(".") else prefix, _scalar(obj)))


def _scalar(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    rows: list[tuple[str, str]] = []
    _flatten("", report, rows)
    if fmt == "csv":
        print("key,value")
        for k, v in rows:
            if "," in v:
                v = f'"{v}"'
            print(f"{k},{v}")
        return
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        print(f"{k.ljust(width)}  {v}")


def _form_from_args(args, allow_principal: bool = True) -> QuadraticForm:
    explicit = args.a is not None or args.b is not None or args.c is not None
    if explicit:
        if args.a is None or args.b is None or args.c is None:
            raise InputError("give all three of -a -b -c")
        return QuadraticForm(args.a, args.b, args.c)
    if allow_principal and getattr(args, "D", None) is not None:
        return principal_form(args.D)
    raise InputError("no form given: use -a -b -c or -D")


def principal_form(D: int) -> QuadraticForm:
    if D >= 0 or D % 4 not in (0, 1):
        raise InputError(f"not a negative discriminant: {D}")
    b = abs(D) % 2
    return QuadraticForm(1, b, (b * b - D) // 4)


def _get_form(args, cfg: Config, upto: int) -> Eigenform:
    if getattr(args, "infile", None):
        return load_eigenform(args.infile)
    weight = args.weight if args.weight is not None else cfg.default_weight
    return build_level_one_eigenform(weight, upto)


# ---------------------------------------------------------------- commands

def cmd_eigenform(args, cfg: Config) -> int:
    t0 = time.perf_counter()
    if args.action in ("build", "export"):
        form = build_level_one_eigenform(args.weight, args.upto)
        if args.out:
            save_eigenform(form, args.out)
        elif args.action == "export":
            raise InputError("export requires --out")
        result = {
            "label": form.label,
            "weight": form.weight,
            "level": form.level,
            "count": form.x_max,
            "head": {str(n): str(form.coeffs[n]) for n in range(1, min(10, form.x_max) + 1)},
            "out": args.out,
        }
        report = _report("eigenform", args, result, cfg, t0)
        emit(report, cfg.output_format)
        return 0
    # verify
    try:
        form = load_eigenform(args.infile)
    except InputError as exc:
        report = _report(
            "eigenform", args, {"status": "fail", "reason": str(exc)}, cfg, t0
        )
        emit(report, cfg.output_format)
        return 1
    problems = verify_eigenform(form)
    status = "pass" if not problems else "fail"
    result = {"status": status, "problems": problems, "label": form.label,
              "weight": form.weight, "count": form.x_max}
    emit(_report("eigenform", args, result, cfg, t0), cfg.output_format)
    return 0 if status == "pass" else 1


def cmd_qform(args, cfg: Config) -> int:
    t0 = time.perf_counter()
    if args.action == "reduce":
        Q = _form_from_args(args, allow_principal=False)
        R = reduce_form(Q)
        result = {"input": str(Q), "reduced": str(R), "discriminant": R.discriminant}
        emit(_report("qform", args, result, cfg, t0), cfg.output_format)
        return 0
    if args.action == "class":
        cs = class_set(args.D)
        result = {
            "D": cs.D,
            "h": cs.h,
            "w": cs.w,
            "forms": [str(f) for f in cs.forms],
        }
        emit(_report("qform", args, result, cfg, t0), cfg.output_format)
        return 0
    if args.action == "represent":
        Q = _form_from_args(args)
        table = representation_counts(Q, args.upto)
        result = {
            "form": str(Q),
            "upto": args.upto,
            "r": {str(n): int(table[n]) for n in range(1, args.upto + 1)},
        }
        emit(_report("qform", args, result, cfg, t0), cfg.output_format)
        return 0
    # check-formula
    Q = _form_from_args(args)
    rep = verify_rep_formula(Q, args.upto)
    result = dataclasses.asdict(rep)
    result["form"] = str(Q)
    emit(_report("qform", args, result, cfg, t0), cfg.output_format)
    return 0 if rep.status == "pass" else 1 if rep.status == "fail" else 0


def cmd_constants(args, cfg: Config) -> int:
    t0 = time.perf_counter()
    fc = fold_constants(args.ell)
    result = {"ell": fc.ell, "A": fc.A, "B": fc.B}
    emit(_report("constants", args, result, cfg, t0), cfg.output_format)
    return 0


def cmd_cheb(args, cfg: Config) -> int:
    t0 = time.perf_counter()
    dec = cheb_decomposition(args.ell)  # raises on identity failure
    result = {
        "ell": dec.ell,
        "coeffs": {f"A[{j}]": int(v) for j, v in enumerate(dec.coeffs) if v},
        "identity": "PASS",
    }
    emit(_report("cheb", args, result, cfg, t0), cfg.output_format)
    return 0


def cmd_sum(args, cfg: Config) -> int:
    t0 = time.perf_counter()
    grid = [int(x) for x in args.grid.split(",")] if args.grid else None
    upto = max(grid) if grid else args.upto
    if upto is None:
        raise InputError("give --upto or --grid")
    form = _get_form(args, cfg, upto)
    if grid:
        Q = _form_from_args(args)
        rep = bound_ratio_sweep(form, Q, args.ell, grid, cfg.epsilon)
        result = _sweep_payload(rep, Q)
    elif args.a is not None:
        Q = _form_from_args(args, allow_principal=False)
        val = summatory_SQ(form, Q, args.ell, upto)
        result = {"kind": "S_Q", "form": str(Q), "X": upto, "value": val,
                  "weighting": "lattice count r_Q"}
    else:
        if args.D is None:
            raise InputError("give -D or -a -b -c")
        val = summatory_SD(form, args.D, args.ell, upto)
        result = {"kind": "S_D", "D": args.D, "X": upto, "value": val,
                  "weighting": "lattice count summed over the class set"}
    result["eigenform"] = form.label
    emit(_report("sum", args, result, cfg, t0), cfg.output_format)
    return 0


def _sweep_payload(rep: SumReport, Q: QuadraticForm) -> dict:
    return {
        "kind": "bound-ratio sweep",
        "form": str(Q),
        "grid": list(rep.grid),
        "S": list(rep.S_values),
        "log_bound": list(rep.log_bound_values),
        "ratio": list(rep.ratios),
        "max_ratio": max(rep.ratios),
        "exponent_variant": rep.exponent_variant,
    }


def cmd_signchange(args, cfg: Config) -> int:
    t0 = time.perf_counter()
    form = _get_form(args, cfg, args.limit)
    if args.mode == "I":
        target = None
    elif args.mode == "Q":
        target = _form_from_args(args)
    else:
        if args.D is None:
            raise InputError("mode D needs -D")
        target = args.D
    res = first_sign_change(form, args.ell, args.mode, target, args.limit)
    result = {
        "mode": res.mode,
        "n_star": res.n_star if res.n_star is not None
        else f"none found <= {res.search_limit}",
        "witness_a": str(res.witness_a) if res.witness_a is not None else None,
        "witness_form": str(res.witness_form) if res.witness_form else None,
        "search_limit": res.search_limit,
        "eigenform": form.label,
    }
    emit(_report("signchange", args, result, cfg, t0), cfg.output_format)
    return 0


def cmd_bounds(args, cfg: Config) -> int:
    t0 = time.perf_counter()
    weight = args.weight if args.weight is not None else cfg.default_weight
    if args.thm == "1.1":
        if args.X is None:
            raise InputError("theorem 1.1 bound needs -X")
        inp = BoundInputs(ell=args.ell, k=weight, N=args.level, D=args.D,
                          X=args.X, epsilon=cfg.epsilon)
        lb = thm11_log_bound(inp, args.exponent_variant)
        result = {
            "theorem": "1.1",
            "log_bound": lb,
            "bound": _safe_exp(lb),
            "exponent_variant": args.exponent_variant,
            "inputs": {"ell": args.ell, "k": weight, "N": args.level,
                       "D": args.D, "X": args.X, "epsilon": cfg.epsilon},
        }
    else:
        u0 = args.u0
        u0_source = "given"
        if u0 is None:
            beta = pow_step(alpha_step(cfg.truncation_K), args.ell)
            sol = solve_sigma(beta, U=6.0, h=cfg.grid_step, ell=args.ell)
            r = find_u0(sol)
            if r.status != "crossed":
                raise InputError(
                    "no positivity threshold found up to U=6; pass --u0 explicitly"
                )
            u0 = r.u0
            u0_source = f"computed (K={cfg.truncation_K}, h={cfg.grid_step})"
        inp = BoundInputs(ell=args.ell, k=weight, N=args.level, D=args.D,
                          epsilon=cfg.epsilon, u0=u0)
        lb = thm12_log_bound(inp, class_variant=args.class_variant)
        result = {
            "theorem": "1.2",
            "log_bound": lb,
            "bound": _safe_exp(lb),
            "u0": u0,
            "u0_source": u0_source,
            "class_variant": args.class_variant,
            "inputs": {"ell": args.ell, "k": weight, "N": args.level,
                       "D": args.D, "epsilon": cfg.epsilon},
        }
    emit(_report("bounds", args, result, cfg, t0), cfg.output_format)
    return 0


def _safe_exp(x: float) -> float:
    import math

    try:
        return math.exp(x)
    except OverflowError:
        return float("inf")


def cmd_lowerbound(args, cfg: Config) -> int:
    t0 = time.perf_counter()
    limit = int(round(args.Y**args.u))
    if limit > 10**7:
        raise InputError(f"Y^u = {limit} too large (cap 1e7)")
    form = None
    if args.weight is not None:
        form = build_level_one_eigenform(args.weight, min(limit, 10**6))
    rep = lowerbound_lhs(
        args.D, args.level, args.ell, args.Y, args.u,
        form=form, K=cfg.truncation_K,
    )
    result = {
        "lhs": rep.lhs,
        "main_term": rep.main_term,
        "ratio": rep.ratio,
        "sigma_u": rep.sigma_u,
        "Y": rep.Y,
        "u": rep.u,
        "beta0": rep.beta0,
        "weighting": "character divisor sum rstar",
    }
    if form is not None:
        result["negative_g_primes"] = list(rep.negative_gq_primes)
        result["eigenvalue_sum"] = rep.lambda_sum
    emit(_report("lowerbound", args, result, cfg, t0), cfg.output_format)
    return 0


def cmd_sigma(args, cfg: Config) -> int:
    t0 = time.perf_counter()
    beta = pow_step(alpha_step(cfg.truncation_K), args.ell)
    sol = solve_sigma(beta, U=args.U, h=cfg.grid_step, ell=args.ell)
    result: dict = {
        "ell": args.ell,
        "K": cfg.truncation_K,
        "h": cfg.grid_step,
        "U": sol.U,
        "beta0": sol.beta0,
    }
    if args.find_u0:
        r = find_u0(sol)
        result["u0"] = r.u0
        result["u0_status"] = r.status
    if args.table:
        step = max(1, int(round(args.table_step / sol.h)))
        rows = {}
        for i in range(0, sol.sigma.shape[0], step):
            rows[f"{i * sol.h:.6f}"] = float(sol.sigma[i])
        result["sigma"] = rows
    emit(_report("sigma", args, result, cfg, t0), cfg.output_format)
    return 0


def _report(command: str, args, result: dict, cfg: Config, t0: float) -> dict:
    inputs = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func", "format") and v is not None
    }
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "provenance": _provenance(cfg, t0),
    }


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lfoldq",
        description="Eigenform coefficient sums over binary quadratic form values",
    )
    ap.add_argument("--version", action="version", version=f"lfoldq {__version__}")
    ap.add_argument("--format", choices=("table", "json", "csv"), default="table")
    ap.add_argument("--epsilon", type=float, default=0.01)
    ap.add_argument("--step", type=float, default=1e-4, help="sigma grid step")
    ap.add_argument("-K", "--truncation", type=int, default=20,
                    help="kernel truncation order")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("eigenform", help="build, verify, or export coefficient tables")
    p.add_argument("action", choices=("build", "verify", "export"))
    p.add_argument("--weight", type=int, default=12)
    p.add_argument("--upto", type=int, default=1000)
    p.add_argument("--out")
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=cmd_eigenform)

    p = sub.add_parser("qform", help="reduction, class sets, representation counts")
    p.add_argument("action", choices=("reduce", "class", "represent", "check-formula"))
    p.add_argument("-a", type=int)
    p.add_argument("-b", type=int)
    p.add_argument("-c", type=int)
    p.add_argument("-D", type=int)
    p.add_argument("--upto", type=int, default=100)
    p.set_defaults(func=cmd_qform)

    p = sub.add_parser("constants", help="fold constants (A, B)")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("cheb", help="Chebyshev decomposition of x^ell")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_cheb)

    p = sub.add_parser("sum", help="summatory values and bound-ratio sweeps")
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("-D", type=int)
    p.add_argument("-a", type=int)
    p.add_argument("-b", type=int)
    p.add_argument("-c", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--upto", type=int)
    p.add_argument("--grid", help="comma-separated X values")
    p.add_argument("--in", dest="infile", help="eigenform coefficient file")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("signchange", help="first sign change with exact witness")
    p.add_argument("--mode", choices=("I", "Q", "D"), required=True)
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("-D", type=int)
    p.add_argument("-a", type=int)
    p.add_argument("-b", type=int)
    p.add_argument("-c", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--limit", type=int, default=1000)
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=cmd_signchange)

    p = sub.add_parser("bounds", help="closed-form bound evaluators")
    p.add_argument("--thm", choices=("1.1", "1.2"), required=True)
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("-D", type=int, required=True)
    p.add_argument("--weight", type=int)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("-X", type=float)
    p.add_argument("--u0", type=float)
    p.add_argument("--class-variant", action="store_true")
    p.add_argument("--exponent-variant", choices=("statement", "proof"),
                   default="statement")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lowerbound", help="sieve-weighted lower-bound sum")
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("-D", type=int, required=True)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--Y", type=float, required=True)
    p.add_argument("--u", type=float, default=1.0)
    p.add_argument("--weight", type=int,
                   help="also run the eigenvalue positivity diagnostic")
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("sigma", help="delay-equation density and u0")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--U", type=float, default=4.0)
    p.add_argument("--find-u0", action="store_true")
    p.add_argument("--table", action="store_true")
    p.add_argument("--table-step", type=float, default=0.05)
    p.set_defaults(func=cmd_sigma)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = Config(
            cache_dir=os.environ.get("LFOLD_CACHE_DIR"),
            output_format=args.format,
            epsilon=args.epsilon,
            grid_step=args.step,
            truncation_K=args.truncation,
            seed=args.seed,
        )
        return args.func(args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
