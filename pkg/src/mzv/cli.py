"""Command-line front end: ``mzv <subcommand> [options]``.

Reports are JSON documents on stdout (schema "mzv-report/1"); diagnostics go
to stderr.  Exit codes: 0 success, 1 a cross-check ran but did not pass,
2 invalid input or domain violation, 3 capacity limit, 4 oracle failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import __version__
from .arith import (
    bernoulli_number,
    bernoulli_polynomial,
    format_scalar,
    parse_scalar,
    scalar_from_json,
    scalar_to_json,
)
from .closed_form import SpecialValueQuery, theorem1_value, theorem1_via_raabe_identity
from .errors import CapacityError, DomainError, OracleError, PoleError
from .oracle import ContinuationConfig, laurent_along_direction

__all__ = ["main", "build_parser", "SCHEMA", "EXIT_OK", "EXIT_CHECK_FAILED", "EXIT_DOMAIN", "EXIT_CAPACITY", "EXIT_ORACLE"]

SCHEMA = "mzv-report/1"
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOMAIN = 2
EXIT_CAPACITY = 3
EXIT_ORACLE = 4

MAX_TABLE = 10**4
DEFAULT_ACCEPT = 1e-6

_QUERY_KEYS = ("N", "gamma", "b", "theta")
_CONFIG_FLAGS = ("K", "M", "radius", "nodes")


class InputError(ValueError):
    pass


def _split(text) -> list[str]:
    if isinstance(text, (list, tuple)):
        return [str(t) for t in text]
    parts = [p.strip() for p in str(text).split(",")]
    if any(not p for p in parts):
        raise InputError(f"empty component in {text!r}")
    return parts


def _scalars(text, exact: bool) -> tuple:
    try:
        return tuple(parse_scalar(p, exact=exact) for p in _split(text))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _naturals(text) -> tuple[int, ...]:
    out = []
    for p in _split(text):
        try:
            v = int(p)
        except ValueError:
            raise InputError(f"malformed non-negative integer {p!r}") from None
        if v < 0:
            raise InputError(f"negative entry {v} in N")
        out.append(v)
    return tuple(out)


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("config file must hold a JSON object")
    return data


def _merged(args, file_cfg: dict, key: str, default=None):
    """Flag value if given, else the config file value, else the default."""
    v = getattr(args, key, None)
    if v is not None:
        return v
    return file_cfg.get(key, default)


def _query(args, file_cfg: dict, N=None) -> SpecialValueQuery:
    exact = _merged(args, file_cfg, "mode", "exact") == "exact"
    raw = {k: _merged(args, file_cfg, k) for k in _QUERY_KEYS}
    if N is None:
        if raw["N"] is None:
            raise InputError("--N is required")
        N = _naturals(raw["N"])
    n = len(N)
    vals = {}
    for k in ("gamma", "b", "theta"):
        if raw[k] is None:
            raise InputError(f"--{k} is required")
        vals[k] = _scalars(raw[k], exact)
        if len(vals[k]) != n:
            raise InputError(f"--{k} has {len(vals[k])} components, N has {n}")
    mode = "exact" if exact else "float"
    force = bool(_merged(args, file_cfg, "force_domain", False))
    return SpecialValueQuery(N, vals["gamma"], vals["b"], vals["theta"], mode=mode, force_domain=force)


def _accept_tolerance(args, file_cfg: dict) -> float:
    tol = _merged(args, file_cfg, "tolerance", DEFAULT_ACCEPT)
    if not tol > 0:
        raise InputError("--tolerance must be positive")
    return float(tol)


def _oracle_config(args, file_cfg: dict) -> ContinuationConfig:
    """Oracle settings; the internal tolerance sits well below the acceptance one."""
    accept = _accept_tolerance(args, file_cfg)
    data = dict(file_cfg.get("oracle", {}))
    for key in _CONFIG_FLAGS:
        v = getattr(args, key, None)
        if v is None and key in file_cfg:
            v = file_cfg[key]
        if v is not None:
            data[key] = v
    data.setdefault("tolerance", min(1e-8, accept * 1e-2))
    data.setdefault("laurent_tolerance", accept)
    try:
        return ContinuationConfig.from_mapping(data)
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid oracle configuration: {exc}") from None


def _query_echo(q: SpecialValueQuery) -> dict:
    return {
        "N": list(q.N),
        "gamma": [scalar_to_json(x) for x in q.gamma],
        "b": [scalar_to_json(x) for x in q.b],
        "theta": [scalar_to_json(x) for x in q.theta],
        "mode": q.mode,
        "force_domain": q.force_domain,
    }


def _config_echo(cfg: ContinuationConfig) -> dict:
    return {k: getattr(cfg, k) for k in cfg.__dataclass_fields__}


def _terms_json(report) -> list[dict]:
    return [
        {"I": list(t.I.members), "alpha": list(t.alpha), "k": list(t.k), "value": scalar_to_json(t.value)}
        for t in report.terms
    ]


def _eval_result(q: SpecialValueQuery, with_terms: bool) -> dict:
    rep = theorem1_value(q)
    out = {"value": scalar_to_json(rep.value), "mode": rep.mode, "domain_checked": rep.domain_checked}
    if rep.notes:
        out["notes"] = list(rep.notes)
    if with_terms:
        out["terms"] = _terms_json(rep)
    return out


def _laurent_json(exp) -> dict:
    n = exp.order
    return {
        "z0": scalar_to_json(exp.z0),
        "principal": {str(-k): scalar_to_json(exp.z(-k)) for k in range(1, n + 1)},
        "residual": exp.residual,
        "radius": exp.radius,
        "nodes": exp.nodes,
    }


def _crosscheck(q: SpecialValueQuery, cfg: ContinuationConfig, accept: float) -> dict:
    if q.n > 3:
        raise InputError("crosscheck supports n <= 3")
    exact = theorem1_value(q)
    exp = laurent_along_direction(q, cfg)
    gap = abs(complex(exact.value) - exp.z0)
    pole = max(abs(exp.z(-k)) for k in range(1, q.n + 1))
    return {
        "value": scalar_to_json(exact.value),
        "mode": exact.mode,
        "oracle": _laurent_json(exp),
        "gap": gap,
        "max_principal": pole,
        "tolerance": accept,
        "passed": bool(gap < accept and pole < accept),
    }


# subcommands -----------------------------------------------------------------


def run_eval(args, file_cfg):
    q = _query(args, file_cfg)
    return {"request": _query_echo(q), "result": _eval_result(q, args.terms)}, EXIT_OK


def run_oracle(args, file_cfg):
    q = _query(args, file_cfg)
    cfg = _oracle_config(args, file_cfg)
    exp = laurent_along_direction(q, cfg)
    req = _query_echo(q) | {"config": _config_echo(cfg)}
    return {"request": req, "result": _laurent_json(exp)}, EXIT_OK


def run_crosscheck(args, file_cfg):
    q = _query(args, file_cfg)
    cfg = _oracle_config(args, file_cfg)
    accept = _accept_tolerance(args, file_cfg)
    res = _crosscheck(q, cfg, accept)
    req = _query_echo(q) | {"config": _config_echo(cfg)}
    return {"request": req, "result": res}, EXIT_OK if res["passed"] else EXIT_CHECK_FAILED


def run_bernoulli(args, file_cfg):
    if args.k < 0:
        raise InputError("k must be non-negative")
    if args.polynomial:
        coeffs = bernoulli_polynomial(args.k)
        res = {"k": args.k, "coefficients": [scalar_to_json(c) for c in coeffs]}
    else:
        res = {"k": args.k, "values": [scalar_to_json(bernoulli_number(j)) for j in range(args.k + 1)]}
    return {"request": {"k": args.k, "polynomial": args.polynomial}, "result": res}, EXIT_OK


def run_raabe_check(args, file_cfg):
    q = _query(args, file_cfg)
    direct = theorem1_value(q).value
    lifted = theorem1_via_raabe_identity(q)
    if q.mode == "exact":
        equal = direct == lifted
        gap = 0.0 if equal else abs(complex(direct) - complex(lifted))
    else:
        gap = abs(complex(direct) - complex(lifted))
        equal = gap <= _accept_tolerance(args, file_cfg) * max(1.0, abs(complex(direct)))
    res = {
        "value": scalar_to_json(direct),
        "raabe_value": scalar_to_json(lifted),
        "gap": gap,
        "passed": bool(equal),
        "mode": q.mode,
    }
    return {"request": _query_echo(q), "result": res}, EXIT_OK if equal else EXIT_CHECK_FAILED


def _grid(lo: Sequence[int], hi: Sequence[int]) -> list[tuple[int, ...]]:
    if len(lo) != len(hi):
        raise InputError("--N-min and --N-max must have equal length")
    size = 1
    for a, b in zip(lo, hi):
        size *= max(0, b - a + 1)
    if size > MAX_TABLE:
        raise CapacityError(f"table grid has {size} entries, limit {MAX_TABLE}")
    return list(itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))))


def _table_row(payload):
    q, cfg, accept, check = payload
    row = {"N": list(q.N)}
    if check:
        row.update(_crosscheck(q, cfg, accept))
    else:
        row.update(_eval_result(q, False))
    return row


def run_table(args, file_cfg):
    hi_raw = _merged(args, file_cfg, "N_max")
    if hi_raw is None:
        raise InputError("--N-max is required")
    hi = _naturals(hi_raw)
    lo_raw = _merged(args, file_cfg, "N_min")
    lo = _naturals(lo_raw) if lo_raw is not None else (0,) * len(hi)
    grid = _grid(lo, hi)
    cfg = _oracle_config(args, file_cfg) if args.crosscheck else None
    accept = _accept_tolerance(args, file_cfg)
    payloads = [(_query(args, file_cfg, N=N), cfg, accept, args.crosscheck) for N in grid]
    jobs = args.jobs or 1
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_table_row, payloads))
    else:
        rows = [_table_row(p) for p in payloads]
    passed = all(r.get("passed", True) for r in rows)
    req = {"N_min": list(lo), "N_max": list(hi), "crosscheck": bool(args.crosscheck)}
    if grid:
        req.update({k: v for k, v in _query_echo(payloads[0][0]).items() if k != "N"})
    return {"request": req, "result": {"rows": rows}}, EXIT_OK if passed else EXIT_CHECK_FAILED


def _csv_text(report: dict) -> str:
    rows = report["result"]["rows"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    check = report["request"]["crosscheck"]
    w.writerow(["N", "value", "gap", "passed"] if check else ["N", "value"])
    for r in rows:
        v = format_scalar(scalar_from_json(r["value"]))
        N = " ".join(map(str, r["N"]))
        w.writerow([N, v, repr(r["gap"]), r["passed"]] if check else [N, v])
    return buf.getvalue()


# parser ----------------------------------------------------------------------


def _add_query(p: argparse.ArgumentParser) -> None:
    p.add_argument("--N", help="comma-separated non-negative integers")
    p.add_argument("--gamma", help="comma-separated scalars (p/q, a+bi or decimal)")
    p.add_argument("--b", help="comma-separated shifts")
    p.add_argument("--theta", help="comma-separated direction")
    p.add_argument("--mode", choices=("exact", "float"), default=None)
    p.add_argument("--force-domain", dest="force_domain", action="store_true", default=None,
                   help="skip domain checks; the report is marked unchecked")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with default values; flags override it")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (results are unchanged)")


def _add_oracle(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tolerance", type=float, default=None, help="acceptance tolerance (default 1e-6)")
    p.add_argument("--K", type=int, default=None, help="initial truncation order")
    p.add_argument("--M", type=int, default=None, help="direct-summation cutoff")
    p.add_argument("--radius", type=float, default=None, help="contour radius")
    p.add_argument("--nodes", type=int, default=None, help="contour nodes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mzv", description="Regularized multiple zeta values at non-positive integers.")
    parser.add_argument("--version", action="version", version=f"mzv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="exact closed-form value")
    _add_query(p)
    _add_common(p)
    p.add_argument("--terms", action="store_true", help="include the per-term breakdown")
    p.set_defaults(func=run_eval)

    p = sub.add_parser("oracle", help="numerical Laurent data along the direction theta")
    _add_query(p)
    _add_common(p)
    _add_oracle(p)
    p.set_defaults(func=run_oracle)

    p = sub.add_parser("crosscheck", help="closed form against the numerical oracle")
    _add_query(p)
    _add_common(p)
    _add_oracle(p)
    p.set_defaults(func=run_crosscheck)

    p = sub.add_parser("bernoulli", help="Bernoulli numbers B_0..B_k or the polynomial B_k(x)")
    p.add_argument("k", type=int)
    p.add_argument("--polynomial", action="store_true")
    _add_common(p)
    p.set_defaults(func=run_bernoulli)

    p = sub.add_parser("raabe-check", help="closed form against the Bernoulli-lift route")
    _add_query(p)
    _add_common(p)
    p.add_argument("--tolerance", type=float, default=None, help="relative tolerance in float mode")
    p.set_defaults(func=run_raabe_check)

    p = sub.add_parser("table", help="values over a grid of N")
    p.add_argument("--N-max", dest="N_max", help="componentwise upper bounds")
    p.add_argument("--N-min", dest="N_min", help="componentwise lower bounds (default 0)")
    p.add_argument("--gamma")
    p.add_argument("--b")
    p.add_argument("--theta")
    p.add_argument("--mode", choices=("exact", "float"), default=None)
    p.add_argument("--force-domain", dest="force_domain", action="store_true", default=None)
    p.add_argument("--crosscheck", action="store_true", help="add oracle gaps to every row")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    _add_common(p)
    _add_oracle(p)
    p.set_defaults(func=run_table)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.jobs is not None and args.jobs < 1:
            raise InputError("--jobs must be >= 1")
        file_cfg = _load_config(args.config)
        body, code = args.func(args, file_cfg)
    except (InputError, DomainError, PoleError) as exc:
        print(f"mzv: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CapacityError as exc:
        print(f"mzv: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OracleError as exc:
        print(f"mzv: oracle: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except ValueError as exc:
        print(f"mzv: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    report = {"schema": SCHEMA, "command": args.command}
    report.update(body)
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    report["version"] = __version__
    if getattr(args, "csv", False):
        _emit(_csv_text(report), args.output)
    else:
        _emit(json.dumps(report, indent=2) + "\n", args.output)
    if code == EXIT_CHECK_FAILED:
        print("mzv: check did not pass", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
