"""Command-line front end.

Usage::

    signedortho coeffs --alpha 0 --q 0 --n-max 3
    signedortho poly   --alpha 0 --q 0 --n 4 --route ttrr
    signedortho zeros  --alpha 0 --q 0 --n 2 --interlace-with 3
    signedortho zeros  --alpha 0 --q 0 --figure --format csv
    signedortho verify --n-max 20 --jobs 4 --format json --out report.json
    signedortho sweep  --alpha 0,1/2 --q 0,1 --n-max 12 --format csv

Exit status: 0 when every requested check passed, 1 on a failed check or
certification error, 2 on invalid parameters.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Iterable

from . import __version__
from .families import (
    FamilyParams,
    GGParams,
    IDENTITIES,
    check_identity,
    gg_poly,
    p_family_ttrr,
    p_poly_hyper,
    recurrence,
    ttrr_beta,
    ttrr_gamma,
)
from .hypergeom import HypParams, relation_holds, contiguous_residual
from .numerics import EXACT, FLOAT, ModeConfig, float_tolerance, float_context, is_exact, to_mode
from .orthogonality import (
    InnerProduct,
    QuasiDefinitenessError,
    gram_schmidt_oracle,
    recovered_recurrence,
    verify_orthogonality,
)
from .polynomials import Poly, max_abs_coeff
from .zeros import (
    CertificationError,
    Structural,
    check_interlacing,
    critical_point_check,
    find_zeros,
    largest_zero_chain,
    odd_even_zero_map,
)

DEFAULT_ALPHAS = "-1/2,0,1/2,1,3/2,5/2"
DEFAULT_QS = "0,1,2,3"
FIGURE_DEGREES = (2, 3)
# argument of the contiguous-relation checks: t = x^2 at x = 3/4
CONTIGUOUS_Z = Fraction(9, 16)


class ParameterError(ValueError):
    pass


# -- serialization -----------------------------------------------------------


def hex_float(x) -> str:
    sign, man, exp, _ = x._mpf_
    if not man and exp:
        raise ValueError(f"cannot serialize non-finite value {x}")
    return f"{'-' if sign else ''}0x{int(man):x}p{int(exp)}"


def parse_hex_float(text: str, precision_bits: int):
    ctx = float_context(precision_bits)
    text = text.strip()
    sign = -1 if text.startswith("-") else 1
    body = text.lstrip("-")
    mant, exp = body[2:].split("p")
    return ctx.mpf((sign * int(mant, 16), int(exp)))


def decimal_str(x, digits: int = 20) -> str:
    if is_exact(x):
        x = Fraction(x)
        with localcontext() as ctx:
            ctx.prec = digits
            return str(Decimal(x.numerator) / Decimal(x.denominator))
    return x.context.nstr(x, digits)


def scalar_json(x) -> Any:
    """Exact scalars become ``"p/q"`` strings; floats a hex/decimal pair."""
    if x is None:
        return None
    if is_exact(x):
        return str(Fraction(x))
    return {"hex": hex_float(x), "decimal": x.context.nstr(x, int(x.context.dps) + 2)}


def scalar_text(x) -> str:
    if x is None:
        return ""
    if is_exact(x):
        return str(Fraction(x))
    return x.context.nstr(x, int(x.context.dps) + 2)


def parse_scalar_json(value, precision_bits: int = 256):
    """Inverse of :func:`scalar_json`."""
    if isinstance(value, dict):
        return parse_hex_float(value["hex"], precision_bits)
    return Fraction(value)


# -- configuration -----------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    mode: str
    precision_bits: int
    tolerance: Fraction
    output: str
    out_path: str | None

    @property
    def mode_config(self) -> ModeConfig:
        return ModeConfig(self.mode, self.precision_bits, self.tolerance)


def _run_config(args) -> RunConfig:
    try:
        tol = Fraction(args.tol)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"--tol must be a rational or decimal number, got {args.tol!r}") from exc
    if tol <= 0:
        raise ParameterError("--tol must be positive")
    if args.precision < 64:
        raise ParameterError("--precision must be at least 64 bits")
    return RunConfig(args.mode, args.precision, tol, args.format, args.out)


def _family(cfg: RunConfig, alpha_text: str, q: int) -> FamilyParams:
    try:
        alpha = cfg.mode_config.scalar(alpha_text)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    if not alpha > -1:
        raise ParameterError(f"alpha must be > -1, got {alpha_text}")
    if q < 0:
        raise ParameterError(f"q must be a nonnegative integer, got {q}")
    return FamilyParams(alpha, q)


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _grid(cfg: RunConfig, alphas: str, qs: str) -> list[tuple[str, int]]:
    """Validated ``(alpha_text, q)`` pairs in grid order.

    Grid points travel to worker processes as text and are rebuilt there, so
    float scalars never cross a pickle boundary.
    """
    out = []
    try:
        q_values = [int(t) for t in _split(qs)]
    except ValueError as exc:
        raise ParameterError(f"--q must be a comma list of integers, got {qs!r}") from exc
    for a in _split(alphas):
        for q in q_values:
            _family(cfg, a, q)
            out.append((a, q))
    return out


# -- output ------------------------------------------------------------------


def _emit(cfg: RunConfig, text: str):
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows: Iterable[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _params_json(fp: FamilyParams) -> dict:
    return {"alpha": scalar_json(fp.alpha), "q": fp.q}


# -- coeffs ------------------------------------------------------------------


def cmd_coeffs(args) -> int:
    cfg = _run_config(args)
    fp = _family(cfg, args.alpha, args.q)
    if args.n_max < 0:
        raise ParameterError("--n-max must be >= 0")
    pairs = recurrence(fp, args.n_max)
    if cfg.output == "json":
        text = _json(
            {
                "params": _params_json(fp),
                "mode": cfg.mode,
                "coefficients": [
                    {"n": p.index, "beta": scalar_json(p.beta), "gamma": scalar_json(p.gamma)}
                    for p in pairs
                ],
            }
        )
    elif cfg.output == "csv":
        text = _csv(["n", "beta", "gamma"], ([p.index, scalar_text(p.beta), scalar_text(p.gamma)] for p in pairs))
    else:
        lines = [f"alpha={scalar_text(fp.alpha)} q={fp.q}", f"{'n':>4}  {'beta':>6}  gamma"]
        lines += [f"{p.index:>4}  {scalar_text(p.beta):>6}  {scalar_text(p.gamma) or '-'}" for p in pairs]
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return 0


# -- poly --------------------------------------------------------------------


def build_poly(fp: FamilyParams, n: int, route: str) -> Poly:
    if route == "ttrr":
        return p_family_ttrr(fp, n)[n]
    if route == "hyper":
        if n % 2:
            raise ParameterError("the hyper route requires an even n")
        return p_poly_hyper(fp, n)
    if route == "gs-oracle":
        return gram_schmidt_oracle(fp, n)[n]
    raise ParameterError(f"unknown route {route!r}")


def _poly_payload(name: str, p: Poly) -> dict:
    return {"name": name, "degree": p.degree, "coefficients": [scalar_json(c) for c in p.coeffs]}


def cmd_poly(args) -> int:
    cfg = _run_config(args)
    fp = _family(cfg, args.alpha, args.q)
    if args.n < 0:
        raise ParameterError("--n must be >= 0")
    polys = [(f"P_{args.n}", build_poly(fp, args.n, args.route))]
    if args.mu is not None:
        mu = cfg.mode_config.scalar(args.mu)
        if not mu > -1:
            raise ParameterError("mu must be > -1")
        polys.append((f"GG_{args.n}", gg_poly(GGParams(fp.alpha, mu), args.n)))
    if cfg.output == "json":
        text = _json(
            {
                "params": _params_json(fp),
                "mu": None if args.mu is None else scalar_json(cfg.mode_config.scalar(args.mu)),
                "mode": cfg.mode,
                "route": args.route,
                "n": args.n,
                "polynomials": [_poly_payload(name, p) for name, p in polys],
            }
        )
    elif cfg.output == "csv":
        rows = []
        for name, p in polys:
            rows += [[name, k, scalar_text(c)] for k, c in enumerate(p.coeffs)]
        text = _csv(["polynomial", "power", "coefficient"], rows)
    else:
        text = "".join(
            f"{name} = {p}\n  ascending: [{', '.join(scalar_text(c) for c in p.coeffs)}]\n" for name, p in polys
        )
    _emit(cfg, text)
    return 0


# -- zeros -------------------------------------------------------------------


def _root_json(i: int, r) -> dict:
    return {
        "index": i,
        "lo": scalar_json(r.lo),
        "hi": scalar_json(r.hi),
        "refined": scalar_json(r.refined),
        "decimal": decimal_str(r.refined),
        "structural": r.structural.value if r.structural else None,
    }


def figure_dataset(fp: FamilyParams, tol) -> list[list]:
    """Rows (x, family, zero_index) for the zeros of P_2 and P_3 on one axis."""
    rows = []
    for n in FIGURE_DEGREES:
        rs = find_zeros(fp, n, tol)
        for i, r in enumerate(rs.roots, start=1):
            rows.append([decimal_str(r.refined), f"P_{n}", i])
    return rows


def cmd_zeros(args) -> int:
    cfg = _run_config(args)
    fp = _family(cfg, args.alpha, args.q)
    tol = cfg.mode_config.tolerance
    if args.figure:
        rows = figure_dataset(fp, tol)
        if cfg.output == "json":
            text = _json({"params": _params_json(fp), "figure": [dict(zip(["x", "family", "zero_index"], r)) for r in rows]})
        else:
            text = _csv(["x", "family", "zero_index"], rows)
        _emit(cfg, text)
        return 0
    if args.n < 0:
        raise ParameterError("--n must be >= 0")
    rs = find_zeros(fp, args.n, tol)
    interlace = None
    if args.interlace_with is not None:
        other = args.interlace_with
        if abs(other - args.n) != 1:
            raise ParameterError("--interlace-with must be n-1 or n+1")
        rs_other = find_zeros(fp, other, tol)
        lo, hi = (rs, rs_other) if other > args.n else (rs_other, rs)
        interlace = check_interlacing(lo, hi)
    if cfg.output == "json":
        payload = {
            "params": _params_json(fp),
            "mode": cfg.mode,
            "n": args.n,
            "tolerance": scalar_json(tol),
            "roots": [_root_json(i, r) for i, r in enumerate(rs.roots, start=1)],
        }
        if interlace is not None:
            payload["interlacing"] = {
                "with": args.interlace_with,
                "interlaces": interlace.interlaces,
                "gap_counts": interlace.gap_counts,
                "witness": None
                if interlace.witness is None
                else [scalar_json(w.refined) for w in interlace.witness],
            }
        text = _json(payload)
    elif cfg.output == "csv":
        text = _csv(
            ["index", "lo", "hi", "refined", "decimal", "structural"],
            (
                [i, scalar_text(r.lo), scalar_text(r.hi), scalar_text(r.refined), decimal_str(r.refined),
                 r.structural.value if r.structural else ""]
                for i, r in enumerate(rs.roots, start=1)
            ),
        )
    else:
        lines = [f"zeros of P_{args.n}^({scalar_text(fp.alpha)},{fp.q}): {len(rs)}"]
        for i, r in enumerate(rs.roots, start=1):
            flag = f" (structural: {r.structural.value})" if r.structural else ""
            lines.append(f"  {i:>3}  {decimal_str(r.refined, 12)}{flag}  width<={decimal_str(tol, 3)}")
        if interlace is not None:
            if interlace.interlaces:
                lines.append("interlacing")
            else:
                a, b = interlace.witness
                lines.append(
                    f"non-interlacing, witness ({decimal_str(a.refined, 6)}, {decimal_str(b.refined, 6)})"
                )
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return 0


# -- verify ------------------------------------------------------------------


def _record(identity: str, fp: FamilyParams, n: int, ok: bool, detail) -> dict:
    return {
        "identity": identity,
        "params": _params_json(fp),
        "n": n,
        "status": "pass" if ok else "fail",
        "residual_norm_or_witness": detail,
    }


# float-mode roundoff budgets: recurrence and hypergeometric routes are
# well conditioned; Gram-Schmidt on monomials loses a few bits per degree
DIRECT_SLACK_BITS = 32


def _oracle_slack(x) -> int:
    return x.context.prec // 2


def _poly_zero(residual: Poly, reference: Poly, slack_bits: int | None = None) -> tuple[bool, Any]:
    norm = max_abs_coeff(residual)
    if residual.is_zero():
        return True, "0"
    if is_exact(residual.coeffs[0]):
        return False, scalar_json(norm)
    one = to_mode(1, residual.coeffs[0])
    slack = DIRECT_SLACK_BITS if slack_bits is None else slack_bits
    ok = norm <= float_tolerance(one, max_abs_coeff(reference), slack_bits=slack)
    return ok, decimal_str(norm)


def _scalar_eq(a, b, slack_bits: int = DIRECT_SLACK_BITS) -> bool:
    if is_exact(a):
        return a == b
    return abs(a - b) <= float_tolerance(a, max(abs(a), abs(b)), slack_bits=slack_bits)


def verify_point(fp: FamilyParams, n_max: int, tol, fault: tuple[int, Fraction] | None = None) -> list[dict]:
    """Every check for one (alpha, q) grid point, in a fixed order."""
    records = []
    one = to_mode(1, fp.alpha)
    ttrr = p_family_ttrr(fp, n_max)

    # closed-form recurrence vs Gram-Schmidt oracle
    try:
        oracle = gram_schmidt_oracle(fp, n_max)
    except QuasiDefinitenessError as exc:
        records.append(_record("recurrence_coefficients", fp, exc.index, False, str(exc)))
        oracle = None
    if oracle is not None:
        slack = None if is_exact(one) else _oracle_slack(one)
        for k, (beta, gamma) in enumerate(recovered_recurrence(fp, oracle)):
            ok = _scalar_eq(beta, ttrr_beta(fp, k), slack or 0)
            if k:
                ok = ok and _scalar_eq(gamma, ttrr_gamma(fp, k), slack or 0)
            poly_ok, norm = _poly_zero(oracle[k] - ttrr[k], ttrr[k], slack)
            detail = norm if ok else f"beta={scalar_text(beta)} gamma={scalar_text(gamma)}"
            records.append(_record("recurrence_coefficients", fp, k, ok and poly_ok, detail))

    # orthogonality characterization, optionally on a perturbed family
    polys = ttrr
    if fault is not None:
        polys = p_family_ttrr(fp, n_max, {fault[0]: to_mode(fault[1], fp.alpha)})
    inner = InnerProduct(fp)
    for n, p in enumerate(polys):
        rep = verify_orthogonality(fp, p, n, inner=inner)
        detail = scalar_json(rep.values[n]) if rep.passed else f"failing m={rep.failing_m}"
        records.append(_record("orthogonality", fp, n, rep.passed, detail))

    # route equivalence on even degrees
    for n in range(0, n_max + 1, 2):
        ref = ttrr[n]
        ok = True
        norm: Any = "0"
        for other in (p_poly_hyper(fp, n), p_poly_hyper(fp, n, "square"), gg_poly(fp.gg(), n)):
            ok_i, norm_i = _poly_zero(other - ref, ref)
            if not ok_i:
                ok, norm = False, norm_i
        records.append(_record("route_equivalence", fp, n, ok, norm))

    # structural identities (n is the half index)
    for identity in IDENTITIES:
        for m in range(0, n_max // 2 + 1):
            if identity in ("zeros1", "zeros2") and m == 0:
                continue
            if identity in ("p2np1gg2n", "p2np1gg2n2", "zeros3", "relationpmu") and 2 * m + 1 > n_max:
                continue
            params = fp.gg() if identity == "relationpmu" else fp
            residual = check_identity(identity, params, m)
            ok, norm = _poly_zero(residual, ttrr[min(2 * m + 1, n_max)])
            records.append(_record(identity, fp, m, ok, norm))

    # contiguous relations at the parameter shapes of the gamma derivations
    z = to_mode(CONTIGUOUS_Z, one)
    half = to_mode(Fraction(1, 2), one)
    for m in range(1, n_max // 2 + 1):
        for shift in (3, 5):
            hp = HypParams(m + fp.q + fp.alpha + shift * half, to_mode(-m, one), fp.q + 3 * half)
            for rel in range(1, 6):
                ok = relation_holds(rel, hp, z)
                records.append(_record(f"contig{rel}", fp, m, ok, scalar_json(contiguous_residual(rel, hp, z))))

    # zeros
    rootsets = {}
    for n in range(n_max + 1):
        try:
            rs = find_zeros(fp, n, tol, ttrr[n])
            rootsets[n] = rs
            interior_ok = all(-1 < r.lo and r.hi < 1 for r in rs.roots if r.structural is None)
            records.append(_record("real_zeros", fp, n, len(rs) == n and interior_ok, len(rs)))
        except CertificationError as exc:
            records.append(_record("real_zeros", fp, n, False, str(exc)))
            continue
        if n % 2:
            value = ttrr[n](-one)
            first = rs.roots[0]
            ok = first.structural is Structural.AT_MINUS_ONE and (value == 0 if is_exact(one) else True)
            records.append(_record("perron_zero", fp, n, ok, scalar_json(value)))
    for m in range(1, (n_max - 1) // 2 + 1):
        lo, hi = rootsets.get(2 * m), rootsets.get(2 * m + 1)
        if lo is None or hi is None:
            records.append(_record("non_interlacing", fp, m, False, "zeros unavailable"))
            continue
        res = check_interlacing(lo, hi)
        sym = res.witness is not None and res.witness[0].lo == -res.witness[1].hi
        witness = None if res.witness is None else [scalar_json(w.refined) for w in res.witness]
        records.append(_record("non_interlacing", fp, m, not res.interlaces and sym, witness))
    for m in range(1, n_max // 2 + 1):
        try:
            chain = largest_zero_chain(fp.alpha, fp.q, m, tol)
            records.append(_record("largest_zero_chain", fp, m, True, [decimal_str(r.refined) for r in chain]))
        except CertificationError as exc:
            records.append(_record("largest_zero_chain", fp, m, False, str(exc)))
    for m in range(0, (n_max - 1) // 2 + 1):
        for k in (0, 1):
            for l in (0, 1):
                try:
                    rep = odd_even_zero_map(fp.alpha, fp.q, m, k, l, tol)
                    records.append(_record(f"odd_even_zero_map[k={k},l={l}]", fp, m, True, scalar_json(rep.max_deviation)))
                except CertificationError as exc:
                    records.append(_record(f"odd_even_zero_map[k={k},l={l}]", fp, m, False, str(exc)))
    for n in range(2, n_max + 1, 2):
        try:
            rep = critical_point_check(fp, n, tol)
            records.append(_record("critical_points", fp, n, True, rep.counts))
        except CertificationError as exc:
            records.append(_record("critical_points", fp, n, False, str(exc)))
    return records


def _verify_task(task):
    cfg, (alpha, q), n_max, fault = task
    return verify_point(_family(cfg, alpha, q), n_max, cfg.mode_config.tolerance, fault)


def _map(func, tasks: list, jobs: int) -> list:
    """Map in grid order; results never depend on completion order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, tasks))


def run_verify(
    cfg: RunConfig, grid: list[tuple[str, int]], n_max: int, jobs: int = 1,
    fault: tuple[int, Fraction] | None = None,
) -> list[dict]:
    tasks = [(cfg, point, n_max, fault) for point in grid]
    return [rec for recs in _map(_verify_task, tasks, jobs) for rec in recs]


def cmd_verify(args) -> int:
    cfg = _run_config(args)
    grid = _grid(cfg, args.alpha, args.q)
    if args.n_max < 0:
        raise ParameterError("--n-max must be >= 0")
    fault = None
    if args.inject_fault is not None:
        if not 1 <= args.inject_fault < max(args.n_max, 1):
            raise ParameterError("--inject-fault index must satisfy 1 <= k < n-max")
        fault = (args.inject_fault, Fraction(args.fault_size))
    records = run_verify(cfg, grid, args.n_max, args.jobs, fault)
    failed = sum(1 for r in records if r["status"] != "pass")
    if cfg.output == "json":
        text = _json(
            {
                "config": {
                    "mode": cfg.mode,
                    "precision_bits": cfg.precision_bits if cfg.mode == FLOAT else None,
                    "tolerance": str(cfg.tolerance),
                    "n_max": args.n_max,
                    "alphas": _split(args.alpha),
                    "qs": _split(args.q),
                    "inject_fault": None if fault is None else [fault[0], str(fault[1])],
                },
                "summary": {"total": len(records), "failed": failed},
                "records": records,
            }
        )
    elif cfg.output == "csv":
        text = _csv(
            ["identity", "alpha", "q", "n", "status", "residual_norm_or_witness"],
            (
                [r["identity"], json.dumps(r["params"]["alpha"]), r["params"]["q"], r["n"], r["status"],
                 json.dumps(r["residual_norm_or_witness"], sort_keys=True)]
                for r in records
            ),
        )
    else:
        lines = [
            f"{r['status'].upper():4}  {r['identity']:<22} alpha={scalar_text(parse_scalar_json(r['params']['alpha'], cfg.precision_bits))}"
            f" q={r['params']['q']} n={r['n']}"
            for r in records
            if r["status"] != "pass" or args.verbose
        ]
        lines.append(f"{len(records) - failed}/{len(records)} checks passed")
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return 1 if failed else 0


# -- sweep -------------------------------------------------------------------


def sweep_point(fp: FamilyParams, n_max: int, tol) -> list[list]:
    rows = []
    prev = None
    for n in range(n_max + 1):
        rs = find_zeros(fp, n, tol)
        interior = [r for r in rs.roots if r.structural is None]
        perron = any(r.structural is Structural.AT_MINUS_ONE for r in rs.roots)
        interlaces = ""
        if prev is not None and n % 2 == 1 and n >= 3:
            interlaces = str(check_interlacing(prev, rs).interlaces).lower()
        rows.append(
            [
                scalar_text(fp.alpha),
                fp.q,
                n,
                len(rs),
                str(perron).lower(),
                decimal_str(interior[0].refined) if interior else "",
                decimal_str(interior[-1].refined) if interior else "",
                interlaces,
            ]
        )
        prev = rs
    return rows


SWEEP_COLUMNS = [
    "alpha",
    "q",
    "n",
    "root_count",
    "perron_zero",
    "smallest_interior_zero",
    "largest_zero",
    "interlaces_with_previous",
]


def _sweep_task(task):
    cfg, (alpha, q), n_max = task
    return sweep_point(_family(cfg, alpha, q), n_max, cfg.mode_config.tolerance)


def cmd_sweep(args) -> int:
    cfg = _run_config(args)
    grid = _grid(cfg, args.alpha, args.q)
    if args.n_max < 0:
        raise ParameterError("--n-max must be >= 0")
    tasks = [(cfg, point, args.n_max) for point in grid]
    rows = [row for rows in _map(_sweep_task, tasks, args.jobs) for row in rows]
    if cfg.output == "json":
        text = _json({"columns": SWEEP_COLUMNS, "rows": rows})
    elif cfg.output == "csv":
        text = _csv(SWEEP_COLUMNS, rows)
    else:
        text = "\n".join("  ".join(str(v) for v in row) for row in [SWEEP_COLUMNS] + rows) + "\n"
    _emit(cfg, text)
    return 0


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[EXACT, FLOAT], default=EXACT)
    common.add_argument("--precision", type=int, default=256, help="float-mode precision in bits")
    common.add_argument("--tol", default=str(Fraction(1, 2**60)), help="root enclosure width (rational or decimal)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--out", default=None, help="write output to this file")

    parser = argparse.ArgumentParser(prog="signedortho", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="recurrence coefficients beta_n, gamma_n")
    p.add_argument("--alpha", default="0")
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("poly", parents=[common], help="coefficients of P_n (and optionally GG_n)")
    p.add_argument("--alpha", default="0")
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--route", choices=["ttrr", "hyper", "gs-oracle"], default="ttrr")
    p.add_argument("--mu", default=None, help="also emit GG_n^(alpha, mu)")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("zeros", parents=[common], help="certified zeros of P_n")
    p.add_argument("--alpha", default="0")
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--interlace-with", type=int, default=None)
    p.add_argument("--figure", action="store_true", help="zeros of P_2 and P_3 as (x, family, zero_index)")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("verify", parents=[common], help="run every identity and zero check on a grid")
    p.add_argument("--alpha", default=DEFAULT_ALPHAS, help="comma-separated alphas")
    p.add_argument("--q", default=DEFAULT_QS, help="comma-separated q values")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--inject-fault", type=int, default=None, metavar="K",
                   help="perturb gamma_K in the family used by the orthogonality check")
    p.add_argument("--fault-size", default="1/1000")
    p.add_argument("-v", "--verbose", action="store_true", help="text format: list passing checks too")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="zero summary over a parameter grid")
    p.add_argument("--alpha", default=DEFAULT_ALPHAS)
    p.add_argument("--q", default=DEFAULT_QS)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"signedortho: error: {exc}", file=sys.stderr)
        return 2
    except CertificationError as exc:
        print(f"signedortho: certification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
