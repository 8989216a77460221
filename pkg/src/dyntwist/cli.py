"""Batch front end.

Config files are flat ``key = value`` lines; ``#`` starts a comment.  A value is an integer,
a rational ``p/q``, a bare word, ``true``/``false``, or a bracketed list of values written as
in JSON (rationals may stay unquoted, e.g. ``lambda = [4/3]``).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import hopfcheck as hc
from .errors import ConfigError, DyntwistError
from .orbit import DynamicalProduct, MatrixCoeffAlgebra, section_basis, star_associativity, star_product
from .repcat import Rep, irrep
from .rootdata import LeviDatum, build_sl, levi
from .scalars import scalar_json
from .twist import (
    TwistEngine,
    classical_r,
    distinct_weights,
    normal_condition_residuals,
    sample_points,
    unipotence_index,
    verify_cdybe,
    verify_equivariance,
    verify_qdybe,
    verify_shifted_cocycle,
    weight_block_violations,
)

COMMANDS = (
    "twist",
    "verify-cocycle",
    "verify-qdybe",
    "verify-cdybe",
    "verify-equivariance",
    "star-table",
    "bundle-check",
    "hopf-check",
)

KEYS = {
    "algebra": str,
    "levi": list,
    "reps": list,
    "duals": list,
    "mode": str,
    "lambda": list,
    "samples": int,
    "depth": int,
    "t_order": int,
    "seed": int,
    "invariant_first": bool,
    "sign": int,
    "weights": list,
    "lam0": list,
    "lam1": list,
    "character": list,
    "elements": int,
    "sections": int,
    "input": str,
    "hopf": str,
    "base": str,
}

_RATIONAL = re.compile(r"(?<![\"\w/])(-?\d+/\d+)(?![\"\w/])")


def config_error(message: str, line: int | None = None, key: str | None = None) -> ConfigError:
    where = []
    if line is not None:
        where.append(f"line {line}")
    if key is not None:
        where.append(f"field '{key}'")
    return ConfigError(f"{', '.join(where)}: {message}" if where else message)


def parse_value(text: str):
    text = text.strip()
    if text.startswith("["):
        return json.loads(_RATIONAL.sub(r'"\1"', text))
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    if re.fullmatch(r"-?\d+", text):
        return int(text)
    if re.fullmatch(r"-?\d+/\d+", text):
        return text
    return text


def parse_config(text: str) -> dict:
    cfg: dict = {}
    lines: dict = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise config_error("expected 'key = value'", n)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise config_error("unknown key", n, key)
        if key in cfg:
            raise config_error("duplicate key", n, key)
        try:
            val = parse_value(value)
        except (json.JSONDecodeError, ValueError) as exc:
            raise config_error(f"cannot parse value ({exc})", n, key) from None
        expected = KEYS[key]
        if expected is bool and not isinstance(val, bool):
            raise config_error("expected true or false", n, key)
        if expected is int and (isinstance(val, bool) or not isinstance(val, int)):
            raise config_error("expected an integer", n, key)
        if expected is list and not isinstance(val, list):
            raise config_error("expected a bracketed list", n, key)
        if expected is str and not isinstance(val, str):
            val = str(val)
        cfg[key] = val
        lines[key] = n
    cfg["_lines"] = lines
    return cfg


# ---------------------------------------------------------------------------
# validated job


class Job:
    def __init__(self, command: str, cfg: dict):
        self.command = command
        self.cfg = cfg
        self.lines = cfg.get("_lines", {})

    def err(self, key: str, message: str) -> ConfigError:
        return config_error(message, self.lines.get(key), key)

    def rational(self, key: str, x) -> Fraction:
        try:
            return Fraction(x)
        except (TypeError, ValueError):
            raise self.err(key, f"'{x}' is not a rational number") from None

    def algebra(self):
        name = self.cfg.get("algebra")
        if name is None:
            raise self.err("algebra", "missing")
        m = re.fullmatch(r"sl(\d+)", str(name))
        if not m or int(m.group(1)) < 2:
            raise self.err("algebra", "expected sl<n> with n >= 2")
        return build_sl(int(m.group(1)))

    def levi(self, g) -> LeviDatum:
        retained = self.cfg.get("levi", [])
        for k in retained:
            if not isinstance(k, int) or not 1 <= k < g.n:
                raise self.err("levi", f"simple root index {k!r} outside 1..{g.n - 1}")
        if len(set(retained)) != len(retained):
            raise self.err("levi", "repeated simple root index")
        if len(retained) == g.n - 1:
            raise self.err("levi", "the Levi subalgebra must be proper")
        return levi(g, sorted(retained))

    def highest_weight(self, g, key: str, hw) -> tuple:
        if not isinstance(hw, list) or len(hw) != g.rank or not all(isinstance(x, int) and x >= 0 for x in hw):
            raise self.err(key, f"highest weight {hw!r} must list {g.rank} non-negative integers")
        return tuple(hw)

    def reps(self, g, count: int | None = None) -> list[Rep]:
        raw = self.cfg.get("reps")
        if raw is None:
            raise self.err("reps", "missing")
        if count is not None and len(raw) != count:
            raise self.err("reps", f"expected {count} representations, got {len(raw)}")
        duals = self.cfg.get("duals", [0] * len(raw))
        if len(duals) != len(raw):
            raise self.err("duals", "length differs from reps")
        out = []
        for hw, d in zip(raw, duals):
            R = irrep(g, self.highest_weight(g, "reps", hw))
            out.append(R.dual() if d else R)
        return out

    def point(self, key: str, L: LeviDatum, default=None) -> tuple:
        raw = self.cfg.get(key, default)
        if raw is None:
            raise self.err(key, "missing")
        if len(raw) != L.r:
            raise self.err(key, f"expected {L.r} coordinates")
        return tuple(self.rational(key, x) for x in raw)

    def mode(self) -> str:
        mode = self.cfg.get("mode", "samples")
        if mode not in ("symbolic", "samples", "point"):
            raise self.err("mode", "expected symbolic, samples or point")
        return mode

    def get_int(self, key: str, default: int, minimum: int = 0) -> int:
        val = self.cfg.get(key, default)
        if val < minimum:
            raise self.err(key, f"must be at least {minimum}")
        return val


# ---------------------------------------------------------------------------
# commands


def _identity_report(rep) -> dict:
    out = {"identity": rep.name, "ok": rep.ok, "samples": rep.samples}
    if rep.first_violation is not None:
        out["message"] = f"{rep.name} violated at entry {tuple(rep.first_violation)}"
        out["first_violation"] = list(rep.first_violation)
    if rep.details:
        out["details"] = rep.details
    return out


def _points(job: Job, L: LeviDatum) -> list[tuple] | None:
    mode = job.mode()
    if mode == "symbolic":
        return [L.symbolic_character()]
    if mode == "point":
        return [job.point("lambda", L)]
    return None


def cmd_twist(job: Job) -> tuple[bool, dict]:
    g = job.algebra()
    L = job.levi(g)
    V, W = job.reps(g, 2)
    engine = TwistEngine(L)
    pts = _points(job, L) or sample_points(L, job.get_int("samples", 1, 1), job.get_int("seed", 0))
    depth = job.cfg.get("depth")
    results = [engine.twist(V, W, p, depth=depth).to_json() for p in pts]
    return True, {"twists": results}


def _sampled_identity(job: Job, verify) -> tuple[bool, dict]:
    g = job.algebra()
    L = job.levi(g)
    V, W, U = job.reps(g, 3)
    pts = _points(job, L)
    kwargs = {}
    if job.command == "verify-cocycle" and job.cfg.get("invariant_first"):
        kwargs["invariant_first"] = True
    if pts is not None:
        rep = verify(L, V, W, U, lam=pts[0], **kwargs)
    else:
        rep = verify(L, V, W, U, samples=job.cfg.get("samples"), seed=job.get_int("seed", 0), **kwargs)
    return rep.ok, _identity_report(rep)


def cmd_cocycle(job: Job):
    return _sampled_identity(job, verify_shifted_cocycle)


def cmd_qdybe(job: Job):
    return _sampled_identity(job, verify_qdybe)


def cmd_equivariance(job: Job):
    g = job.algebra()
    L = job.levi(g)
    V, W = job.reps(g, 2)
    engine = TwistEngine(L)
    pts = _points(job, L) or sample_points(L, job.get_int("samples", 3, 1), job.get_int("seed", 0))
    ok = True
    checks = []
    for p in pts:
        rep = verify_equivariance(L, V, W, p, engine)
        F = engine.twist(V, W, p)
        idx = unipotence_index(F)
        blocks = weight_block_violations(F)
        bound = distinct_weights(V, W)
        passed = rep.ok and idx <= bound and not blocks
        ok &= passed
        checks.append({
            "lambda": [scalar_json(x) for x in p],
            "ok": passed,
            "equivariance": rep.details,
            "unipotence_index": idx,
            "distinct_weights": bound,
            "off_block_entries": [list(b) for b in blocks],
        })
    return ok, {"identity": "equivariance, unipotence and weight preservation", "checks": checks}


def cmd_cdybe(job: Job):
    g = job.algebra()
    L = job.levi(g)
    (V,) = job.reps(g, 1)
    sign = job.cfg.get("sign", 1)
    if sign not in (1, -1):
        raise job.err("sign", "expected 1 or -1")
    engine = TwistEngine(L)
    coeffs = classical_r(engine, V, V, 1)
    r = coeffs[1]
    rep = verify_cdybe(L, r, V, sign)
    bad_normal = normal_condition_residuals(L, r, V)
    out = _identity_report(rep)
    out["order0_is_identity"] = all(
        coeffs[0][i][j] == (1 if i == j else 0) for i in range(len(r)) for j in range(len(r))
    )
    out["r"] = [[scalar_json(x) for x in row] for row in r]
    out["normal_condition_failures"] = bad_normal
    ok = rep.ok and not bad_normal and out["order0_is_identity"]
    return ok, out


def _element_json(a: dict) -> dict:
    return {",".join(map(str, hw)): [[scalar_json(x) for x in row] for row in m] for hw, m in sorted(a.items())}


def _orbit_setup(job: Job):
    g = job.algebra()
    L = job.levi(g)
    raw = job.cfg.get("weights")
    if raw is None:
        raise job.err("weights", "missing")
    hws = [job.highest_weight(g, "weights", hw) for hw in raw]
    A = MatrixCoeffAlgebra(g, hws)
    P = DynamicalProduct(A, L)
    lam0 = job.point("lam0", L)
    if any(x == 0 for x in lam0):
        raise job.err("lam0", "coordinates must be nonzero")
    lam1 = job.point("lam1", L, [0] * L.r)
    return g, L, A, P, hws, lam0, lam1


def cmd_star_table(job: Job):
    g, L, A, P, hws, lam0, lam1 = _orbit_setup(job)
    order = job.get_int("t_order", 2)
    basis = section_basis(A, L, [0] * L.r, hws)
    limit = job.get_int("elements", len(basis), 1)
    basis = basis[:limit]
    table = []
    blocks = set()
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            series = star_product(P, a, b, lam0, lam1, order)
            for term in series:
                blocks.update(term)
            table.append({"left": i, "right": j, "orders": [_element_json(t) for t in series]})
    classical_ok = all(
        _element_json(A.product(basis[row["left"]], basis[row["right"]])) == row["orders"][0] for row in table
    )
    return classical_ok, {
        "basis": [_element_json(a) for a in basis],
        "lam0": [str(x) for x in lam0],
        "lam1": [str(x) for x in lam1],
        "t_order": order,
        "blocks_reached": sorted(",".join(map(str, b)) for b in blocks),
        "order0_is_classical": classical_ok,
        "table": table,
    }


def cmd_bundle_check(job: Job):
    g, L, A, P, hws, lam0, lam1 = _orbit_setup(job)
    order = job.get_int("t_order", 2)
    alpha = job.point("character", L)
    functions = section_basis(A, L, [0] * L.r, hws)[: job.get_int("elements", 2, 1)]
    sections = section_basis(A, L, alpha, hws)
    if not sections:
        raise job.err("character", "no sections of this character in the chosen blocks")
    sections = sections[: job.get_int("sections", 2, 1)]
    laws = {"left module": [], "right module": [], "wrong shift (control)": []}
    for a in functions:
        for s1 in sections:
            for s2 in functions + sections[:1]:
                laws["left module"].append(star_associativity(P, a, s1, s2, lam0, lam1, order))
            for b in functions:
                laws["right module"].append(star_associativity(P, s1, a, b, lam0, lam1, order))
                laws["wrong shift (control)"].append(
                    star_associativity(P, s1, a, b, lam0, lam1, order, shift=(0,) * L.r))
    left_ok = all(all(x) for x in laws["left module"])
    right_ok = all(all(x) for x in laws["right module"])
    control_fails = any(not all(x) for x in laws["wrong shift (control)"])
    report = {
        "character": [str(x) for x in alpha],
        "t_order": order,
        "left_module": left_ok,
        "right_module": right_ok,
        "control_detected": control_fails,
        "per_order": {k: [all(v[k2] for v in vals) for k2 in range(order + 1)] for k, vals in laws.items()},
    }
    if not (left_ok and right_ok):
        report["message"] = "module law violated"
    return left_ok and right_ok and control_fails, report


def _hopf_from_descriptor(job: Job, descriptor: str) -> hc.FinHopf:
    kind, _, args = descriptor.partition(":")
    try:
        nums = [int(x) for x in args.split(",")] if args else []
    except ValueError:
        raise job.err("hopf", f"bad parameters in '{descriptor}'") from None
    if kind == "group" and nums:
        return hc.abelian_group_algebra(nums)
    if kind == "symmetric" and len(nums) == 1:
        return hc.symmetric_group_algebra(nums[0])
    if kind == "functions" and nums:
        return hc.function_algebra(nums)
    if kind == "enveloping" and len(nums) == 2:
        return hc.truncated_symmetric(nums[0], nums[1])
    raise job.err("hopf", f"unknown Hopf algebra '{descriptor}'")


def cmd_hopf_check(job: Job):
    base_kind = job.cfg.get("base", "self")
    if "input" in job.cfg:
        try:
            data = json.loads(Path(job.cfg["input"]).read_text())
            H = hc.hopf_from_json(data["hopf"])
            L = hc.base_from_json(data["base"]) if "base" in data else hc.hopf_as_base(H)
        except (OSError, KeyError, ValueError, TypeError) as exc:
            raise job.err("input", f"cannot read structure tensors ({exc})") from None
    elif "hopf" in job.cfg:
        descriptor = job.cfg["hopf"]
        if base_kind in ("factor0", "factor1"):
            parts = descriptor.split("*")
            if len(parts) != 2:
                raise job.err("hopf", "factor bases need 'A*B'")
            H, L = hc.factor_as_base(_hopf_from_descriptor(job, parts[0]), _hopf_from_descriptor(job, parts[1]),
                                     0 if base_kind == "factor0" else 1)
        elif base_kind == "shift":
            kind, _, args = descriptor.partition(":")
            if kind != "functions":
                raise job.err("base", "the shift base needs hopf = functions:<orders>")
            H, L = hc.shift_base([int(x) for x in args.split(",")])
        elif base_kind == "self":
            H = _hopf_from_descriptor(job, descriptor)
            L = hc.hopf_as_base(H)
        else:
            raise job.err("base", "expected self, factor0, factor1 or shift")
    else:
        raise job.err("hopf", "give either 'hopf' or 'input'")
    hopf_bad = hc.hopf_violations(H)
    rep = hc.check_base_algebra(H, L, hc.regular_module(H))
    dual_ok = hc.check_dual_tau_inverse(H, hc.regular_module(H))
    out = {
        "hopf": H.name,
        "hopf_axiom_failures": hopf_bad,
        "base_algebra_failures": [[a, repr(w)] for a, w in rep.failures],
        "dual_permutation_invertible": dual_ok,
        "truncated": H.top is not None,
    }
    ok = not hopf_bad and rep.ok and dual_ok
    if not ok:
        out["message"] = "; ".join(
            [f"Hopf axiom '{a}' violated" for a in hopf_bad] + [f"base algebra axiom '{a}' violated" for a, _ in rep.failures]
        )
    return ok, out


HANDLERS = {
    "twist": cmd_twist,
    "verify-cocycle": cmd_cocycle,
    "verify-qdybe": cmd_qdybe,
    "verify-cdybe": cmd_cdybe,
    "verify-equivariance": cmd_equivariance,
    "star-table": cmd_star_table,
    "bundle-check": cmd_bundle_check,
    "hopf-check": cmd_hopf_check,
}


def run(command: str, cfg: dict, out_dir: Path) -> int:
    job = Job(command, cfg)
    report: dict = {"command": command}
    code = 0
    try:
        ok, body = HANDLERS[command](job)
        report.update(body)
        report["status"] = "pass" if ok else "fail"
        code = 0 if ok else 1
    except DyntwistError as exc:
        report["status"] = "error"
        report["message"] = f"{type(exc).__name__}: {exc}"
        code = 2
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{command}.json"
    path.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    if code == 2:
        print(report["message"], file=sys.stderr)
    elif code == 1:
        print(report.get("message", f"{command}: violation found"), file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dyntwist", description="Dynamical twists, R-matrices and quantized orbits.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", type=Path, required=True, help="flat key = value job file")
    p.add_argument("--out", type=Path, default=Path("."), help="directory for the JSON report")
    p.add_argument("--samples", type=int, help="number of sample points")
    p.add_argument("--depth", type=int, help="Verma truncation depth")
    p.add_argument("--t-order", type=int, dest="t_order", help="order of t-expansions")
    p.add_argument("--seed", type=int, help="seed for sample points")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config.read_text())
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    for key in ("samples", "depth", "t_order", "seed"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    return run(args.command, cfg, args.out)


if __name__ == "__main__":
    sys.exit(main())
