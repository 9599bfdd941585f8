"""Command-line interface.

Input is a JSON document read from ``--input PATH`` (or stdin)::

    {"field": "Q", "variables": ["x", "y", "z"], "forms": ["x", "y", "x+y"], "c": 2}
    {"field": "Fp:101", "U": [[1, 0], [1, 1], [1, 2], [1, 3]], "c": 2}

Exit status: 0 success, 1 a checked property fails, 2 bad input,
3 a Gröbner resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .groebner import ResourceError
from .polyring import PolyParseError, PolyRing
from .rees import (
    all_max_minors,
    jacobian_dual,
    lambda_Q,
    minors_ideal_generators,
    primary_decomposition_check,
    rees_defining_ideal,
    rees_ring,
)
from .scalars import Field, FieldError, field_descriptor, parse_field
from .star import (
    AbstractRegularSeq,
    StarConfig,
    check_Gs,
    form_name,
    linear_type_check,
    nlt_minimal_primes,
    normalize_forms,
    star_generators,
)
from .suites import SUITES, run_suite
from .taylor import power_generators, regular_case_equations

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


class InputError(ValueError):
    """Malformed input document; the message names the offending location."""


@dataclass
class JobSpec:
    field: Field
    config: StarConfig
    path: str  # "U" or "forms"
    trace: list = field(default_factory=list)  # how x1..xn, L1..Lr relate to the input
    options: dict = field(default_factory=dict)


@dataclass
class Outcome:
    status: int
    text: list
    data: dict


# --------------------------------------------------------------------------
# input
# --------------------------------------------------------------------------


def _load_document(raw: str) -> dict:
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("top level: expected an object")
    return doc


def _field_of(doc: dict) -> Field:
    desc = doc.get("field", "Q")
    if not isinstance(desc, str):
        raise InputError("field: expected a string such as 'Q' or 'Fp:101'")
    try:
        return parse_field(desc)
    except FieldError as exc:
        raise InputError(f"field: {exc}") from None


def _int_of(doc: dict, key: str, default: int) -> int:
    v = doc.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"{key}: expected an integer")
    return v


def parse_job(raw: str) -> JobSpec:
    doc = _load_document(raw)
    fld = _field_of(doc)
    c = _int_of(doc, "c", 2)
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise InputError("options: expected an object")
    has_u, has_forms = "U" in doc, "forms" in doc
    if has_u == has_forms:
        raise InputError("top level: give exactly one of 'U' or 'forms'")
    if has_u:
        U = doc["U"]
        if not isinstance(U, list) or not U or not all(isinstance(row, list) for row in U):
            raise InputError("U: expected a non-empty list of rows")
        width = {len(row) for row in U}
        if len(width) != 1:
            raise InputError("U: rows have different lengths")
        rows = []
        for i, row in enumerate(U):
            out = []
            for j, v in enumerate(row):
                try:
                    out.append(fld.parse(str(v)) if isinstance(v, str) else fld.convert(v))
                except (ValueError, ArithmeticError, TypeError) as exc:
                    raise InputError(f"U[{i}][{j}]: {exc}") from None
            rows.append(out)
        cfg = _make_config(rows, c, fld)
        return JobSpec(fld, cfg, "U", [], options)
    forms = doc["forms"]
    if not isinstance(forms, list) or not forms:
        raise InputError("forms: expected a non-empty list")
    names = doc.get("variables")
    if names is None:
        raise InputError("variables: required when forms are given")
    if not isinstance(names, list) or not names or not all(isinstance(v, str) for v in names):
        raise InputError("variables: expected a non-empty list of names")
    if len(set(names)) != len(names):
        raise InputError("variables: duplicate names")
    try:
        src = PolyRing(len(names), 0, False, fld, names=names)
    except ValueError as exc:
        raise InputError(f"variables: {exc}") from None
    polys = []
    for k, text in enumerate(forms):
        if not isinstance(text, str):
            raise InputError(f"forms[{k}]: expected a string")
        try:
            polys.append(src.parse(text))
        except PolyParseError as exc:
            raise InputError(f"forms[{k}]: {exc}") from None
    try:
        norm = normalize_forms(polys, c, fld)
    except ValueError as exc:
        raise InputError(f"forms: {exc}") from None
    if norm.config.c != c:
        raise InputError(f"c: {c} exceeds the number of independent forms ({norm.config.n})")
    cfg = norm.config
    trace = [f"{form_name(cfg.n, k + 1)} = {polys[idx]}" for k, idx in enumerate(norm.order)]
    return JobSpec(fld, cfg, "forms", trace, options)


def _make_config(rows: list, c: int, fld: Field) -> StarConfig:
    try:
        return StarConfig.create(rows, c, field=fld)
    except ValueError as exc:
        raise InputError(f"c: {exc}") from None


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _poly_lines(polys) -> list:
    return [str(p) for p in polys]


def _header(job: JobSpec) -> list:
    cfg = job.config
    lines = [f"field {field_descriptor(job.field)}; n={cfg.n} r={cfg.r} t={cfg.t} c={cfg.c}; input path: {job.path}"]
    lines += [f"  {t}" for t in job.trace]
    return lines


def _base_data(job: JobSpec, command: str) -> dict:
    cfg = job.config
    return {
        "command": command,
        "field": field_descriptor(job.field),
        "input_path": job.path,
        "trace": list(job.trace),
        "n": cfg.n,
        "r": cfg.r,
        "t": cfg.t,
        "c": cfg.c,
        "U": [[cfg.field.coeff_str(v) for v in row] for row in cfg.U.rows],
    }


def cmd_star_gens(job: JobSpec) -> Outcome:
    gens = star_generators(job.config)
    data = _base_data(job, "star gens")
    data["generators"] = _poly_lines(gens)
    text = _header(job) + [f"generators ({len(gens)}):"] + [f"  {g}" for g in data["generators"]]
    return Outcome(EXIT_OK, text, data)


def cmd_star_check(job: JobSpec, args) -> Outcome:
    cfg = job.config
    data = _base_data(job, "star check")
    text = _header(job)
    status = EXIT_OK
    if args.linear_type:
        holds = linear_type_check(cfg)
        data["linear_type"] = holds
        text.append(f"linear type: {str(holds).lower()}")
        status = EXIT_OK if holds else EXIT_PROPERTY
    elif args.gn or args.gs is not None:
        s = cfg.n if args.gn else args.gs
        res = check_Gs(cfg, s)
        label = f"G_{s}"
        data["condition"] = label
        data["holds"] = res.holds
        line = f"{label}: {str(res.holds).lower()}"
        if not res.holds:
            names = ", ".join(form_name(cfg.n, k) for k in res.witness)
            data["witness"] = [form_name(cfg.n, k) for k in res.witness]
            data["witness_height"] = res.height
            line += f" (witness {names}; height {res.height})"
        text.append(line)
        status = EXIT_OK if res.holds else EXIT_PROPERTY
    else:  # --nlt
        primes = nlt_minimal_primes(cfg)
        data["nlt"] = [{"forms": [form_name(cfg.n, k) for k in p.forms], "height": p.height} for p in primes]
        text.append(f"minimal non-linear-type primes ({len(primes)}):")
        text += [f"  {p.describe(cfg.n)} height {p.height}" for p in primes]
    return Outcome(status, text, data)


def cmd_rees_dual(job: JobSpec) -> Outcome:
    B = jacobian_dual(job.config)
    rows = B.to_strings()
    data = _base_data(job, "rees dual")
    data["B"] = rows
    width = max((len(e) for row in rows for e in row), default=1)
    text = _header(job) + [f"B ({B.nrows} x {B.ncols}):"]
    text += ["  " + " | ".join(e.rjust(width) for e in row) for row in rows]
    return Outcome(EXIT_OK, text, data)


def cmd_rees_minors(job: JobSpec, args) -> Outcome:
    cfg = job.config
    ring = rees_ring(cfg)
    data = _base_data(job, "rees minors")
    text = _header(job)
    if args.all:
        minors = all_max_minors(jacobian_dual(cfg, ring))
        data["mode"] = "all"
        data["minors"] = _poly_lines(minors)
        text.append(f"maximal minors of B ({len(minors)}):")
        text += [f"  {m}" for m in data["minors"]]
    else:
        gens = minors_ideal_generators(cfg, ring)
        data["mode"] = "closed-form"
        data["minors"] = [{"theta": list(g.theta), "m": str(g.m), "zero": g.is_zero} for g in gens]
        text.append(f"closed-form generators ({len(gens)}):")
        for g in gens:
            label = "{" + ",".join(map(str, g.theta)) + "}"
            text.append(f"  m_{label} = {g.m}" + ("  [zero]" if g.is_zero else ""))
    return Outcome(EXIT_OK, text, data)


def cmd_rees_equations(job: JobSpec) -> Outcome:
    ideal = rees_defining_ideal(job.config)
    data = _base_data(job, "rees equations")
    data["linear"] = _poly_lines(ideal.linear)
    data["fiber"] = _poly_lines(ideal.fiber)
    text = _header(job) + [f"linear relations ({len(ideal.linear)}):"]
    text += [f"  {p}" for p in data["linear"]]
    text += [f"fiber generators ({len(ideal.fiber)}):"] + [f"  {p}" for p in data["fiber"]]
    return Outcome(EXIT_OK, text, data)


def cmd_rees_primary(job: JobSpec) -> Outcome:
    cfg = job.config
    data = _base_data(job, "rees primary")
    lq = lambda_Q(cfg, rees_ring(cfg))
    rep = primary_decomposition_check(cfg)
    data["lambda"] = [list(ch) for ch in lq.minimal]
    data["Q"] = _poly_lines(rep.Q)
    data["P"] = _poly_lines(rep.P)
    data["checked"] = rep.hypothesis_holds
    data["equal"] = rep.equal
    text = _header(job)
    text.append("minimal vanishing index sets: " + (", ".join("{" + ",".join(map(str, ch)) + "}" for ch in lq.minimal) or "none"))
    text.append("Q = (" + ", ".join(data["Q"]) + ")")
    text.append(f"P ({len(rep.P)}):")
    text += [f"  {p}" for p in data["P"]]
    if not rep.hypothesis_holds:
        text.append(f"decomposition: not checked ({rep.note})")
        return Outcome(EXIT_OK, text, data)
    text.append(f"decomposition I_n(B) = Q ∩ P: {str(bool(rep.equal)).lower()}")
    return Outcome(EXIT_OK if rep.equal else EXIT_PROPERTY, text, data)


def cmd_taylor_equations(args) -> Outcome:
    fld = _parse_field_arg(args.field)
    seq = AbstractRegularSeq(args.t, args.degree, fld)
    lin, quad = regular_case_equations(args.t, args.c, args.m, seq)
    gens = power_generators(args.t, args.c, args.m)
    data = {
        "command": "taylor equations",
        "field": field_descriptor(fld),
        "t": args.t,
        "c": args.c,
        "m": args.m,
        "degree": args.degree,
        "generators": [list(g) for g in gens],
        "linear": _poly_lines(lin),
        "quadrics": _poly_lines(quad),
    }
    text = [f"field {field_descriptor(fld)}; t={args.t} c={args.c} m={args.m}; forms F_i = x_i^{args.degree}"]
    text.append(f"generators of the power: {len(gens)}")
    text += [f"linear relations ({len(lin)}):"] + [f"  {p}" for p in data["linear"]]
    text += [f"quadrics ({len(quad)}):"] + [f"  {p}" for p in data["quadrics"]]
    return Outcome(EXIT_OK, text, data)


def cmd_verify(args) -> Outcome:
    fld = _parse_field_arg(args.field)
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise InputError(f"--suite: unknown suite {args.suite!r}; choose from all, {', '.join(sorted(SUITES))}")
    reports = [run_suite(n, fld) for n in names]
    ok = all(r.passed for r in reports)
    text = []
    for r in reports:
        text += r.render().splitlines()
    data = {"command": "verify", "field": field_descriptor(fld), "suites": [r.as_dict() for r in reports], "passed": ok}
    return Outcome(EXIT_OK if ok else EXIT_PROPERTY, text, data)


def _parse_field_arg(desc: str) -> Field:
    try:
        return parse_field(desc)
    except FieldError as exc:
        raise InputError(f"--field: {exc}") from None


# --------------------------------------------------------------------------
# argument parsing and dispatch
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", default="-", help="input document (JSON); '-' reads stdin")
    common.add_argument("--format", choices=("text", "json"), default="text")
    fmt_only = argparse.ArgumentParser(add_help=False)
    fmt_only.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="starrees", description="Star configurations and their Rees algebras.")
    groups = p.add_subparsers(dest="group", required=True)

    star = groups.add_parser("star", help="star configuration ideals").add_subparsers(dest="cmd", required=True)
    star.add_parser("gens", parents=[common], help="minimal generators")
    chk = star.add_parser("check", parents=[common], help="linear type, G_s and the non-linear-type locus")
    which = chk.add_mutually_exclusive_group(required=True)
    which.add_argument("--linear-type", action="store_true")
    which.add_argument("--gn", action="store_true")
    which.add_argument("--gs", type=int, metavar="S")
    which.add_argument("--nlt", action="store_true")

    rees = groups.add_parser("rees", help="height-two Rees algebras").add_subparsers(dest="cmd", required=True)
    rees.add_parser("dual", parents=[common], help="Jacobian dual matrix")
    mn = rees.add_parser("minors", parents=[common], help="maximal minors of the Jacobian dual")
    mode = mn.add_mutually_exclusive_group()
    mode.add_argument("--all", action="store_true", help="every maximal minor, by determinant")
    mode.add_argument("--closed-form", action="store_true", help="closed-form generators (default)")
    rees.add_parser("equations", parents=[common], help="defining equations")
    rees.add_parser("primary", parents=[common], help="monomial and prime components of the minor ideal")

    tay = groups.add_parser("taylor", help="powers over a regular sequence").add_subparsers(dest="cmd", required=True)
    te = tay.add_parser("equations", parents=[fmt_only], help="Taylor relations and quadrics")
    te.add_argument("--t", type=int, required=True)
    te.add_argument("--c", type=int, required=True)
    te.add_argument("--m", type=int, required=True)
    te.add_argument("--degree", type=int, default=1, help="realize F_i = x_i^degree")
    te.add_argument("--field", default="Q")

    ver = groups.add_parser("verify", parents=[fmt_only], help="run a verification suite")
    ver.add_argument("--suite", required=True, help=f"one of: all, {', '.join(sorted(SUITES))}")
    ver.add_argument("--field", default="Fp:101")
    return p


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def run(args) -> Outcome:
    if args.group == "taylor":
        return cmd_taylor_equations(args)
    if args.group == "verify":
        return cmd_verify(args)
    job = parse_job(_read_input(args.input))
    if args.group == "star":
        return cmd_star_gens(job) if args.cmd == "gens" else cmd_star_check(job, args)
    if args.cmd == "dual":
        return cmd_rees_dual(job)
    if args.cmd == "minors":
        return cmd_rees_minors(job, args)
    if args.cmd == "equations":
        return cmd_rees_equations(job)
    return cmd_rees_primary(job)


def emit(outcome: Outcome, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(outcome.data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        stream.write("\n".join(outcome.text) + "\n")


def main(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        outcome = run(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:  # domain validation (parameters, degenerate or unsupported data)
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit(outcome, args.format, sys.stdout)
    return outcome.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
