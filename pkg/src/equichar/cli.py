"""Command line driver: parse a problem description, run the analysis, and
render the result as text, JSON, or LaTeX.

Problem files are JSON:

    {
      "name": "c6-z2",
      "rank": 2,
      "generators": [[[0, 1], [-1, 1]]],
      "character_table": {...optional, see below...},
      "options": {"q_max": 24, "max_order": 100000,
                  "format": "text", "verify": true}
    }

A supplied character table overrides the built-in table computation and uses
the exchange schema {"conductor": m, "classes": [...], "rows": [[[num, den]
per power of the m-th root of unity] per class] per row}.

Exit codes: 0 when every verification verdict passes, 1 when the analysis
ran but some verdict failed, 2 for input or pipeline errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from math import lcm
from pathlib import Path

from .analysis import AnalysisReport, analyze, report_to_dict
from .errors import (DimensionMismatch, EnumerationCapExceeded, EquicharError,
                     GroupMismatch, NoMatch, NonRationalCoefficient,
                     NonUnimodularGenerator, NotACharacter, NotASubgroup,
                     NotLinearCharacter, OrderCapExceeded, ParseError,
                     PrimeSearchFailed, UnknownExample, ValidationError,
                     ValidationFailed)
from .gcdpoly import divisors_of
from .groups import DEFAULT_MAX_ORDER, generate_group
from .intmat import IntMatrix

FORMATS = ("text", "json", "latex")


@dataclass(frozen=True)
class ProblemOptions:
    q_max: int | None = None
    max_order: int = DEFAULT_MAX_ORDER
    output_format: str = "text"
    verify: bool = True


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    rank: int
    generators: tuple[IntMatrix, ...]
    character_table: dict | None = None
    options: ProblemOptions = ProblemOptions()


BUILTINS: dict[str, dict] = {
    "c6-z2": {
        "description": "cyclic group of order 6 acting on Z^2",
        "rank": 2,
        "generators": [[[0, 1], [-1, 1]]],
    },
    "c6-z3": {
        "description": "cyclic group of order 6 acting on Z^3",
        "rank": 3,
        "generators": [[[-1, -1, 0], [1, 0, 0], [0, 0, -1]]],
    },
    "s3-a2": {
        "description": "symmetric group of degree 3 on the A2 root lattice",
        "rank": 2,
        "generators": [[[-1, 1], [0, 1]], [[0, -1], [1, -1]]],
    },
    "trivial-z2": {
        "description": "trivial group acting on Z^2",
        "rank": 2,
        "generators": [],
    },
    "dihedral-z2": {
        "description": "dihedral group of order 8 acting on Z^2",
        "rank": 2,
        "generators": [[[0, 1], [-1, 0]], [[0, 1], [1, 0]]],
    },
}

# where in the pipeline each failure class originates, for error rendering
_PROVENANCE = (
    (ParseError, "problem input"),
    (ValidationError, "problem input"),
    (UnknownExample, "problem input"),
    (DimensionMismatch, "matrix arithmetic"),
    (NonUnimodularGenerator, "group construction"),
    (OrderCapExceeded, "group construction"),
    (GroupMismatch, "class functions"),
    (NotASubgroup, "class functions"),
    (ValidationFailed, "character table validation"),
    (PrimeSearchFailed, "character table computation"),
    (NoMatch, "character table lookup"),
    (NonRationalCoefficient, "multiplicity assembly"),
    (NotACharacter, "reciprocity character"),
    (NotLinearCharacter, "orbit counting"),
    (EnumerationCapExceeded, "oracle enumeration"),
)


def builtin(name: str) -> ProblemSpec:
    if name not in BUILTINS:
        known = ", ".join(sorted(BUILTINS))
        raise UnknownExample(f"unknown builtin {name!r}; available: {known}")
    entry = BUILTINS[name]
    gens = tuple(IntMatrix.from_rows(rows) for rows in entry["generators"])
    return ProblemSpec(name=name, rank=entry["rank"], generators=gens)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def _parse_options(raw: object) -> ProblemOptions:
    _require(isinstance(raw, dict), "options must be an object")
    allowed = {"q_max", "max_order", "format", "verify"}
    unknown = set(raw) - allowed
    _require(not unknown, f"unknown options keys: {sorted(unknown)}")
    opts = ProblemOptions()
    if "q_max" in raw:
        _require(isinstance(raw["q_max"], int) and raw["q_max"] >= 1,
                 "options.q_max must be a positive integer")
        opts = replace(opts, q_max=raw["q_max"])
    if "max_order" in raw:
        _require(isinstance(raw["max_order"], int) and raw["max_order"] >= 1,
                 "options.max_order must be a positive integer")
        opts = replace(opts, max_order=raw["max_order"])
    if "format" in raw:
        _require(raw["format"] in FORMATS,
                 f"options.format must be one of {FORMATS}")
        opts = replace(opts, output_format=raw["format"])
    if "verify" in raw:
        _require(isinstance(raw["verify"], bool),
                 "options.verify must be a boolean")
        opts = replace(opts, verify=raw["verify"])
    return opts


def parse_input(path: str | Path) -> ProblemSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from exc
    _require(isinstance(payload, dict), f"{path}: top level must be an object")
    allowed = {"name", "rank", "generators", "character_table", "options"}
    unknown = set(payload) - allowed
    _require(not unknown, f"{path}: unknown keys: {sorted(unknown)}")
    name = payload.get("name", path.stem)
    _require(isinstance(name, str) and name, "name must be a nonempty string")
    _require("rank" in payload, "missing required field: rank")
    rank = payload["rank"]
    _require(isinstance(rank, int) and rank >= 1,
             "rank must be a positive integer")
    raw_gens = payload.get("generators", [])
    _require(isinstance(raw_gens, list), "generators must be a list")
    gens = []
    for pos, rows in enumerate(raw_gens):
        label = f"generators[{pos}]"
        _require(isinstance(rows, list) and len(rows) == rank,
                 f"{label} must have {rank} rows")
        for row in rows:
            _require(isinstance(row, list) and len(row) == rank,
                     f"{label} must be a square {rank}x{rank} matrix")
            _require(all(isinstance(x, int) and not isinstance(x, bool)
                         for x in row),
                     f"{label} entries must be integers")
        gens.append(IntMatrix.from_rows(rows))
    table = payload.get("character_table")
    if table is not None:
        _require(isinstance(table, dict), "character_table must be an object")
    options = (_parse_options(payload["options"]) if "options" in payload
               else ProblemOptions())
    return ProblemSpec(name=name, rank=rank, generators=tuple(gens),
                       character_table=table, options=options)


def run_analyze(spec: ProblemSpec) -> AnalysisReport:
    group = generate_group(spec.generators, max_order=spec.options.max_order,
                           rank=spec.rank)
    return analyze(group, raw_table=spec.character_table, name=spec.name,
                   q_max=spec.options.q_max, verify=spec.options.verify)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _poly_pieces(coeffs: tuple[Fraction, ...]) -> tuple[int, list[int]]:
    # common denominator and integer numerator coefficients, low to high
    denom = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return denom, [int(c * denom) for c in coeffs]


def _format_poly(nums: list[int], var: str, latex: bool) -> str:
    if not any(nums):
        return "0"
    parts = []
    for power in range(len(nums) - 1, -1, -1):
        c = nums[power]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            if power == 1:
                head = var
            elif latex:
                head = f"{var}^{{{power}}}"
            else:
                head = f"{var}^{power}"
            body = head if mag == 1 else f"{mag}{head}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def format_constituent(coeffs: tuple[Fraction, ...], var: str = "q",
                       latex: bool = False) -> str:
    denom, nums = _poly_pieces(coeffs)
    body = _format_poly(nums, var, latex)
    if denom == 1:
        return body
    if latex:
        return rf"\dfrac{{1}}{{{denom}}}\left({body}\right)"
    return f"({body})/{denom}"


def _row_label(report: AnalysisReport, i: int) -> str:
    tags = []
    if i == report.table.trivial_index:
        tags.append("trivial")
    if i == report.reciprocity_index and i != report.table.trivial_index:
        tags.append("reciprocity")
    suffix = f", {'/'.join(tags)}" if tags else ""
    return f"chi_{i} (degree {report.table.degrees[i]}{suffix})"


def render_text(report: AnalysisReport) -> str:
    group = report.group
    data = report.data
    lines = []
    lines.append(f"problem: {report.name}" if report.name else "problem:")
    lines.append(
        f"group: order {group.order}, exponent {group.exponent}, "
        f"{group.class_count} conjugacy classes, lattice rank {group.rank}")
    lines.append(f"period: {report.period}")
    lines.append(
        f"character table: {report.table.source}, "
        f"degrees {list(report.table.degrees)}")
    lines.append("")
    lines.append("classes (representative element, size, rank, divisors, "
                 "fixed points):")
    for c in range(group.class_count):
        divs = data.reduced_divisors(c)
        div_text = "*".join(f"gcd({e},q)" for e in divs) or "1"
        power = group.rank - data.ranks[c]
        if power:
            div_text = (f"{div_text}*q^{power}" if divs else f"q^{power}")
        lines.append(
            f"  class {c}: rep {group.class_representatives[c]}, "
            f"size {group.class_sizes[c]}, rank {data.ranks[c]}, "
            f"divisors {list(divs) or '[]'}, fixed {div_text}")
    lines.append("")
    lines.append(f"multiplicities, constituents by gcd({report.period}, q):")
    eqp = report.equivariant
    for i in range(report.table.size):
        lines.append(f"  m[{i}] for {_row_label(report, i)}, "
                     f"minimal period {report.minimal_periods[i]}:")
        qp = eqp.multiplicities[i]
        for d in divisors_of(report.period):
            lines.append(f"    gcd = {d}: {format_constituent(qp.constituent(d))}")
    lines.append("")
    delta = "trivial" if report.reciprocity_index == report.table.trivial_index \
        else f"row {report.reciprocity_index}"
    lines.append(f"reciprocity character: {delta}, "
                 f"values {list(report.reciprocity_values)}")
    lines.append(f"orbit-count rows (degree-1 characters): "
                 f"{list(report.linear_indices)}")
    lines.append("")
    lines.append("verdicts:")
    for v in report.verdicts:
        lines.append(f"  {v}")
    lines.append(f"overall: {'PASS' if report.all_passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def render_json(report: AnalysisReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def render_latex(report: AnalysisReport) -> str:
    group = report.group
    lines = []
    lines.append(f"% problem: {report.name}")
    lines.append(f"% group order {group.order}, lattice rank {group.rank}, "
                 f"period {report.period}")
    eqp = report.equivariant
    for i in range(report.table.size):
        lines.append(r"\begin{align*}")
        lines.append(rf"m(\chi_{{{i}}};\,q) &= \begin{{cases}}")
        divisors = divisors_of(report.period)
        for pos, d in enumerate(divisors):
            body = format_constituent(eqp.multiplicities[i].constituent(d),
                                      latex=True)
            last = pos == len(divisors) - 1
            tail = "," if last else (";" + r"\\")
            lines.append(
                rf"\, {body} & \gcd\{{{report.period},\,q\}} = {d}{tail}")
        lines.append(r"\end{cases}")
        lines.append(r"\end{align*}")
    return "\n".join(lines) + "\n"


_RENDERERS = {"text": render_text, "json": render_json, "latex": render_latex}


def render(report: AnalysisReport, output_format: str) -> str:
    return _RENDERERS[output_format](report)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _describe_error(exc: EquicharError) -> str:
    for klass, origin in _PROVENANCE:
        if isinstance(exc, klass):
            return f"error [{origin}]: {exc}"
    return f"error: {exc}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equichar",
        description="exact quasi-polynomial analysis of finite group "
                    "actions on (Z/q)^l")
    sub = parser.add_subparsers(dest="command", required=True)
    pa = sub.add_parser("analyze", help="run the full pipeline on a problem")
    source = pa.add_mutually_exclusive_group(required=True)
    source.add_argument("--builtin", metavar="NAME",
                        help="use a builtin problem (see the builtins command)")
    source.add_argument("--input", metavar="PATH",
                        help="load a problem description from a JSON file")
    pa.add_argument("--qmax", type=int, default=None, metavar="N",
                    help="verify for q in 1..N (default max(24, 4*period))")
    pa.add_argument("--format", choices=FORMATS, default=None,
                    help="output format (default text)")
    pa.add_argument("--no-verify", action="store_true",
                    help="skip the brute-force enumeration checks")
    pa.add_argument("--max-order", type=int, default=None, metavar="N",
                    help="abort if the generated group exceeds N elements")
    sub.add_parser("builtins", help="list the builtin problems")
    return parser


def _cmd_builtins() -> int:
    for name in sorted(BUILTINS):
        entry = BUILTINS[name]
        print(f"{name}: rank {entry['rank']}, {entry['description']}")
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    try:
        spec = builtin(args.builtin) if args.builtin else parse_input(args.input)
        opts = spec.options
        if args.qmax is not None:
            if args.qmax < 1:
                raise ValidationError("--qmax must be a positive integer")
            opts = replace(opts, q_max=args.qmax)
        if args.max_order is not None:
            if args.max_order < 1:
                raise ValidationError("--max-order must be a positive integer")
            opts = replace(opts, max_order=args.max_order)
        if args.no_verify:
            opts = replace(opts, verify=False)
        if args.format is not None:
            opts = replace(opts, output_format=args.format)
        spec = replace(spec, options=opts)
        report = run_analyze(spec)
    except EquicharError as exc:
        print(_describe_error(exc), file=sys.stderr)
        return 2
    sys.stdout.write(render(report, spec.options.output_format))
    return 0 if report.all_passed else 1


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "builtins":
        return _cmd_builtins()
    return _cmd_analyze(args)


if __name__ == "__main__":
    sys.exit(main())
