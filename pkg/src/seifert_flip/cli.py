"""
Command line front end.

    seifert-flip classify     --input inv.json [--splitting JSON] [--lens P Q]
    seifert-flip enumerate    --input inv.json
    seifert-flip present      --input inv.json
    seifert-flip homology     --input inv.json
    seifert-flip nielsen-check --input doc.json --group cyclic:5 [--node-cap N]

The input is either a bare invariants object
``{"genus": 0, "b": -1, "fibers": [[3, 1], [5, 1], [7, 1]]}`` or an envelope
``{"invariants": {...}, "splitting": {...}, "assignment": {"x1": 2}}``.
Reports go to stdout as JSON (sorted keys) or as text.  Exit codes: 0 on
success, 2 on invalid input, 3 when the orbit search hits its node cap.
"""
from __future__ import annotations

import argparse
import json
import sys

import jsonschema

from . import classifier, nielsen, presentations, seifert, splittings
from .errors import SearchExhausted, SeifertFlipError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_EXHAUSTED = 3

_INT = {"type": "integer"}

INVARIANTS_SCHEMA = {
    "type": "object",
    "required": ["genus", "b"],
    "properties": {
        "genus": {"type": "integer", "minimum": 0},
        "b": _INT,
        "fibers": {"type": "array",
                   "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}},
    },
    "additionalProperties": False,
}

SPLITTING_SCHEMA = {
    "$defs": {
        "splitting": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["vertical", "horizontal", "stabilized"]},
                "h1_fibers": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "case": {"enum": [c.value for c in splittings.Case]},
                "base": {"$ref": "#/$defs/splitting"},
                "extra_genus": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
            "allOf": [{"if": {"properties": {"kind": {"const": "stabilized"}}},
                       "then": {"required": ["base"]}}],
        }
    },
    "$ref": "#/$defs/splitting",
}

ENVELOPE_SCHEMA = {
    "type": "object",
    "required": ["invariants"],
    "properties": {
        "invariants": INVARIANTS_SCHEMA,
        "splitting": {"type": "object"},  # checked against SPLITTING_SCHEMA later
        "assignment": {"type": "object", "additionalProperties": _INT},
    },
    "additionalProperties": False,
}

GROUP_SCHEMA = {
    "type": "object",
    "required": ["order", "mul"],
    "properties": {
        "order": {"type": "integer", "minimum": 1},
        "mul": {"type": "array", "items": {"type": "array", "items": _INT}},
        "name": {"type": "string"},
    },
}


class CliError(Exception):
    def __init__(self, kind, message, path=None, code=EXIT_INVALID):
        super().__init__(message)
        self.kind = kind
        self.path = path
        self.code = code

    def to_json(self):
        err = {"type": self.kind, "message": str(self)}
        if self.path is not None:
            err["path"] = self.path
        return {"error": err}


def _json_path(prefix, parts):
    path = prefix
    for p in parts:
        path += f"[{p}]" if isinstance(p, int) else f".{p}"
    return path


def check_schema(doc, schema, prefix="$"):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise CliError("SchemaError", exc.message, _json_path(prefix, exc.absolute_path)) from None


def parse_json(text, source):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("ParseError", f"{source}: {exc}") from None


def _read_input(args):
    if args.json is not None:
        return parse_json(args.json, "--json")
    if args.input is None:
        return None
    if args.input == "-":
        return parse_json(sys.stdin.read(), "stdin")
    try:
        with open(args.input) as fh:
            return parse_json(fh.read(), args.input)
    except OSError as exc:
        raise CliError("IOError", str(exc)) from None


def load_document(args):
    """Return (invariants, splitting JSON or None, assignment JSON or None)."""
    doc = _read_input(args)
    if doc is None:
        lens = getattr(args, "lens", None)
        if lens is None:
            raise CliError("UsageError", "no input: pass --input PATH|- or --json TEXT")
        try:
            inv = seifert.lens_space(*lens)
        except ValueError as exc:
            raise CliError("ValidationError", str(exc)) from None
        return inv, None, None
    if isinstance(doc, dict) and "invariants" in doc:
        check_schema(doc, ENVELOPE_SCHEMA)
        raw, split, assignment = doc["invariants"], doc.get("splitting"), doc.get("assignment")
    else:
        check_schema(doc, INVARIANTS_SCHEMA)
        raw, split, assignment = doc, None, None
    inv = seifert.SeifertInvariants.from_json(raw)
    seifert.validate(inv)
    return inv, split, assignment


def _splitting(args, inv, from_doc):
    text = getattr(args, "splitting", None)
    obj = parse_json(text, "--splitting") if text is not None else from_doc
    if obj is None:
        return None
    check_schema(obj, SPLITTING_SCHEMA, "$.splitting")
    return splittings.SplittingDescriptor.from_json(obj, inv)


def _order_json(order):
    return "infinite" if order == seifert.INFINITE else order


def _vertical_json(s, inv):
    out = splittings.SplittingDescriptor.of(s).to_json()
    out["genus"] = splittings.genus_of(s, inv)
    return out


def cmd_classify(args):
    inv, split_doc, _ = load_document(args)
    d = _splitting(args, inv, split_doc)
    if d is not None:
        return classifier.classify_flippability(inv, d, args.lens).to_json()
    rows = []
    for s in splittings.enumerate_vertical(inv):
        d = splittings.SplittingDescriptor.of(s)
        verdict = classifier.classify_flippability(inv, d, args.lens)
        rows.append({"splitting": _vertical_json(s, inv), "verdict": verdict.to_json()})
    return {"invariants": inv.to_json(), "results": rows}


def cmd_enumerate(args):
    inv, _, _ = load_document(args)
    return {"splittings": [_vertical_json(s, inv) for s in splittings.enumerate_vertical(inv)]}


def cmd_present(args):
    inv, _, _ = load_document(args)
    horizontal = None
    if inv.l == 1:
        horizontal = {"order": _order_json(presentations.quotient_by_horizontal(inv))}
    return {"fundamental_group": presentations.fundamental_group(inv).to_json(),
            "quotient_by_h": presentations.quotient_by_h(inv).to_json(),
            "quotient_by_horizontal": horizontal}


def cmd_homology(args):
    inv, _, _ = load_document(args)
    return {"order": _order_json(seifert.first_homology_order(inv))}


def parse_group(value_text):
    kind, _, value = value_text.partition(":")
    if kind == "cyclic":
        try:
            m = int(value)
        except ValueError:
            raise CliError("UsageError", f"bad cyclic group order {value!r}") from None
        if m < 1:
            raise CliError("UsageError", f"cyclic group order must be positive, got {m}")
        return nielsen.cyclic_group(m)
    if kind == "table":
        try:
            with open(value) as fh:
                doc = parse_json(fh.read(), value)
        except OSError as exc:
            raise CliError("IOError", str(exc)) from None
        check_schema(doc, GROUP_SCHEMA, "$.group")
        return nielsen.group_from_json(doc)
    raise CliError("UsageError", f"--group expects cyclic:M or table:PATH, got {value_text!r}")


def _parse_exponents(text):
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise CliError("UsageError", f"--exponents expects comma-separated integers, got {text!r}") from None


def cmd_nielsen_check(args):
    inv, split_doc, assignment_doc = load_document(args)
    d = _splitting(args, inv, split_doc)
    if d is None:
        candidates = splittings.enumerate_vertical(inv)
        if len(candidates) != 1:
            raise CliError("UsageError", "nielsen-check needs a splitting for this manifold")
        d = splittings.SplittingDescriptor.of(candidates[0])
    if args.group is not None:
        G = parse_group(args.group)
    elif args.lens is not None:
        G = nielsen.cyclic_group(args.lens[0])
    else:
        raise CliError("UsageError", "nielsen-check needs --group cyclic:M or table:PATH")
    if assignment_doc is None and args.lens is not None:
        assignment_doc = {"x1": args.lens[1] % G.order}
    if assignment_doc is None:
        raise CliError("UsageError", "nielsen-check needs an 'assignment' in the input")
    assignment = {}
    for name, value in assignment_doc.items():
        try:
            g = presentations.Generator.parse(name)
        except ValueError as exc:
            raise CliError("SchemaError", str(exc), f"$.assignment.{name}") from None
        if not 0 <= value < G.order:
            raise CliError("SchemaError", f"element id {value} outside 0..{G.order - 1}",
                           f"$.assignment.{name}")
        assignment[g] = value
    exponents = _parse_exponents(args.exponents) if args.exponents else None
    report = classifier.oracle_consistency_check(inv, d, G, assignment, args.lens, exponents,
                                                 args.omit, args.node_cap)
    if report.status is classifier.OracleStatus.EXHAUSTED:
        raise _Exhausted(report.to_json())
    return report.to_json()


class _Exhausted(Exception):
    def __init__(self, report):
        self.report = report


def _is_word(obj):
    return (isinstance(obj, list) and
            all(isinstance(s, list) and len(s) == 2 and isinstance(s[0], str)
                and isinstance(s[1], int) for s in obj))


def _word_text(obj):
    if not obj:
        return "1"
    return " ".join(n if e == 1 else f"{n}^{e}" for n, e in obj)


def render_text(obj, indent=0):
    """Indented rendering of a JSON report; relator lists print as words."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value and not _is_word(value):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(value)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and item and not _is_word(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
    else:
        lines.append(pad + _scalar_text(obj))
    return "\n".join(lines)


def _scalar_text(value):
    if _is_word(value) and value:
        return _word_text(value)
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, dict)):
        return json.dumps(value)
    return str(value)


def emit(report, fmt, stream):
    if fmt == "text":
        stream.write(render_text(report) + "\n")
    else:
        stream.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


COMMANDS = {
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
    "present": cmd_present,
    "homology": cmd_homology,
    "nielsen-check": cmd_nielsen_check,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("UsageError", message)


def build_parser():
    parser = _Parser(
        prog="seifert-flip",
        description="Flippability of Heegaard splittings of Seifert fibered spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", metavar="PATH|-", help="JSON input file, or - for stdin")
        p.add_argument("--json", metavar="TEXT", help="inline JSON input")
        p.add_argument("--format", choices=("json", "text"), default="json")
        return p

    p = add("classify", "flippability verdicts")
    p.add_argument("--splitting", metavar="JSON", help="classify only this splitting")
    p.add_argument("--lens", nargs=2, type=int, metavar=("P", "Q"), help="lens space override")
    add("enumerate", "list vertical splittings")
    add("present", "presentation of pi_1 and its quotients")
    add("homology", "order of the first homology")
    p = add("nielsen-check", "Nielsen-equivalence cross-check in a finite quotient")
    p.add_argument("--splitting", metavar="JSON")
    p.add_argument("--lens", nargs=2, type=int, metavar=("P", "Q"))
    p.add_argument("--group", metavar="cyclic:M|table:PATH")
    p.add_argument("--node-cap", type=int, default=nielsen.DEFAULT_NODE_CAP)
    p.add_argument("--exponents", metavar="NU1,...,NUL")
    p.add_argument("--omit", type=int, help="fiber index left out of both systems")
    return parser


def run(argv, stdout=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except CliError as exc:
        emit(exc.to_json(), "json", stdout)
        return exc.code
    try:
        report = COMMANDS[args.command](args)
    except CliError as exc:
        emit(exc.to_json(), args.format, stdout)
        return exc.code
    except _Exhausted as exc:
        emit(exc.report, args.format, stdout)
        return EXIT_EXHAUSTED
    except SearchExhausted as exc:
        emit({"error": {"type": "SearchExhausted", "message": str(exc)}}, args.format, stdout)
        return EXIT_EXHAUSTED
    except (SeifertFlipError, ValueError) as exc:
        emit({"error": {"type": type(exc).__name__, "message": str(exc)}}, args.format, stdout)
        return EXIT_INVALID
    emit(report, args.format, stdout)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
