"""Command-line interface.

Every command prints one JSON document with a ``verdict`` field. Exit
status is 0 for a positive verdict, 1 for a well-formed negative one and
2 for bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import constructions, equations, fostruct, pregroup, ugroup
from .equivalence import transfer
from .folang import EvaluationError, ParseError, characteristic_sentence, evaluate, is_sentence, parse, to_text
from .folang.charform import witness_assignment
from .fostruct import StructureError

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _subset(text: str) -> list[str]:
    return [] if not text.strip() else [x.strip() for x in text.split(",")]


def _load_structure(path: str) -> fostruct.FiniteStructure:
    structure, _ = fostruct.load(path)
    findings = fostruct.validate_structure(structure)
    if findings:
        raise InputError(f"{path}: " + "; ".join(map(str, findings)))
    return structure


def _load_pregroup(path: str) -> pregroup.Pregroup:
    return pregroup.load(path)


def _word(p: pregroup.Pregroup, text: str) -> tuple[str, ...]:
    w = ugroup.parse_word(text)
    unknown = [x for x in w if x not in p.index]
    if unknown:
        raise InputError(f"unknown letters {unknown}")
    return w


# -- commands -----------------------------------------------------------------


def cmd_check(args):
    structure, _ = fostruct.load(args.pregroup)
    p = pregroup.as_pregroup(structure)
    report = pregroup.check_axioms(p, cross_check=not args.no_cross_check)
    doc = report.to_dict()
    if isinstance(p, pregroup.SPregroup):
        problems = pregroup.check_s_axioms(p)
        doc["s_axioms"] = problems
        doc["verdict"] = doc["verdict"] and not problems
    return doc


def cmd_sat(args):
    m = _load_structure(args.structure)
    f = parse(args.formula, m.signature)
    if not is_sentence(f):
        raise InputError("formula has free variables")
    return {"verdict": evaluate(m, f), "formula": to_text(f)}


def cmd_reduce(args):
    p = _load_pregroup(args.pregroup)
    w = _word(p, args.word)
    r = ugroup.reduce(p, w)
    doc = {"verdict": True, "input": ugroup.format_word(w), "reduced": ugroup.format_word(r)}
    if len(r) <= ugroup.MAX_CANONICAL_LENGTH:
        doc["canonical"] = str(ugroup.canonical(p, r))
    return doc


def cmd_eqw(args):
    p = _load_pregroup(args.pregroup)
    u, v = _word(p, args.u), _word(p, args.v)
    return {
        "verdict": ugroup.equivalent(p, u, v),
        "u": ugroup.format_word(ugroup.reduce(p, u)),
        "v": ugroup.format_word(ugroup.reduce(p, v)),
    }


def cmd_mul(args):
    p = _load_pregroup(args.pregroup)
    u = ugroup.canonical(p, _word(p, args.u))
    v = ugroup.canonical(p, _word(p, args.v))
    return {"verdict": True, "product": str(u * v)}


def cmd_inv(args):
    p = _load_pregroup(args.pregroup)
    u = ugroup.canonical(p, _word(p, args.u))
    return {"verdict": True, "inverse": str(u.inverse())}


def cmd_construct(args):
    with open(args.spec, encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.spec}: not valid JSON ({exc})") from None
    built = constructions.build_from_spec(args.kind, spec)
    report = pregroup.check_axioms(built.pregroup)
    fostruct.save(built.pregroup.structure, args.output, kind="pregroup")
    doc = {"verdict": report.ok, "output": args.output, "size": len(built.pregroup.carrier)}
    if built.sidecar:
        root, _ = os.path.splitext(args.output)
        sidecar = root + ".map.json"
        with open(sidecar, "w", encoding="utf-8") as fh:
            fh.write(fostruct.dumps(built.sidecar))
        doc["map"] = sidecar
    if built.notes:
        doc["notes"] = built.notes
    return doc


def cmd_iso(args):
    m, n = _load_structure(args.source), _load_structure(args.target)
    s = _subset(args.subset)
    phi = fostruct.find_isomorphism(s, m, n)
    return {"verdict": phi is not None, "phi": phi}


def cmd_charform(args):
    m = _load_structure(args.structure)
    s = _subset(args.subset)
    f = characteristic_sentence(m, s, form=args.form)
    return {"verdict": True, "sentence": to_text(f), "witness": witness_assignment(m, s)}


def _system(m, args) -> equations.EquationSystem:
    variables = _subset(args.vars) if args.vars else None
    return equations.EquationSystem.parse(args.equation or [], m.signature, variables)


def cmd_variety(args):
    m = _load_structure(args.structure)
    sys_ = _system(m, args)
    sols = m_sorted(m, equations.variety(m, sys_))
    return {"verdict": bool(sols), "variables": list(sys_.variables), "solutions": sols}


def m_sorted(m, tuples) -> list[list[str]]:
    return [list(t) for t in sorted(tuples, key=lambda t: [m.order[x] for x in t])]


def cmd_core(args):
    m = _load_structure(args.structure)
    sys_ = _system(m, args)
    doc = equations.core_report(m, sys_)
    doc["verdict"] = all(d["holds"] for d in doc["discarded"])
    doc["variables"] = list(sys_.variables)
    return doc


def cmd_transfer(args):
    p1, p2 = _load_pregroup(args.first), _load_pregroup(args.second)
    words = [_word(p1, w) for w in args.words.split(";")]
    return transfer(p1, p2, words).to_dict()


# -- parsing and rendering -------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pregroups", description="Finite pregroups and their universal groups.")
    ap.add_argument("--pretty", action="store_true", help="indented, human-readable output")
    ap.add_argument("-o", "--output", help="also write the report to this file (construct: the structure file)")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check the pregroup axioms")
    c.add_argument("pregroup")
    c.add_argument("--no-cross-check", action="store_true", help="skip the model-checking cross check")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("sat", help="evaluate a sentence in a structure")
    c.add_argument("structure")
    c.add_argument("-f", "--formula", required=True)
    c.set_defaults(func=cmd_sat)

    c = sub.add_parser("reduce", help="reduce a word")
    c.add_argument("pregroup")
    c.add_argument("-w", "--word", required=True)
    c.set_defaults(func=cmd_reduce)

    for name, helptext, func in (
        ("eqw", "decide whether two words are equal in U(P)", cmd_eqw),
        ("mul", "multiply two elements of U(P)", cmd_mul),
    ):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("pregroup")
        c.add_argument("-u", required=True)
        c.add_argument("-v", required=True)
        c.set_defaults(func=func)

    c = sub.add_parser("inv", help="invert an element of U(P)")
    c.add_argument("pregroup")
    c.add_argument("-u", required=True)
    c.set_defaults(func=cmd_inv)

    c = sub.add_parser("construct", help="build a pregroup from finite groups")
    c.add_argument("kind", choices=["group", "free", "amalgam", "hnn"])
    c.add_argument("spec")
    c.add_argument("-o", "--output", dest="output", required=True)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("iso", help="find an isomorphic copy of a subset")
    c.add_argument("source")
    c.add_argument("target")
    c.add_argument("--subset", required=True)
    c.set_defaults(func=cmd_iso)

    c = sub.add_parser("charform", help="existential sentence describing a subset")
    c.add_argument("structure")
    c.add_argument("--subset", required=True)
    c.add_argument("--form", choices=["finite", "delta"], default="finite")
    c.set_defaults(func=cmd_charform)

    for name, helptext, func in (
        ("variety", "solve a system of equations", cmd_variety),
        ("core", "smallest subsystem with the same solutions", cmd_core),
    ):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("structure")
        c.add_argument("-e", "--equation", action="append")
        c.add_argument("--vars", help="comma-separated variable order")
        c.set_defaults(func=func)

    c = sub.add_parser("transfer", help="run the transfer construction on a word list")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--words", required=True, help='words separated by ";", e.g. "a,b;b,a"')
    c.set_defaults(func=cmd_transfer)
    return ap


def _pretty(doc, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict) and value:
            lines.append(f"{pad}{key}:")
            lines.extend(_pretty(value, indent + 1))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{pad}{key}:")
            for i, v in enumerate(value):
                lines.append(f"{pad}  [{i}]")
                lines.extend(_pretty(v, indent + 2))
        else:
            lines.append(f"{pad}{key}: {json.dumps(value) if not isinstance(value, str) else value}")
    return lines


def render(doc: dict, pretty: bool) -> str:
    if pretty:
        return "\n".join(_pretty(doc)) + "\n"
    return json.dumps(doc, sort_keys=True) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        doc = args.func(args)
    except (InputError, StructureError, ParseError, EvaluationError, equations.EquationError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(doc, args.pretty)
    sys.stdout.write(text)
    if args.output and args.command != "construct":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(render(doc, False))
    return EXIT_TRUE if doc.get("verdict") else EXIT_FALSE


if __name__ == "__main__":
    raise SystemExit(main())
