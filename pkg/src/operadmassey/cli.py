"""Operad file format and the ``operadmassey`` command line.

Files are JSON documents::

    {"field": "q" | "fp:P",
     "colors": ["c", "o"],
     "profiles": ["c,o;o", ...],
     "cells": [{"id": "eta1", "profile": "c,o;o", "degree": 1}, ...],
     "differential": {"eta1": {"s2": "1", "s1": "-1"}, ...},
     "actions": [{"cell": "s1", "k": 1, "image": {"t2": "1"}}, ...],
     "compositions": [{"x": "a", "i": 1, "y": "f", "value": {"s1": "1"}}, ...],
     "elements": {"l": {"profile": "c,c;c", "degree": 1, "terms": {"m1": "1", "m2": "1"}}}}

Scalars are decimal strings ``"n"`` or ``"n/d"``.  The bidegree of every
value is implied by its entry, so a value naming a cell from elsewhere is
reported as a "profile mismatch".

Exit statuses: 0 success, 1 negative verdict, 2 input error,
3 incomplete fragment.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (FragmentAxiomError, IncompleteFragmentError, InputError, ParseError,
                     SemanticError)
from .exactla import FieldSpec
from .fixtures import SwissCheeseFragmentSpec, build_sc_fragment, build_sc_homology
from .freeop import verify_change_of_representatives
from .homology import homology
from .massey import eye_obstruction, massey_I, massey_II, nonformality_certificate, vanishes
from .operadcore import Element, FragmentBuilder, OperadFragment, Profile, validate

_SCALAR = re.compile(r"^-?\d+(/-?\d+)?$")


# ---------------------------------------------------------------- serialize

def _coeffs(x: Element) -> dict:
    return {k: str(v) for k, v in x.terms}


def fragment_to_dict(O: OperadFragment) -> dict:
    return {
        "field": str(O.field),
        "colors": list(O.colors),
        "profiles": [str(p) for p in O.profiles],
        "cells": [{"id": c.id, "profile": str(c.profile), "degree": c.degree} for c in O.cells.values()],
        "differential": {k: _coeffs(v) for k, v in O.differential.items()},
        "actions": [{"cell": c, "k": k, "image": _coeffs(v)} for (c, k), v in O.actions.items()],
        "compositions": [{"x": x, "i": i, "y": y, "value": _coeffs(v)} for (x, i, y), v in O.compositions.items()],
        "elements": {n: {"profile": str(e.profile), "degree": e.degree, "terms": _coeffs(e)}
                     for n, e in O.elements.items()},
    }


def serialize_fragment(O: OperadFragment) -> str:
    return json.dumps(fragment_to_dict(O), indent=1, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- parse

def _expect(cond: bool, name: str, message: str):
    if not cond:
        raise SemanticError(name, message)


def _terms(raw, where: str) -> dict:
    _expect(isinstance(raw, dict), "malformed entry", f"{where}: expected an object of cell -> scalar")
    out = {}
    for k, v in raw.items():
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise SemanticError("bad scalar", f"{where}: coefficient of {k!r} must be a string")
        if isinstance(v, str) and not _SCALAR.match(v.strip()):
            raise SemanticError("bad scalar", f"{where}: {v!r} is not 'n' or 'n/d'")
        out[k] = v.strip() if isinstance(v, str) else v
    return out


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise SemanticError("duplicate key", repr(k))
        out[k] = v
    return out


def parse_operad_file(text: str) -> OperadFragment:
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as e:
        raise ParseError(f"syntax error: {e.msg}", e.lineno, e.colno) from None
    _expect(isinstance(doc, dict), "malformed document", "top level must be an object")
    known = {"field", "colors", "profiles", "cells", "differential", "actions", "compositions", "elements"}
    extra = set(doc) - known
    _expect(not extra, "unknown key", ", ".join(sorted(extra)))
    _expect("field" in doc and isinstance(doc["field"], str), "missing field", "'field' must be 'q' or 'fp:P'")
    try:
        F = FieldSpec.parse(doc["field"])
    except InputError as e:
        raise SemanticError("bad field", str(e)) from None
    colors = doc.get("colors", [])
    _expect(isinstance(colors, list) and all(isinstance(c, str) and c for c in colors),
            "malformed colors", "expected a list of names")
    profiles = doc.get("profiles", [])
    _expect(isinstance(profiles, list), "malformed profiles", "expected a list")
    _expect(bool(colors) or not profiles, "empty color set", "profiles are declared but there are no colors")
    b = FragmentBuilder(F, colors)
    for p in profiles:
        _expect(isinstance(p, str), "malformed profile", repr(p))
        try:
            b.add_profile(Profile.parse(p))
        except SemanticError:
            raise
        except InputError as e:
            raise SemanticError("malformed profile", str(e)) from None
    for c in doc.get("cells", []):
        _expect(isinstance(c, dict) and set(c) == {"id", "profile", "degree"}, "malformed cell", repr(c))
        _expect(isinstance(c["id"], str) and isinstance(c["degree"], int) and not isinstance(c["degree"], bool),
                "malformed cell", repr(c))
        try:
            prof = Profile.parse(c["profile"])
        except InputError as e:
            raise SemanticError("malformed profile", str(e)) from None
        _expect(prof in b.profiles, "undeclared profile", f"cell {c['id']!r} uses {prof}")
        b.add_cell(c["id"], prof, c["degree"])
    diff = doc.get("differential", {})
    _expect(isinstance(diff, dict), "malformed differential", "expected an object")
    for cid, terms in diff.items():
        b.set_boundary(cid, _terms(terms, f"differential of {cid!r}"))
    for a in doc.get("actions", []):
        _expect(isinstance(a, dict) and set(a) == {"cell", "k", "image"}, "malformed action", repr(a))
        b.set_action(a["cell"], a["k"], _terms(a["image"], f"action on {a['cell']!r}"))
    for e in doc.get("compositions", []):
        _expect(isinstance(e, dict) and set(e) == {"x", "i", "y", "value"}, "malformed composition", repr(e))
        _expect(isinstance(e["i"], int), "malformed composition", repr(e))
        b.set_composite(e["x"], e["i"], e["y"], _terms(e["value"], f"composite {e['x']} o_{e['i']} {e['y']}"))
    elems = doc.get("elements", {})
    _expect(isinstance(elems, dict), "malformed elements", "expected an object")
    for name, e in elems.items():
        _expect(isinstance(e, dict) and set(e) == {"profile", "degree", "terms"}, "malformed element", name)
        try:
            prof = Profile.parse(e["profile"])
        except InputError as err:
            raise SemanticError("malformed profile", str(err)) from None
        b.add_element(name, _terms(e["terms"], f"element {name!r}"), prof, e["degree"])
    return b.build()


def load_fragment(path: str) -> OperadFragment:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise ParseError("file is not UTF-8") from None
    return parse_operad_file(text)


# ---------------------------------------------------------------- reports

@dataclass
class Report:
    text: str
    machine: dict = field(default_factory=dict)
    status: int = 0
    machine_mode: bool = False


def _elem(x: Element) -> dict:
    return {"profile": str(x.profile), "degree": x.degree, "terms": _coeffs(x)}


def _resolve(O: OperadFragment, name: str) -> Element:
    if name in O.elements:
        return O.elements[name]
    if name in O.cells:
        return O.cell(name)
    raise InputError(f"unknown element or cell {name!r}")


def _coset_report(K, require: bool) -> Report:
    H = K.home
    v = vanishes(K)
    m = {
        "type": K.problem.kind,
        "profile": str(H.profile),
        "degree": H.degree,
        "homology_dimension": H.dimension,
        "representatives": [str(r) for r in H.representatives],
        "class": [str(c) for c in K.representative.coords],
        "indeterminacy": [[str(c) for c in row] for row in K.indeterminacy.basis],
        "cycle": str(K.cycle),
        "chains": {n: str(x) for n, x in K.chains},
        "vanishes": v,
    }
    lines = [f"{m['type']} product in H_{m['degree']}({m['profile']}) "
             f"(dimension {m['homology_dimension']}, basis {m['representatives']})",
             f"cycle: {m['cycle']}"]
    lines += [f"bounding chain {n} = {x}" for n, x in m["chains"].items()]
    lines += [f"class coordinates: {m['class']}",
              f"indeterminacy basis: {m['indeterminacy']}",
              f"vanishes: {'yes' if v else 'no'}"]
    return Report("\n".join(lines), m, 1 if (require and v) else 0)


def cmd_validate(args) -> Report:
    r = validate(load_fragment(args.file))
    m = {"passed": r.passed, "checked": r.checked, "skipped": r.skipped,
         "violations": [{"axiom": v.axiom, "cells": [str(c) for c in v.cells],
                         "discrepancy": None if v.discrepancy is None else str(v.discrepancy),
                         "detail": v.detail} for v in r.violations]}
    return Report(str(r), m, 0 if r.passed else 1)


def cmd_homology(args) -> Report:
    O = load_fragment(args.file)
    H = homology(O, Profile.parse(args.profile), args.degree)
    m = {"profile": str(H.profile), "degree": H.degree, "dimension": H.dimension,
         "representatives": [_elem(r) for r in H.representatives]}
    lines = [f"H_{H.degree}({H.profile}) has dimension {H.dimension}"]
    lines += [f"  [{r}]" for r in H.representatives]
    return Report("\n".join(lines), m)


def cmd_massey(args) -> Report:
    O = load_fragment(args.file)
    a, b, c = (_resolve(O, n) for n in (args.a, args.b, args.c))
    fn = massey_I if args.type == "I" else massey_II
    return _coset_report(fn(O, a, b, c, args.i, args.j), args.require_nonvanishing)


def cmd_eye(args) -> Report:
    O = load_fragment(args.file)
    K = eye_obstruction(O, _resolve(O, args.a), _resolve(O, args.f), args.d)
    return _coset_report(K, args.require_nonvanishing)


def cmd_prove(args) -> Report:
    C = nonformality_certificate(load_fragment(args.file))
    m = {"verdict": C.verdict, "tried": C.tried, "skipped": C.skipped, "narrative": list(C.narrative)}
    if C.coset is not None:
        m["witness"] = _coset_report(C.coset, False).machine
    return Report(str(C), m, 0 if C.non_formal else 1)


def cmd_verify(args) -> Report:
    F = FieldSpec.parse(args.field)
    r = verify_change_of_representatives(args.d, args.relation, F)
    m = {"d": args.d, "relation": str(args.relation), "passed": r.passed,
         "residual": "0" if r.passed else str(r.violations[0].discrepancy)}
    text = f"d = {args.d}, relation {args.relation}: " + \
           ("passed, residual 0" if r.passed else f"FAILED, residual {m['residual']}")
    return Report(text, m, 0 if r.passed else 1)


def cmd_fixture(args) -> Report:
    F = FieldSpec.parse(args.field)
    if args.which == "sc":
        O = build_sc_fragment(SwissCheeseFragmentSpec(args.d, F))
    else:
        O = build_sc_homology(args.d, F)
    text = serialize_fragment(O)
    m = {"fixture": args.which, "d": args.d, "field": str(F), "cells": len(O.cells),
         "compositions": len(O.compositions)}
    if args.out in (None, "-"):
        return Report(text.rstrip("\n"), fragment_to_dict(O))
    try:
        Path(args.out).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot write {args.out}: {e.strerror}") from None
    m["out"] = args.out
    return Report(f"wrote {args.which} fixture (d = {args.d}, field {F}, {m['cells']} cells, "
                  f"{m['compositions']} compositions) to {args.out}", m)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="operadmassey", description="Massey products in colored dg operad fragments")
    p.add_argument("--machine", action="store_true", help="structured JSON output")
    flag = argparse.ArgumentParser(add_help=False)
    flag.add_argument("--machine", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[flag], help="check the operad axioms")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("homology", parents=[flag], help="homology of one bidegree")
    s.add_argument("file")
    s.add_argument("--profile", required=True)
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(run=cmd_homology)

    s = sub.add_parser("massey", parents=[flag], help="Massey product of type I or II")
    s.add_argument("file")
    s.add_argument("--type", choices=["I", "II"], required=True)
    for n in ("a", "b", "c"):
        s.add_argument(f"--{n}", required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--require-nonvanishing", action="store_true", help="exit 1 if the product vanishes")
    s.set_defaults(run=cmd_massey)

    s = sub.add_parser("eye", parents=[flag], help="eye obstruction")
    s.add_argument("file")
    s.add_argument("--a", required=True)
    s.add_argument("--f", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--require-nonvanishing", action="store_true", help="exit 1 if the coset contains 0")
    s.set_defaults(run=cmd_eye)

    s = sub.add_parser("prove-nonformality", parents=[flag], help="search for a non-vanishing product")
    s.add_argument("file")
    s.set_defaults(run=cmd_prove)

    s = sub.add_parser("verify-change", parents=[flag], help="check the change-of-representative identities")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--relation", choices=["1", "2", "3'", "4'"], required=True)
    s.add_argument("--field", default="q")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("fixture", parents=[flag], help="write a built-in fixture")
    s.add_argument("which", choices=["sc", "sc-homology"])
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--field", default="q")
    s.add_argument("--out")
    s.set_defaults(run=cmd_fixture)
    return p


def run(argv: list | None = None) -> Report:
    args = build_parser().parse_args(argv)
    try:
        rep = args.run(args)
    except IncompleteFragmentError as e:
        rep = Report(f"error: incomplete fragment: {e}", {"error": str(e), "kind": "incomplete-fragment"}, 3)
    except (InputError, FragmentAxiomError) as e:
        rep = Report(f"error: {e}", {"error": str(e), "kind": type(e).__name__}, 2)
    rep.machine_mode = args.machine
    return rep


def main(argv: list | None = None) -> int:
    rep = run(argv)
    stream = sys.stderr if rep.status in (2, 3) else sys.stdout
    if rep.machine_mode:
        print(json.dumps(rep.machine, sort_keys=True, ensure_ascii=False), file=stream)
    else:
        print(rep.text, file=stream)
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
