"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical defect is found
(the report locates it), 2 for unreadable or ill-formed input.  Reports are
deterministic: no timestamps, sorted keys, and randomized commands draw from
``--seed`` only.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from pathlib import Path

from . import docio
from .bar import Report
from .ainf import (check_morphism, check_stasheff, hochschild_deformation_check,
                   validate_units)
from .field import Field, FieldError
from .fixtures import FIXTURES
from .graded import StructureError
from .modules import AInfModule, ModuleMorphism, check_module, check_module_morphism
from .quiver import (PRESENTATIONS, PathAlgebra, QuiverError, build_algebra,
                     ext_ainf_category, presentation_from_json, rep_enumerate, simple)
from .random_structures import random_associative_algebra, random_cochain
from .structure import AInfCategory, AInfMorphism
from .transfer import CertificationError, build_contraction, transfer_minimal_model
from .twisted import (TwistError, filt_enumerate, h0_category, h0_indecomposable,
                      h0_isomorphic, random_twisted_objects, shift_category, tw_category,
                      validate_mc)

REPORT_SCHEMA = "ainfty-report/1"
DEFECT_LIMIT = 20


class InputError(ValueError):
    pass


# ---- inputs ----------------------------------------------------------------------

def parse_field(s: str | None, default: str = "Q") -> Field:
    try:
        return Field.from_descriptor(s or default)
    except (FieldError, ValueError) as exc:
        raise InputError(f"bad --field {s!r}: {exc}") from exc


def parse_dims(s):
    """``1`` or ``x=1,y=2``."""
    if s is None:
        return 1
    s = str(s)
    if "=" not in s:
        try:
            return int(s)
        except ValueError as exc:
            raise InputError(f"bad --dims {s!r}") from exc
    out = {}
    for part in s.split(","):
        k, _, v = part.partition("=")
        try:
            out[k.strip()] = int(v)
        except ValueError as exc:
            raise InputError(f"bad --dims entry {part!r}") from exc
    return out


_DROP = re.compile(r"^m(\d+)(?:\((.*)\))?$")


def drop_ops(A: AInfCategory, entries) -> AInfCategory:
    """Remove ``mN`` (all entries of arity N) or ``mN(x,y,...)`` (one word)."""
    if not entries:
        return A
    ops = dict(A.ops)
    for source in entries:
        m = _DROP.match(source.replace(" ", ""))
        if not m:
            raise InputError(f"bad --drop-op {source!r}; expected mN or mN(x,...)")
        n = int(m.group(1))
        if m.group(2) is None:
            ops = {w: lc for w, lc in ops.items() if len(w) != n}
        else:
            w = tuple(m.group(2).split(","))
            if len(w) != n or w not in ops:
                raise InputError(f"--drop-op {source!r}: no such entry")
            del ops[w]
    return A.with_ops(ops, arity_bound=A.arity_bound)


def load_structure(source: str, field_arg: str | None, default_field: str = "Q"):
    """``fixture:NAME`` or a path to a structure document."""
    if source.startswith("fixture:"):
        name = source.split(":", 1)[1]
        if name not in FIXTURES:
            raise InputError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}")
        return FIXTURES[name](parse_field(field_arg, default_field))
    obj = docio.from_doc(docio.load(source))
    if isinstance(obj, list) and not obj:
        raise InputError(f"{source} lists no twisted objects")
    if field_arg is not None:
        F = obj[0].Z.F if isinstance(obj, list) else obj.F
        if F != parse_field(field_arg):
            raise InputError(f"{source} is over {F}, not {field_arg}")
    return obj


def load_quiver(source: str, field_arg: str | None, default_field: str = "Q"):
    if source.startswith("fixture:"):
        name = source.split(":", 1)[1]
        if name not in PRESENTATIONS:
            raise InputError(f"unknown quiver {name!r}; known: {', '.join(sorted(PRESENTATIONS))}")
        return PRESENTATIONS[name](parse_field(field_arg, default_field))
    doc = docio.load(source)
    if field_arg is not None:
        doc = dict(doc, field=parse_field(field_arg).descriptor())
    try:
        return presentation_from_json(doc)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed quiver document: {exc!r}") from exc


# ---- reports -------------------------------------------------------------------------

def check_entry(rep, F: Field) -> dict:
    rows = rep.located(DEFECT_LIMIT)
    return {
        "name": rep.name,
        "ok": rep.ok,
        "max_arity": rep.max_arity,
        "n_defects": len(rep.defects),
        "defects": [{"arity": n, "word": list(w), "defect": {y: F.format(c) for y, c in d.items()}}
                    for n, w, d in rows],
        "notes": list(rep.notes),
    }


def new_report(command: str, inp: str, F: Field | None) -> dict:
    return {"schema": REPORT_SCHEMA, "command": command, "input": inp,
            "field": str(F) if F is not None else None, "checks": [], "status": "pass"}


def finish(report: dict) -> int:
    if any(not c["ok"] for c in report["checks"]):
        report["status"] = "defect"
    return 0 if report["status"] == "pass" else 1


def render_text(report: dict) -> str:
    lines = [f"{report['command']} {report['input']} [{report['field']}]: {report['status']}"]
    for c in report["checks"]:
        mark = "pass" if c["ok"] else f"FAIL ({c['n_defects']} defective words)"
        lines.append(f"  {c['name']}: {mark}")
        for d in c["defects"]:
            terms = " + ".join(f"{v}*{y}" for y, v in d["defect"].items())
            lines.append(f"    n={d['arity']} {'.'.join(d['word'])} -> {terms}")
        for note in c["notes"]:
            lines.append(f"    {note}")
    for line in report.get("summary", []):
        lines.append(f"  {line}")
    return "\n".join(lines) + "\n"


def emit_report(report: dict, fmt: str, path: str | None, out=None) -> None:
    """Print in the chosen format; with ``path`` also write ``path`` (JSON)
    and ``path.txt`` (text)."""
    out = out or sys.stdout
    text = render_text(report)
    js = docio.dumps(report)
    out.write(js if fmt == "json" else text)
    if path:
        Path(path).write_text(js, encoding="utf-8")
        Path(str(path) + ".txt").write_text(text, encoding="utf-8")


def _write_doc(path, doc) -> None:
    if path:
        Path(path).write_text(docio.dumps(doc), encoding="utf-8")


# ---- commands ------------------------------------------------------------------------

def cmd_verify(args) -> dict:
    obj = load_structure(args.input, args.field)
    F = obj[0].Z.F if isinstance(obj, list) else obj.F
    report = new_report("verify", args.input, F)
    N = args.arity_bound
    if isinstance(obj, AInfCategory):
        obj = drop_ops(obj, args.drop_op)
        report["checks"].append(check_entry(check_stasheff(obj, N), F))
        if obj.units:
            report["checks"].append(check_entry(validate_units(obj), F))
    elif isinstance(obj, AInfMorphism):
        report["checks"].append(check_entry(check_morphism(obj, N), F))
    elif isinstance(obj, AInfModule):
        report["checks"].append(check_entry(check_module(obj, N), F))
    elif isinstance(obj, ModuleMorphism):
        report["checks"].append(check_entry(check_module_morphism(obj, N), F))
    else:
        for X in obj:
            report["checks"].append(check_entry(validate_mc(X), F))
    return report


def _category_input(args, default_field="Q") -> AInfCategory:
    A = load_structure(args.input, args.field, default_field)
    if not isinstance(A, AInfCategory):
        raise InputError(f"{args.input} is not a category document")
    return drop_ops(A, args.drop_op)


def cmd_homology(args) -> dict:
    A = _category_input(args)
    F = A.F
    report = new_report("homology", args.input, F)
    rep = check_stasheff(A, 1)
    rep.name = "m1 squares to zero"
    report["checks"].append(check_entry(rep, F))
    if not rep.ok:
        return report
    H = build_contraction(A).H
    rows = {}
    for g, gen in H.gens.items():
        rows.setdefault((gen.src, gen.dst, gen.degree), []).append(g)
    report["homology"] = [{"src": s, "dst": t, "degree": d, "dim": len(v), "classes": sorted(v)}
                          for (s, t, d), v in sorted(rows.items())]
    report["summary"] = [f"H^{d}({s},{t}) = {len(v)}" for (s, t, d), v in sorted(rows.items())]
    return report


def cmd_minimal_model(args) -> dict:
    from .modules import module_minimal_model

    obj = load_structure(args.input, args.field)
    F = obj.F
    report = new_report("minimal-model", args.input, F)
    if isinstance(obj, AInfModule):
        tr = module_minimal_model(obj, arity=args.arity_bound or 4)
        minimal, morphism = tr.minimal, tr.morphism
    elif isinstance(obj, AInfCategory):
        tr = transfer_minimal_model(drop_ops(obj, args.drop_op), arity=args.arity_bound)
        minimal, morphism = tr.minimal, tr.morphism
    else:
        raise InputError("minimal-model expects a category or module document")
    for r in tr.reports:
        report["checks"].append(check_entry(r, F))
    report["arity"] = tr.arity
    report["minimal"] = docio.to_doc(minimal)
    report["quasi_isomorphism"] = docio.to_doc(morphism)
    higher = sorted((len(w), w) for w in minimal.ops if len(w) >= 3)
    report["summary"] = [f"minimal model: {len(minimal.gens)} basis elements, "
                         f"{len(minimal.ops)} entries, computed to arity {tr.arity}",
                         f"higher products: {len(higher)}"]
    _write_doc(args.out, report["minimal"])
    _write_doc(args.morphism_out, report["quasi_isomorphism"])
    return report


def cmd_ext(args) -> dict:
    q = load_quiver(args.input, args.field)
    alg = build_algebra(q)
    if not isinstance(alg, PathAlgebra):
        raise InputError("ext needs an ordinary bound quiver algebra (degree-0 arrows, no operations)")
    F = alg.F
    report = new_report("ext", args.input, F)
    res = ext_ainf_category(alg, {v: simple(alg, v) for v in alg.vertices}, arity=args.arity_bound)
    Amin = res.minimal
    report["checks"].append(check_entry(check_stasheff(Amin, args.arity_bound), F))
    report["checks"].append(check_entry(validate_units(Amin), F))
    report["resolutions"] = {v: [sorted(t) for t in r.terms] for v, r in sorted(res.resolutions.items())}
    report["ext_dims"] = [{"src": X, "dst": Y, "dims": {str(k): v for k, v in sorted(d.items())}}
                          for (X, Y), d in sorted(res.ext_dims.items())]
    report["minimal"] = docio.to_doc(Amin)
    units = set(Amin.units.values())
    report["products"] = [
        {"arity": len(w), "word": list(w), "output": {y: F.format(c) for y, c in sorted(lc.items())}}
        for w, lc in sorted(Amin.ops.items(), key=lambda kv: (len(kv[0]), kv[0]))
        if not units.intersection(w)]
    report["summary"] = [f"algebra dimension {alg.dim}",
                         f"minimal model: {len(Amin.gens)} basis elements",
                         f"non-unit products: {len(report['products'])} "
                         f"(arity >= 3: {sum(p['arity'] >= 3 for p in report['products'])})"]
    return report


def _tw_objects(args):
    obj = load_structure(args.input, args.field)
    if isinstance(obj, list):
        return obj[0].Z.base, obj
    if not isinstance(obj, AInfCategory):
        raise InputError("tw expects a category or twisted document")
    A = drop_ops(obj, args.drop_op)
    Z = shift_category(A, (-1, 0, 1))
    objs = random_twisted_objects(Z, random.Random(args.seed), count=args.count)
    return A, objs


def cmd_tw_verify(args) -> dict:
    A, objs = _tw_objects(args)
    F = A.F
    report = new_report("tw verify", args.input, F)
    for X in objs:
        r = validate_mc(X)
        r.name = f"Maurer-Cartan {X.name}"
        report["checks"].append(check_entry(r, F))
    if all(c["ok"] for c in report["checks"]) and objs:
        T = tw_category(objs[0].Z, objs)
        report["checks"].append(check_entry(check_stasheff(T, args.arity_bound), F))
        report["summary"] = [f"tw on {len(objs)} objects: {len(T.gens)} basis elements, "
                             f"{len(T.ops)} entries"]
    report["objects"] = docio.twisted_to_doc(objs)["objects"] if objs else []
    return report


def cmd_tw_h0(args) -> dict:
    A, objs = _tw_objects(args)
    F = A.F
    report = new_report("tw h0", args.input, F)
    if not objs:
        report["h0"] = []
        return report
    T = tw_category(objs[0].Z, objs, max_arity=2)
    H = h0_category(T)
    names = [X.name for X in objs]
    table = []
    for X in names:
        for Y in names:
            table.append({"src": X, "dst": Y, "dim": H.dim(X, Y)})
    report["h0"] = table
    if F.is_finite:
        report["indecomposable"] = {X: h0_indecomposable(H, X, args.cap) for X in names}
        report["isomorphic"] = [[X, Y] for i, X in enumerate(names) for Y in names[i + 1:]
                                if h0_isomorphic(H, X, Y, args.cap)]
    report["summary"] = [f"H0({r['src']},{r['dst']}) = {r['dim']}" for r in table]
    return report


def _rep_oracle(A: AInfCategory, dropped: bool, F: Field, bound, cap) -> dict:
    """Independent count from quiver representations, where one is known."""
    key = A.name
    if key in ("A4cat", "Ecat"):
        q = PRESENTATIONS["A4" if dropped else "B9"](F)
        label = "representations of A4" + ("" if dropped else " with gamma*beta*alpha = 0")
    elif key == "D4cat" and dropped:
        q = PRESENTATIONS["D4"](F)
        label = "representations of 2 <- 1 -> 4 <- 3"
    elif key == "D4cat":
        return {"source": "reference count", "indecomposable_isoclasses": 9}
    else:
        return {"source": "none"}
    inv = rep_enumerate(build_algebra(q), bound, cap)
    return {"source": label, "indecomposable_isoclasses": inv.n_indecomposable,
            "isoclasses": len(inv.classes)}


def cmd_tw_enum(args) -> dict:
    A = load_structure(args.input, args.field, default_field="F2")
    if not isinstance(A, AInfCategory):
        raise InputError("tw enum expects a category")
    dropped = bool(args.drop_op)
    A = drop_ops(A, args.drop_op)
    F = A.F
    bound = parse_dims(args.dims)
    report = new_report("tw enum", args.input, F)
    inv = filt_enumerate(A, bound=bound, cap=args.cap)
    reps = []
    for X, flag in zip(inv.representatives(), inv.indecomposable):
        Z = X.Z
        reps.append({"blocks": [Z.shift_of[b][0] for b in X.blocks],
                     "delta": [{"row": i, "col": j, "element": Z.element_of[z][0],
                                "coeff": F.format(c)}
                               for (i, j), v in sorted(X.delta.items()) for z, c in sorted(v.items())],
                     "indecomposable": flag})
    oracle = _rep_oracle(A, dropped, F, bound, args.cap)
    report["counts"] = {"searched": inv.searched, "mc_valid": inv.mc_valid,
                        "isoclasses": len(inv.classes),
                        "indecomposable_isoclasses": inv.n_indecomposable}
    report["representatives"] = reps
    report["oracle"] = oracle
    expected = oracle.get("indecomposable_isoclasses")
    report["checks"].append({"name": "oracle comparison", "ok": expected in (None, inv.n_indecomposable),
                             "max_arity": 0, "n_defects": 0 if expected in (None, inv.n_indecomposable) else 1,
                             "defects": [], "notes": [f"oracle: {oracle['source']}"]})
    report["summary"] = [f"indecomposable isoclasses: {inv.n_indecomposable}",
                         f"isoclasses: {len(inv.classes)}",
                         f"Maurer-Cartan objects: {inv.mc_valid} of {inv.searched}"]
    if expected is not None:
        report["summary"].append(f"oracle ({oracle['source']}): {expected}")
    return report


def cmd_rep_enum(args) -> dict:
    q = load_quiver(args.input, args.field, default_field="F2")
    alg = build_algebra(q)
    if not isinstance(alg, PathAlgebra):
        raise InputError("rep-enum needs an ordinary bound quiver algebra")
    F = alg.F
    report = new_report("rep-enum", args.input, F)
    inv = rep_enumerate(alg, parse_dims(args.dims), args.cap)
    report["counts"] = {"searched": inv.searched, "isoclasses": len(inv.classes),
                        "indecomposable_isoclasses": inv.n_indecomposable}
    report["representatives"] = [
        {"dims": dict(sorted(X.dims.items())),
         "maps": {a: [[F.format(c) for c in row] for row in M] for a, M in sorted(X.maps.items())},
         "indecomposable": flag}
        for X, flag in zip(inv.classes, inv.indecomposable)]
    report["summary"] = [f"indecomposable isoclasses: {inv.n_indecomposable}",
                         f"isoclasses: {len(inv.classes)}"]
    return report


def cmd_deform_check(args) -> dict:
    F = parse_field(args.field, "F3")
    rng = random.Random(args.seed)
    report = new_report("deform-check", args.input, F)
    if args.input == "random":
        cases = []
        for _ in range(args.count):
            B = random_associative_algebra(F, rng)
            n = args.degree or rng.choice([2, 3])
            cases.append((B, n, random_cochain(B, n, rng, cocycle=rng.random() < 0.5)))
    else:
        B = load_structure(args.input, args.field, "F3")
        if not isinstance(B, AInfCategory):
            raise InputError("deform-check expects an algebra document")
        n = args.degree or 2
        if args.cochain:
            doc = docio.load(args.cochain)
            c = docio._family(B.F, doc.get("entries", []))
            cases = [(B, int(doc.get("arity", n)), c)]
        else:
            cases = [(B, n, random_cochain(B, n, rng, cocycle=rng.random() < 0.5))
                     for _ in range(args.count)]
    rows, bad = [], {}
    for k, (B, n, c) in enumerate(cases):
        ainf, cocycle = hochschild_deformation_check(B, c, n)
        rows.append({"case": k, "arity": n, "dim": len(B.gens), "ainf": ainf, "cocycle": cocycle})
        if ainf != cocycle:
            bad[(f"case{k}",)] = {"disagreement": 1}
    report["checks"].append(check_entry(Report("deformation verdict = cocycle verdict", bad), F))
    report["cases"] = rows
    report["summary"] = [f"{len(rows)} cochains, {sum(r['cocycle'] for r in rows)} cocycles, "
                         f"{len(rows) - len(bad)} agreements"]
    return report


# ---- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q, F2, F3, ... (default depends on the command)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--arity-bound", type=int, default=None)
    common.add_argument("--dims", default=None, help="enumeration bound: N or x=1,y=2")
    common.add_argument("--cap", type=int, default=100000, help="largest search space allowed")
    common.add_argument("--drop-op", action="append", default=[],
                        help="remove mN or mN(x,y,...) before running")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--report", help="also write the JSON report here (and a .txt summary)")

    p = argparse.ArgumentParser(prog="ainfty", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check identities of a document")
    s.add_argument("input")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("homology", parents=[common], help="homology of m1")
    s.add_argument("input")
    s.set_defaults(run=cmd_homology)

    s = sub.add_parser("minimal-model", parents=[common], help="minimal model by transfer")
    s.add_argument("input")
    s.add_argument("--out", help="write the minimal model document here")
    s.add_argument("--morphism-out", help="write the quasi-isomorphism document here")
    s.set_defaults(run=cmd_minimal_model)

    s = sub.add_parser("ext", parents=[common], help="Ext category of the simples of a quiver algebra")
    s.add_argument("input")
    s.set_defaults(run=cmd_ext)

    tw = sub.add_parser("tw", help="twisted objects")
    twsub = tw.add_subparsers(dest="tw_command", required=True)
    for name, fn in (("verify", cmd_tw_verify), ("h0", cmd_tw_h0), ("enum", cmd_tw_enum)):
        s = twsub.add_parser(name, parents=[common])
        s.add_argument("input")
        s.add_argument("--count", type=int, default=3, help="random objects when none are given")
        s.set_defaults(run=fn)

    s = sub.add_parser("rep-enum", parents=[common], help="enumerate quiver representations")
    s.add_argument("input")
    s.set_defaults(run=cmd_rep_enum)

    s = sub.add_parser("deform-check", parents=[common],
                       help="compare deformations with Hochschild cocycles")
    s.add_argument("input", help="algebra document, fixture:NAME, or 'random'")
    s.add_argument("--degree", type=int, choices=[2, 3], default=None)
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--cochain", help="cochain document {arity, entries}")
    s.set_defaults(run=cmd_deform_check)
    return p


INPUT_ERRORS = (InputError, docio.DocumentError, StructureError, FieldError, QuiverError,
                TwistError, OSError, json.JSONDecodeError)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.run(args)
    except CertificationError as exc:
        err.write(f"error: certification failed: {exc}\n")
        return 1
    except INPUT_ERRORS as exc:
        err.write(f"error: {exc}\n")
        return 2
    code = finish(report)
    try:
        emit_report(report, args.format, args.report, out)
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
