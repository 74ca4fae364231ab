"""JSON documents for categories, morphisms and modules.

Every document carries ``"schema": "ainfty-structure/1"`` and a ``kind``.
Coefficients are exact strings ("3/7", "4 mod 11"); words are written in
display order, leftmost factor applied last.  Serialization sorts everything
so that equal structures give identical bytes.
"""

from __future__ import annotations

import json
from typing import Mapping

from .field import Field
from .graded import StructureError
from .modules import SINK, AInfModule, ModuleMorphism
from .structure import AInfCategory, AInfMorphism, Gen

SCHEMA = "ainfty-structure/1"


class DocumentError(ValueError):
    pass


def _entries(F: Field, fam: Mapping) -> list:
    rows = []
    for w in sorted(fam, key=lambda w: (len(w), w)):
        for y in sorted(fam[w]):
            rows.append({"arity": len(w), "word": list(w), "output": y,
                         "coeff": F.format(fam[w][y])})
    return rows


def _family(F: Field, rows) -> dict:
    fam: dict = {}
    for r in rows:
        w = tuple(r["word"])
        if "arity" in r and int(r["arity"]) != len(w):
            raise DocumentError(f"entry {w!r} declares arity {r['arity']}")
        slot = fam.setdefault(w, {})
        y = r["output"]
        slot[y] = F(slot.get(y, 0) + F.parse(r.get("coeff", "1")))
    return fam


def category_to_doc(A: AInfCategory) -> dict:
    homs: dict = {}
    for g, gen in A.gens.items():
        homs.setdefault((gen.src, gen.dst), []).append([g, gen.degree])
    doc = {
        "schema": SCHEMA,
        "kind": "category",
        "name": A.name,
        "field": A.F.descriptor(),
        "objects": list(A.objects),
        "homs": [{"src": s, "dst": t, "basis": sorted(b)} for (s, t), b in sorted(homs.items())],
        "operations": _entries(A.F, A.ops),
        "arity_bound": A.arity_bound,
    }
    if A.units:
        doc["identities"] = dict(sorted(A.units.items()))
    return doc


def category_from_doc(doc: Mapping) -> AInfCategory:
    _expect(doc, "category")
    try:
        F = Field.from_descriptor(doc.get("field", "Q"))
        gens = {}
        for h in doc.get("homs", []):
            for name, deg in h["basis"]:
                if name in gens:
                    raise DocumentError(f"basis name {name!r} used twice")
                gens[name] = Gen(h["src"], h["dst"], int(deg))
        return AInfCategory(F, doc["objects"], gens, _family(F, doc.get("operations", [])),
                            doc.get("identities"), doc.get("arity_bound"), doc.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed category document: {exc!r}") from exc


def morphism_to_doc(f: AInfMorphism) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "morphism",
        "source": category_to_doc(f.source),
        "target": category_to_doc(f.target),
        "objmap": dict(sorted(f.objmap.items())),
        "components": _entries(f.F, f.comps),
    }


def morphism_from_doc(doc: Mapping) -> AInfMorphism:
    _expect(doc, "morphism")
    A = category_from_doc(doc["source"])
    B = category_from_doc(doc["target"])
    return AInfMorphism(A, B, _family(A.F, doc.get("components", [])), doc.get("objmap"))


def module_to_doc(M: AInfModule) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "module",
        "name": M.name,
        "base": category_to_doc(M.base),
        "elements": [[x, g.src, g.degree] for x, g in sorted(M.gens.items())],
        "operations": _entries(M.F, M.ops),
        "arity_bound": M.arity_bound,
    }


def module_from_doc(doc: Mapping) -> AInfModule:
    _expect(doc, "module")
    A = category_from_doc(doc["base"])
    gens = {x: Gen(obj, SINK, int(d)) for x, obj, d in doc.get("elements", [])}
    return AInfModule(A, gens, _family(A.F, doc.get("operations", [])),
                      doc.get("arity_bound"), doc.get("name", ""))


def module_morphism_to_doc(f: ModuleMorphism) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "module-morphism",
        "source": module_to_doc(f.source),
        "target": module_to_doc(f.target),
        "components": _entries(f.F, f.comps),
    }


def module_morphism_from_doc(doc: Mapping) -> ModuleMorphism:
    _expect(doc, "module-morphism")
    L = module_from_doc(doc["source"])
    M = module_from_doc(doc["target"])
    return ModuleMorphism(L, M, _family(L.F, doc.get("components", [])))


_READERS = {
    "category": category_from_doc,
    "morphism": morphism_from_doc,
    "module": module_from_doc,
    "module-morphism": module_morphism_from_doc,
    "twisted": lambda doc: twisted_from_doc(doc),
}


def _expect(doc, kind):
    if not isinstance(doc, Mapping):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise DocumentError(f"unsupported schema {doc.get('schema')!r}")
    if doc.get("kind", "category") != kind:
        raise DocumentError(f"expected a {kind} document, got {doc.get('kind')!r}")


def from_doc(doc: Mapping):
    """Dispatch on ``kind``; structural problems surface as :class:`DocumentError`."""
    if not isinstance(doc, Mapping):
        raise DocumentError("document must be a JSON object")
    kind = doc.get("kind", "category")
    if kind not in _READERS:
        raise DocumentError(f"unknown document kind {kind!r}")
    try:
        return _READERS[kind](doc)
    except StructureError as exc:
        raise DocumentError(str(exc)) from exc


def to_doc(obj) -> dict:
    if isinstance(obj, AInfCategory):
        return category_to_doc(obj)
    if isinstance(obj, AInfMorphism):
        return morphism_to_doc(obj)
    if isinstance(obj, AInfModule):
        return module_to_doc(obj)
    if isinstance(obj, ModuleMorphism):
        return module_morphism_to_doc(obj)
    raise TypeError(f"no document form for {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{path}: {exc}") from exc


# ---- twisted objects ---------------------------------------------------------------

def twisted_to_doc(objects) -> dict:
    """Twisted objects over a common shift closure; blocks are ``[object, shift]``
    and delta entries name elements of the base category."""
    objects = list(objects)
    Z = objects[0].Z
    F = Z.F
    rows = []
    for X in objects:
        delta = []
        for (i, j) in sorted(X.delta):
            for z in sorted(X.delta[(i, j)]):
                delta.append({"row": i, "col": j, "element": Z.element_of[z][0],
                              "coeff": F.format(X.delta[(i, j)][z])})
        rows.append({"name": X.name, "blocks": [list(Z.shift_of[b]) for b in X.blocks],
                     "delta": delta})
    shifts = sorted({n for _, n in Z.shift_of.values()})
    return {"schema": SCHEMA, "kind": "twisted", "base": category_to_doc(Z.base),
            "shifts": shifts, "objects": rows}


def twisted_from_doc(doc: Mapping) -> list:
    from .twisted import TwistError, TwistedObject, shift_category, shifted_name

    _expect(doc, "twisted")
    A = category_from_doc(doc["base"])
    F = A.F
    rows = doc.get("objects", [])
    shifts = set(doc.get("shifts", [0]))
    for r in rows:
        shifts.update(int(n) for _, n in r["blocks"])
    try:
        Z = shift_category(A, sorted(shifts))
        out = []
        for r in rows:
            blocks = [(o, int(n)) for o, n in r["blocks"]]
            delta: dict = {}
            for e in r.get("delta", []):
                i, j = int(e["row"]), int(e["col"])
                if not (0 <= i < j < len(blocks)):
                    raise DocumentError(f"{r['name']}: delta entry ({i},{j}) is not strictly upper triangular")
                x = e["element"]
                (_, n), (_, m) = blocks[j], blocks[i]
                z = x if n == m == 0 else f"{x}[{n},{m}]"
                slot = delta.setdefault((i, j), {})
                slot[z] = F(slot.get(z, 0) + F.parse(e.get("coeff", "1")))
            out.append(TwistedObject(Z, [shifted_name(o, n) for o, n in blocks], delta,
                                     r["name"]))
        return out
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed twisted document: {exc!r}") from exc
    except TwistError as exc:
        raise DocumentError(str(exc)) from exc
