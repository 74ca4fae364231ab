"""Write the named fixtures as JSON documents into data/."""

import json
import sys
from pathlib import Path

from ainfty import docio
from ainfty.fixtures import FIXTURES
from ainfty.quiver import PRESENTATIONS


def quiver_doc(q) -> dict:
    return {
        "field": q.field.descriptor(),
        "vertices": list(q.vertices),
        "arrows": [{"name": a, "src": s, "dst": t, "degree": d}
                   for a, (s, t, d) in q.arrows.items()],
        "relations": [{p: q.field.format(c) for p, c in r.items()} for r in q.relations],
    }


def main(out_dir="data"):
    out = Path(out_dir)
    out.mkdir(exist_ok=True)
    for name, make in sorted(FIXTURES.items()):
        (out / f"fixture_{name}.json").write_text(docio.dumps(docio.to_doc(make())))
    for name, make in sorted(PRESENTATIONS.items()):
        (out / f"quiver_{name}.json").write_text(json.dumps(quiver_doc(make()), indent=2) + "\n")
    print("\n".join(sorted(p.name for p in out.iterdir())))


if __name__ == "__main__":
    main(*sys.argv[1:])
