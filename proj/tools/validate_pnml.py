#!/usr/bin/env python3
"""Validate PNML files against the bundled place/transition net schema.

Beyond the grammar, every arc must join a place and a transition, and ids
must be unique. Exit status 0 if all files are valid, 1 otherwise.
"""
import argparse
import sys
from pathlib import Path

from lxml import etree

NS = "{http://www.pnml.org/version-2009/grammar/pnml}"


def semantic_errors(doc):
    errors = []
    kinds = {}
    for tag in ("place", "transition"):
        for el in doc.iter(NS + tag):
            kinds[el.get("id")] = tag
    seen = set()
    for el in doc.iter():
        i = el.get("id")
        if i is None or not isinstance(el.tag, str) or not el.tag.startswith(NS):
            continue
        if i in seen:
            errors.append(f"duplicate id {i}")
        seen.add(i)
    for arc in doc.iter(NS + "arc"):
        s, t = kinds.get(arc.get("source")), kinds.get(arc.get("target"))
        if s is None or t is None:
            errors.append(f"arc {arc.get('id')} has a dangling end")
        elif s == t:
            errors.append(f"arc {arc.get('id')} joins two {s}s")
    return errors


def main():
    default_schema = Path(__file__).resolve().parent.parent / "schema" / "ptnet.rng"
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--schema", type=Path, default=default_schema)
    ap.add_argument("files", nargs="+", type=Path)
    args = ap.parse_args()

    rng = etree.RelaxNG(etree.parse(str(args.schema)))
    ok = True
    for path in args.files:
        try:
            doc = etree.parse(str(path))
        except etree.XMLSyntaxError as e:
            print(f"{path}: not well-formed: {e}")
            ok = False
            continue
        errors = []
        if not rng.validate(doc):
            errors += [str(e) for e in rng.error_log]
        errors += semantic_errors(doc)
        if errors:
            ok = False
            for e in errors:
                print(f"{path}: {e}")
        else:
            print(f"{path}: valid")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
