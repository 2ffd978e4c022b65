"""Command-line front end: ``catgroup <command> ...``."""
from __future__ import annotations

import argparse
import os
import sys

from .construct import build_categorical_group
from .crossed import classify
from .errors import CatGroupError, ParseError
from .fileio import Document, export_text, load_file
from .instances import BUILTIN_NAMES, builtin_instance, canonical_key, is_fz2_like, search_fattened
from .report import Report
from .star import classical_core, round_trip
from .verify import verify_all


def _load(target: str) -> Document:
    """A file path, or the name of a built-in instance."""
    if not os.path.exists(target) and target.upper() in BUILTIN_NAMES:
        xm = builtin_instance(target)
        doc = Document()
        doc.xmods[target.upper()] = xm
        return doc
    return load_file(target)


def _xmod(doc: Document, out):
    xm = doc.only_xmod()
    if xm is None:
        for rep in doc.reports:
            if not rep.ok:
                print(rep.format(), file=out)
        print("no valid crossed module in input", file=out)
    return xm


def _summary(args, out, **kv):
    if args.summary:
        print("--- summary", file=out)
        for k, v in kv.items():
            print(f"{k}={v}", file=out)


def cmd_validate(args, out):
    doc = _load(args.file)
    if not doc.reports:
        for name, xm in doc.xmods.items():
            print(f"xmod {name}: valid (built-in)", file=out)
    for rep in doc.reports:
        print(rep.format(), file=out)
    _summary(args, out, structures=len(doc.reports) or len(doc.xmods),
             invalid=sum(not r.ok for r in doc.reports), status="PASS" if doc.ok else "FAIL")
    return 0 if doc.ok else 1


def cmd_classify(args, out):
    xm = _xmod(_load(args.file), out)
    if xm is None:
        return 1
    flags = classify(xm)
    print(flags.format(), file=out)
    print(f"cssc={'yes' if flags.cssc else 'no'}", file=out)
    _summary(args, out, connected=flags.connected, strict=flags.strict,
             special=flags.special, cssc=flags.cssc)
    return 0 if flags.cssc else 1


def _build(xm, out):
    flags = classify(xm)
    if not flags.cssc:
        print(f"not a cssc-crossed module: {flags.format()}", file=out)
        return None
    return build_categorical_group(xm)


def cmd_build(args, out):
    xm = _xmod(_load(args.file), out)
    if xm is None:
        return 1
    model = _build(xm, out)
    if model is None:
        return 1
    print(f"objects {model.n_objects}", file=out)
    print(f"arrows {model.n_arrows}", file=out)
    print(f"special {len(model.special)}", file=out)
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write(model.dump())
        print(f"model written to {args.dump}", file=out)
    _summary(args, out, objects=model.n_objects, arrows=model.n_arrows,
             special=len(model.special))
    return 0


def cmd_verify(args, out):
    xm = _xmod(_load(args.file), out)
    if xm is None:
        return 1
    model = _build(xm, out)
    if model is None:
        return 1
    rep = verify_all(model, xm.n.special, title=f"verify {args.file}")
    print(rep.format(), file=out)
    s = rep.summary()
    _summary(args, out, checks=s["checks"], passed=s["passed"], failed=s["failed"],
             arrows=model.n_arrows, status=s["status"])
    return 0 if rep.ok else 1


def cmd_roundtrip(args, out):
    xm = _xmod(_load(args.file), out)
    if xm is None:
        return 1
    iso = round_trip(classical_core(xm))
    print(iso.format(), file=out)
    _summary(args, out, found=iso.found, arrows=iso.arrows_built,
             expected=iso.arrows_expected, status="PASS" if iso.ok else "FAIL")
    return 0 if iso.ok else 1


def cmd_search(args, out):
    hits = search_fattened(args.max_n, args.max_m, args.trials, args.seed)
    fz2 = canonical_key(builtin_instance("FZ2"))
    rep = Report(f"search max-n={args.max_n} max-m={args.max_m} trials={args.trials} "
                 f"seed={args.seed}")
    for i, h in enumerate(hits):
        tag = " fz2" if h.key == fz2 else ""
        print(f"{i:4d} {h.describe()}{tag}", file=out)
    rep.add("found-non-strict-cssc", bool(hits), (), f"{len(hits)} instances")
    print(rep.format(), file=out)
    if args.export_dir and hits:
        os.makedirs(args.export_dir, exist_ok=True)
        for i, h in enumerate(hits):
            with open(os.path.join(args.export_dir, f"hit{i:04d}.txt"), "w", encoding="utf-8") as fh:
                fh.write(export_text(h.xm, f"HIT{i}"))
    _summary(args, out, found=len(hits), fz2_like=sum(is_fz2_like(h.xm) for h in hits),
             status="PASS" if hits else "FAIL")
    return 0 if hits else 1


def cmd_instance(args, out):
    if args.name is None:
        for n in BUILTIN_NAMES:
            print(n, file=out)
        return 0
    xm = builtin_instance(args.name)
    text = export_text(xm, args.name.upper())
    if args.export:
        with open(args.export, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"{args.name.upper()} written to {args.export}", file=out)
    else:
        out.write(text)
    flags = classify(xm)
    _summary(args, out, name=args.name.upper(), m=xm.m.n, n=xm.n.n, cssc=flags.cssc)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="catgroup",
                                description="Finite c-groups, cssc-crossed modules and "
                                            "their categorical groups.")
    p.add_argument("--summary", action="store_true", help="append a key=value summary block")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--summary", action="store_true", default=argparse.SUPPRESS)
        return sp

    for name, fn, help_ in (("validate", cmd_validate, "validate every block of a file"),
                            ("classify", cmd_classify, "connected/strict/special flags"),
                            ("verify", cmd_verify, "build and run every axiom check"),
                            ("roundtrip", cmd_roundtrip, "star round trip of a strict instance")):
        add(name, fn, help_).add_argument("file", help="instance file or built-in name")
    sp = add("build", cmd_build, "build the categorical group")
    sp.add_argument("file")
    sp.add_argument("--dump", metavar="OUT", help="write the model tables to OUT")
    sp = add("search", cmd_search, "seeded search for non-strict cssc-crossed modules")
    sp.add_argument("--max-n", type=int, default=3)
    sp.add_argument("--max-m", type=int, default=2)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--export-dir", metavar="DIR", help="write each hit as an instance file")
    sp = add("instance", cmd_instance, "print or export a built-in instance")
    sp.add_argument("name", nargs="?", help=f"one of {', '.join(BUILTIN_NAMES)}")
    sp.add_argument("--export", metavar="FILE")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args, out)
    except ParseError as e:
        print(f"parse error: {e}", file=out)
        return 2
    except (CatGroupError, KeyError, OSError) as e:
        print(f"error: {e}", file=out)
        return 1


if __name__ == "__main__":
    sys.exit(main())
