"""Plain-text instance files.

A file is a sequence of blocks::

    # comment
    [cgroup N]
    elements: 0a 0b 1
    zero: 0a
    neg: 0a 0b 1
    add:
      0a 0b 1
      0b 0a 1
      1  1  0b
    cong: 0a~0b
    special: auto

    [action conj]
    actor: N
    acted: M
    table:
      ...one row per actor element...

    [xmod FZ2]
    m: M
    n: N
    boundary: 0a 0b
    action: conj
    weakspecial: total

``cong`` and ``special`` take ``equality``, ``total`` or ``a~b`` pairs that
generate an equivalence (``special`` also takes ``auto``). ``neg`` may be
omitted. ``action`` in an xmod block may be ``trivial``; ``weakspecial``
also takes ``derived``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Optional

from .cgroup import (
    CGroup,
    default_negation,
    equivalence_closure,
    relation_from_spec,
    validate_cgroup,
)
from .crossed import (
    CAction,
    CCrossedModule,
    derived_weak_special,
    trivial_action,
    validate_action,
    validate_crossed_module,
)
from .errors import ParseError, StructuralError
from .report import ValidationReport

_KEYS = {
    "cgroup": {"elements", "zero", "neg", "add", "cong", "special"},
    "action": {"actor", "acted", "table"},
    "xmod": {"m", "n", "boundary", "action", "weakspecial"},
}
_REQUIRED = {
    "cgroup": {"elements", "add"},
    "action": {"actor", "acted", "table"},
    "xmod": {"m", "n", "boundary"},
}
_HEADER = re.compile(r"^\[(\w+)\s+([^\]\s]+)\]$")


@dataclass
class Field:
    value: str
    line: int
    rows: list = field(default_factory=list)  # (line, tokens) for indented continuation rows


@dataclass
class Block:
    kind: str
    name: str
    line: int
    fields: dict = field(default_factory=dict)


def parse_blocks(text: str) -> list[Block]:
    blocks: list[Block] = []
    cur: Optional[Block] = None
    last: Optional[Field] = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if raw[:1] in (" ", "\t"):
            if last is None:
                raise ParseError("indented row outside a multi-line field", no)
            last.rows.append((no, line.split()))
            continue
        last = None
        m = _HEADER.match(line.strip())
        if m:
            kind, name = m.groups()
            if kind not in _KEYS:
                raise ParseError(f"unknown block type {kind!r}", no)
            if any(b.name == name and b.kind == kind for b in blocks):
                raise ParseError(f"duplicate {kind} {name!r}", no)
            cur = Block(kind, name, no)
            blocks.append(cur)
            continue
        if cur is None:
            raise ParseError("content before the first [block]", no)
        if ":" not in line:
            raise ParseError(f"expected 'key: value', got {line.strip()!r}", no)
        key, value = (s.strip() for s in line.split(":", 1))
        if key not in _KEYS[cur.kind]:
            raise ParseError(f"unknown key {key!r} in {cur.kind} block", no)
        if key in cur.fields:
            raise ParseError(f"duplicate key {key!r}", no)
        f = Field(value, no)
        cur.fields[key] = f
        last = f
    for b in blocks:
        missing = sorted(_REQUIRED[b.kind] - set(b.fields))
        if missing:
            raise ParseError(f"{b.kind} {b.name!r} lacks {', '.join(missing)}", b.line)
    return blocks


def _table_rows(f: Field, count, width, lookup, what):
    rows = list(f.rows)
    if f.value:
        rows.insert(0, (f.line, f.value.split()))
    if len(rows) != count:
        line = rows[-1][0] if rows else f.line
        raise ParseError(f"{what}: expected {count} rows, got {len(rows)}", line)
    out = []
    for no, toks in rows:
        if len(toks) != width:
            raise ParseError(f"{what}: row has {len(toks)} entries, expected {width}", no)
        out.append(tuple(lookup(t, no) for t in toks))
    return tuple(out)


def _relation(f: Optional[Field], n, lookup, default):
    if f is None:
        return relation_from_spec(n, default)
    v = f.value
    if v in ("equality", "total"):
        return relation_from_spec(n, v)
    pairs = []
    for tok in re.split(r"[\s,]+", v):
        if not tok:
            continue
        if "~" not in tok:
            raise ParseError(f"expected a~b, got {tok!r}", f.line)
        a, b = tok.split("~", 1)
        pairs.append((lookup(a, f.line), lookup(b, f.line)))
    return equivalence_closure(n, pairs)


@dataclass
class Document:
    cgroups: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    xmods: dict = field(default_factory=dict)
    reports: list = field(default_factory=list)
    failed: set = field(default_factory=set)

    @property
    def ok(self):
        return all(r.ok for r in self.reports)

    def only_xmod(self) -> Optional[CCrossedModule]:
        if not self.xmods:
            return None
        return list(self.xmods.values())[-1]


def _names_lookup(names, what):
    index = {s: i for i, s in enumerate(names)}

    def look(tok, line):
        if tok not in index:
            raise ParseError(f"unknown element {tok!r} of {what}", line)
        return index[tok]

    return look


def _build_cgroup(b: Block, doc: Document):
    names = b.fields["elements"].value.split()
    if not names or len(set(names)) != len(names):
        raise ParseError("elements must be distinct and non-empty", b.fields["elements"].line)
    look = _names_lookup(names, b.name)
    n = len(names)
    add = _table_rows(b.fields["add"], n, n, look, "add")
    zf = b.fields.get("zero")
    zero = look(zf.value, zf.line) if zf else 0
    cong = _relation(b.fields.get("cong"), n, look, "equality")
    nf = b.fields.get("neg")
    if nf:
        neg = _table_rows(nf, 1, n, look, "neg")[0]
    else:
        neg = _neg_up_to(add, zero, cong, b)
    sf = b.fields.get("special")
    special = None if sf is None or sf.value == "auto" else _relation(sf, n, look, "equality")
    rep = validate_cgroup(add, zero, neg, cong, special, names, f"cgroup {b.name}")
    doc.reports.append(rep)
    if rep.ok:
        doc.cgroups[b.name] = rep.value
    else:
        doc.failed.add(b.name)


def _neg_up_to(add, zero, cong, b):
    try:
        return default_negation(add, zero, cong)
    except StructuralError as e:
        raise ParseError(f"{e}; give 'neg' explicitly", b.line) from e


class _Skip(Exception):
    """A referenced block failed validation; its report is already recorded."""


def _ref(b: Block, key, table, what, doc: Document):
    f = b.fields[key]
    if f.value in doc.failed:
        raise _Skip
    if f.value not in table:
        raise ParseError(f"unknown or invalid {what} {f.value!r}", f.line)
    return table[f.value]


def _build_action(b: Block, doc: Document):
    actor = _ref(b, "actor", doc.cgroups, "cgroup", doc)
    acted = _ref(b, "acted", doc.cgroups, "cgroup", doc)
    look = _names_lookup([acted.name(i) for i in acted.carrier], b.fields["acted"].value)
    table = _table_rows(b.fields["table"], actor.n, acted.n, look, "table")
    rep = validate_action(CAction(actor, acted, table), f"action {b.name}")
    doc.reports.append(rep)
    if rep.ok:
        doc.actions[b.name] = rep.value
    else:
        doc.failed.add(b.name)


def _build_xmod(b: Block, doc: Document):
    m = _ref(b, "m", doc.cgroups, "cgroup", doc)
    n = _ref(b, "n", doc.cgroups, "cgroup", doc)
    look = _names_lookup([n.name(i) for i in n.carrier], "n")
    boundary = _table_rows(b.fields["boundary"], 1, m.n, look, "boundary")[0]
    af = b.fields.get("action")
    if af is None or af.value == "trivial":
        act = trivial_action(n, m)
    else:
        act = _ref(b, "action", doc.actions, "action", doc)
        if act.actor is not n or act.acted is not m:
            raise ParseError("action does not act by n on m", af.line)
    wf = b.fields.get("weakspecial")
    mlook = _names_lookup([m.name(i) for i in m.carrier], "m")
    xm = CCrossedModule(m, n, boundary, act, relation_from_spec(m.n, "equality"))
    if wf is not None and wf.value == "derived":
        w = derived_weak_special(xm)
        if w is None:
            rep = ValidationReport(f"xmod {b.name}")
            rep.add("derived-weak-special", (), "relation fails W1-W10 or unique lifting")
            doc.reports.append(rep)
            return
    else:
        w = _relation(wf, m.n, mlook, "equality")
    rep = validate_crossed_module(replace(xm, weak=w), f"xmod {b.name}")
    doc.reports.append(rep)
    if rep.ok:
        doc.xmods[b.name] = rep.value


def load_text(text: str) -> Document:
    doc = Document()
    builders = {"cgroup": _build_cgroup, "action": _build_action, "xmod": _build_xmod}
    for b in parse_blocks(text):
        try:
            builders[b.kind](b, doc)
        except _Skip:
            doc.failed.add(b.name)
    return doc


def load_file(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return load_text(fh.read())


# --- export ----------------------------------------------------------------------

def _pairs_text(g: CGroup, rel) -> str:
    if rel == frozenset((a, a) for a in g.carrier):
        return "equality"
    if len(rel) == g.n * g.n:
        return "total"
    return " ".join(f"{g.name(a)}~{g.name(b)}" for a, b in sorted(rel) if a < b)


def _cgroup_text(name, g: CGroup) -> list[str]:
    nm = g.name
    lines = [f"[cgroup {name}]",
             "elements: " + " ".join(nm(a) for a in g.carrier),
             f"zero: {nm(g.zero)}",
             "neg: " + " ".join(nm(x) for x in g.neg),
             "add:"]
    lines += ["  " + " ".join(nm(x) for x in row) for row in g.add]
    lines.append(f"cong: {_pairs_text(g, g.cong)}")
    lines.append("special: auto")
    return lines


def export_text(xm: CCrossedModule, name="X") -> str:
    m, n = xm.m, xm.n
    lines = _cgroup_text(f"{name}_M", m) + [""] + _cgroup_text(f"{name}_N", n) + [""]
    lines += [f"[action {name}_act]", f"actor: {name}_N", f"acted: {name}_M", "table:"]
    lines += ["  " + " ".join(m.name(x) for x in row) for row in xm.action.table]
    lines += ["", f"[xmod {name}]", f"m: {name}_M", f"n: {name}_N",
              "boundary: " + " ".join(n.name(x) for x in xm.boundary),
              f"action: {name}_act",
              f"weakspecial: {_pairs_text(m, xm.weak)}"]
    return "\n".join(lines) + "\n"
