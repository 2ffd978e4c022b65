"""Actions of c-groups and c-crossed modules with an explicit weak-special relation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Optional

from .cgroup import (
    CGroup,
    CGroupMorphism,
    CSubgroup,
    _equivalence_violation,
    _sum_closure_violation,
    equality,
    equivalence_labels,
    is_normal,
    is_perfect,
    relation_from_spec,
    validate_morphism,
)
from .errors import InstanceCorruptionError, PreconditionError, StructuralError
from .report import ValidationReport


@dataclass(frozen=True)
class CAction:
    actor: CGroup
    acted: CGroup
    table: tuple

    def act(self, b, a):
        return self.table[b][a]


def trivial_action(actor: CGroup, acted: CGroup) -> CAction:
    return CAction(actor, acted, tuple(tuple(acted.carrier) for _ in actor.carrier))


def validate_action(act: CAction, subject="action") -> ValidationReport:
    h, g, t = act.actor, act.acted, act.table
    if len(t) != h.n or any(len(row) != g.n for row in t):
        raise StructuralError("action table has the wrong shape")
    if any(not (0 <= v < g.n) for row in t for v in row):
        raise StructuralError("action table references unknown elements")
    rep = ValidationReport(subject)
    rel = g.related

    def first(name, it):
        for w, ok in it:
            if not ok:
                rep.add(name, w)
                return

    pairs = list(itertools.product(g.carrier, repeat=2))
    first("distributes", (((b, a, a1), rel(t[b][g.add[a][a1]], g.add[t[b][a]][t[b][a1]]))
                          for b in h.carrier for a, a1 in pairs))
    first("compatible", (((b, b1, a), rel(t[h.add[b][b1]][a], t[b][t[b1][a]]))
                         for b, b1 in itertools.product(h.carrier, repeat=2) for a in g.carrier))
    first("unital", (((a,), rel(t[h.zero][a], a)) for a in g.carrier))
    first("preserves-cong", (((b, b1, a, a1), rel(t[b][a], t[b1][a1]))
                             for b, b1 in sorted(h.cong) for a, a1 in sorted(g.cong)))
    if rep.ok:
        rep.value = act
    return rep


@dataclass(frozen=True)
class CCrossedModule:
    m: CGroup
    n: CGroup
    boundary: tuple
    action: CAction
    weak: frozenset

    def d(self, c):
        return self.boundary[c]

    def act(self, r, c):
        return self.action.table[r][c]

    @cached_property
    def weak_labels(self):
        return equivalence_labels(self.m.n, self.weak)

    def weak_rep(self, c):
        """Canonical representative (least id) of the W-class of ``c``."""
        return self.weak_labels[c]

    def weakly_special(self, c, c2) -> bool:
        return (c, c2) in self.weak

    @cached_property
    def fibres(self):
        out: dict[int, list[int]] = {}
        for c in self.m.carrier:
            out.setdefault(self.boundary[c], []).append(c)
        return out

    @cached_property
    def weak_classes(self):
        return tuple(sorted(set(self.weak_labels)))

    def __repr__(self):
        return f"CCrossedModule(|M|={self.m.n}, |N|={self.n.n})"


def weak_relation(m: CGroup, spec) -> frozenset:
    if spec == "derived":
        raise ValueError("'derived' needs the whole crossed module")
    return relation_from_spec(m.n, spec)


def _boundary_morphism(xm):
    return CGroupMorphism(xm.m, xm.n, xm.boundary)


def _core_violations(xm: CCrossedModule, rep: ValidationReport):
    m, n, d = xm.m, xm.n, xm.boundary
    if len(d) != m.n or any(not (0 <= v < n.n) for v in d):
        raise StructuralError("boundary table does not match M and N")
    if xm.action.actor != n or xm.action.acted != m:
        raise StructuralError("action must be an action of N on M")
    rep.extend(validate_morphism(_boundary_morphism(xm)), "boundary.")
    rep.extend(validate_action(xm.action), "action.")
    t = xm.action.table
    for c in m.carrier:
        for b in n.carrier:
            if d[t[b][c]] != n.add[b][n.minus(d[c], b)]:
                rep.add("CM1", (c, b), "d(b.a) != b + (d(a) - b)")
                break
        else:
            continue
        break
    for a, a1 in itertools.product(m.carrier, repeat=2):
        if not m.related(t[d[a]][a1], m.add[a][m.minus(a1, a)]):
            rep.add("CM2", (a, a1), "d(a).a1 !~ a + (a1 - a)")
            break


def _weak_violations(xm: CCrossedModule, rep: ValidationReport):
    m, n, d, t, w = xm.m, xm.n, xm.boundary, xm.action.table, xm.weak
    if any(not (0 <= a < m.n and 0 <= b < m.n) for a, b in w):
        raise StructuralError("weak-special pair out of range")
    bad = _equivalence_violation(m.n, w)
    if bad:
        rep.add("W1", bad[1], f"W is not {bad[0]}")
    elif not w <= m.cong:
        rep.add("W1", min(w - m.cong), "W not contained in R_M")
    if not m.special <= w:
        rep.add("W2", min(m.special - w), "special pair of M is not weakly special")
    for c, c2 in sorted(w):
        if not n.is_special(d[c], d[c2]):
            rep.add("W3", (c, c2), "boundaries are not specially congruent")
            break
    if not bad:
        s = _sum_closure_violation(m.add, xm.weak_labels)
        if s:
            rep.add("W4", s, "W is not sum-closed")
    for c, c2 in sorted(w):
        if (m.neg[c], m.neg[c2]) not in w:
            rep.add("W5", (c, c2), "W is not negation-closed")
            break

    def first(name, it, note=""):
        for wit, ok in it:
            if not ok:
                rep.add(name, wit, note)
                return

    # W6/W7: the proofs move weak special congruences through the action
    first("W6", (((b, c, c2), (t[b][c], t[b][c2]) in w)
                 for c, c2 in sorted(w) for b in n.carrier))
    first("W7", (((b, b2, c), (t[b][c], t[b2][c]) in w)
                 for b, b2 in sorted(n.special) for c in m.carrier))
    # W8: "0 + r.0 ~ 0" in the identity-sum step of the bifunctor proof
    first("W8", itertools.chain((((b, m.zero), (t[b][m.zero], m.zero) in w) for b in n.carrier),
                                (((n.zero, c), (t[n.zero][c], c) in w) for c in m.carrier)))
    # W9/W10: the interchange congruence (c1+c)+r.(c1'+c') ~ (c1+(d(c)+r).c1')+(c+r.c')
    first("W9", (((b, b1, c), (t[n.add[b][b1]][c], t[b][t[b1][c]]) in w)
                 for b, b1 in itertools.product(n.carrier, repeat=2) for c in m.carrier))
    first("W10", (((b, c, c1), (t[b][m.add[c][c1]], m.add[t[b][c]][t[b][c1]]) in w)
                  for b in n.carrier for c, c1 in itertools.product(m.carrier, repeat=2)))


def special_lift_violation(xm: CCrossedModule):
    """First ``(c, r, count)`` where the W-lift of ``c`` over ``d(c) ~S r`` is not unique."""
    m, n, d = xm.m, xm.n, xm.boundary
    for c in m.carrier:
        for r in n.carrier:
            if not n.is_special(d[c], r):
                continue
            count = sum(1 for c2 in xm.fibres.get(r, ()) if (c, c2) in xm.weak)
            if count != 1:
                return (c, r, count)
    return None


def congruence_lift_violation(xm: CCrossedModule):
    """First ``(c, r)`` with ``d(c) ~R r`` but no ``c' ~ c`` over ``r``."""
    m, n, d = xm.m, xm.n, xm.boundary
    for c in m.carrier:
        for r in n.carrier:
            if n.related(d[c], r) and not any(m.related(c, c2) for c2 in xm.fibres.get(r, ())):
                return (c, r)
    return None


def validate_crossed_module(xm: CCrossedModule, subject="crossed module") -> ValidationReport:
    rep = ValidationReport(subject)
    _core_violations(xm, rep)
    _weak_violations(xm, rep)
    lv = special_lift_violation(xm)
    if lv:
        rep.add("special-lift", lv, f"{lv[2]} weak-special lifts")
    if rep.ok:
        rep.value = xm
    return rep


@dataclass(frozen=True)
class CsscFlags:
    connected: bool
    strict: bool
    special: bool
    connected_witness: Optional[tuple] = None
    strict_witness: Optional[tuple] = None
    special_witness: Optional[tuple] = None

    @property
    def cssc(self):
        return self.connected and self.strict and self.special

    def format(self):
        def one(name, ok, wit):
            return f"{name}={'T' if ok else 'F'}" + ("" if ok else f"({','.join(map(str, wit))})")

        return " ".join([one("connected", self.connected, self.connected_witness),
                         one("strict", self.strict, self.strict_witness),
                         one("special", self.special, self.special_witness)])


def classify(xm: CCrossedModule) -> CsscFlags:
    m, n, d, t = xm.m, xm.n, xm.boundary, xm.action.table
    conn_w = None
    for a in m.carrier:
        if not m.related(m.zero, a):
            conn_w = tuple(sorted((m.zero, a)))
            break
    strict_w = None
    for c in m.carrier:
        for b in n.carrier:
            if d[t[b][c]] != n.add[b][n.minus(d[c], b)]:
                strict_w = ("CM1", c, b)
                break
        if strict_w:
            break
    if strict_w is None:
        for a, a1 in itertools.product(m.carrier, repeat=2):
            if t[d[a]][a1] != m.add[a][m.minus(a1, a)]:
                strict_w = ("CM2", a, a1)
                break
    spec_w = congruence_lift_violation(xm)
    if spec_w is not None:
        spec_w = ("exists",) + spec_w
    else:
        lv = special_lift_violation(xm)
        if lv:
            spec_w = ("unique",) + lv
    return CsscFlags(conn_w is None, strict_w is None, spec_w is None, conn_w, strict_w, spec_w)


def lift_along_special(xm: CCrossedModule, c: int, r: int) -> int:
    """The unique ``c'`` weakly special to ``c`` with ``d(c') = r``."""
    if not xm.n.is_special(xm.boundary[c], r):
        raise PreconditionError(f"d({c}) = {xm.boundary[c]} is not specially congruent to {r}")
    cands = [c2 for c2 in xm.fibres.get(r, ()) if (c, c2) in xm.weak]
    if len(cands) != 1:
        raise InstanceCorruptionError(f"{len(cands)} weak-special lifts of {c} over {r}")
    return cands[0]


def congruence_lift(xm: CCrossedModule, c: int, r: int) -> Optional[int]:
    """Least-id ``c'`` congruent to ``c`` with ``d(c') = r``, if any."""
    for c2 in xm.fibres.get(r, ()):
        if xm.m.related(c, c2):
            return c2
    return None


def crossed_module(m, n, boundary, action, weak="equality") -> CCrossedModule:
    """Assemble and validate. ``weak`` is 'equality', 'total', 'derived' or pairs."""
    if not isinstance(action, CAction):
        action = CAction(n, m, tuple(tuple(r) for r in action))
    boundary = tuple(boundary)
    if weak == "derived":
        xm = CCrossedModule(m, n, boundary, action, equality(m.n))
        w = derived_weak_special(xm)
        if w is None:
            raise PreconditionError("derived weak-special relation is inconsistent")
        xm = replace(xm, weak=w)
    else:
        xm = CCrossedModule(m, n, boundary, action, weak_relation(m, weak))
    return validate_crossed_module(xm).raise_if_invalid()


def derived_weak_special(xm: CCrossedModule) -> Optional[frozenset]:
    """W = pairs of congruent elements whose boundaries are specially congruent.

    Returned only when that relation satisfies W1-W10 and unique lifting.
    """
    m, n, d = xm.m, xm.n, xm.boundary
    w = frozenset((c, c2) for c, c2 in m.cong if n.is_special(d[c], d[c2]))
    cand = replace(xm, weak=w)
    rep = ValidationReport("derived W")
    _weak_violations(cand, rep)
    if rep.ok and special_lift_violation(cand) is None:
        return w
    return None


def conjugation_crossed_module(g: CGroup, h: CSubgroup, weak="auto") -> CCrossedModule:
    """Inclusion of a perfect normal c-subgroup with the conjugation action.

    ``a.x`` is ``a + (x - a)`` when that lies in H (always, for perfect H);
    otherwise the least-id element of H congruent to it.
    """
    v = is_normal(g, h)
    if not v:
        raise PreconditionError(f"subgroup is not normal, witness {v.witness}")
    v = is_perfect(g, h)
    if not v:
        raise PreconditionError(f"subgroup is not perfect, witness {v.witness}")
    table = []
    for a in g.carrier:
        row = []
        for x in h.elements:
            y = g.add[a][g.minus(x, a)]
            if y not in h:
                y = min(e for e in h.elements if g.related(e, y))
            row.append(h.index(y))
        table.append(tuple(row))
    act = CAction(g, h.group, tuple(table))
    xm = CCrossedModule(h.group, g, h.elements, act, equality(h.group.n))
    if weak == "auto":
        w = derived_weak_special(xm)
        weak = w if w is not None else equality(h.group.n)
    elif weak == "derived":
        weak = derived_weak_special(xm)
        if weak is None:
            raise PreconditionError("derived weak-special relation is inconsistent")
    else:
        weak = weak_relation(h.group, weak)
    return validate_crossed_module(replace(xm, weak=weak)).raise_if_invalid()
