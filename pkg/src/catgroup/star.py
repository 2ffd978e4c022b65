"""From categorical groups back to crossed modules, and the round trip.

A classical crossed module gives a strict categorical group (its
group-groupoid). Arrows out of the zero object, with the boundary map given
by the target, form a crossed module of c-groups again. Building the
categorical group of that crossed module should give back the group-groupoid
up to isomorphism; ``round_trip`` checks this on concrete tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .cgroup import CGroup, validate_cgroup
from .construct import build_categorical_group
from .crossed import (
    CAction,
    CCrossedModule,
    CsscFlags,
    classify,
    validate_action,
    validate_crossed_module,
)
from .errors import PreconditionError, StageError, ValidationError
from .model import CatGroupModel
from .verify import (
    verify_categorical_group,
    verify_category,
    verify_coherence,
    verify_groupoid,
    verify_monoidal,
)


# --- classical crossed modules ----------------------------------------------------

@dataclass(frozen=True)
class ClassicalCrossedModule:
    """Plain group tables; identity is id 0 in both groups."""

    m_table: tuple
    n_table: tuple
    boundary: tuple
    action: tuple  # action[r][c] = r . c
    m_names: Optional[tuple] = field(default=None, compare=False)
    n_names: Optional[tuple] = field(default=None, compare=False)


def _group_problem(t, label):
    n = len(t)
    rng = range(n)
    if any(len(row) != n or any(not 0 <= v < n for v in row) for row in t):
        return f"{label}: table is not square over 0..{n - 1}"
    for a in rng:
        if t[0][a] != a or t[a][0] != a:
            return f"{label}: 0 is not an identity at {a}"
        if not any(t[a][x] == 0 for x in rng):
            return f"{label}: {a} has no inverse"
    for a, b, c in itertools.product(rng, repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return f"{label}: associativity fails at {(a, b, c)}"
    return None


def _inverses(t):
    return tuple(next(x for x in range(len(t)) if t[a][x] == 0) for a in range(len(t)))


def classical_problems(x: ClassicalCrossedModule) -> list[str]:
    """Axiom failures of a classical crossed module, checked directly on the tables."""
    out = [p for p in (_group_problem(x.m_table, "M"), _group_problem(x.n_table, "N")) if p]
    if out:
        return out
    tm, tn, d, act = x.m_table, x.n_table, x.boundary, x.action
    nm, nn = len(tm), len(tn)
    im, inn = _inverses(tm), _inverses(tn)
    if len(d) != nm or any(not 0 <= v < nn for v in d):
        return ["boundary has the wrong shape"]
    if len(act) != nn or any(len(row) != nm for row in act):
        return ["action table has the wrong shape"]
    for a, b in itertools.product(range(nm), repeat=2):
        if d[tm[a][b]] != tn[d[a]][d[b]]:
            out.append(f"boundary is not a homomorphism at {(a, b)}")
            break
    for r in range(nn):
        if sorted(act[r]) != list(range(nm)):
            out.append(f"row {r} of the action is not a bijection")
            break
        if any(act[r][tm[a][b]] != tm[act[r][a]][act[r][b]]
               for a, b in itertools.product(range(nm), repeat=2)):
            out.append(f"{r} does not act by a homomorphism")
            break
    if any(act[0][c] != c for c in range(nm)):
        out.append("identity does not act trivially")
    for r, s in itertools.product(range(nn), repeat=2):
        if any(act[tn[r][s]][c] != act[r][act[s][c]] for c in range(nm)):
            out.append(f"action is not compatible with the product at {(r, s)}")
            break
    for r, c in itertools.product(range(nn), range(nm)):
        if d[act[r][c]] != tn[tn[r][d[c]]][inn[r]]:
            out.append(f"equivariance fails at {(r, c)}")
            break
    for a, b in itertools.product(range(nm), repeat=2):
        if act[d[a]][b] != tm[tm[a][b]][im[a]]:
            out.append(f"Peiffer identity fails at {(a, b)}")
            break
    return out


def classical_core(xm: CCrossedModule) -> ClassicalCrossedModule:
    """Forget the relations of a crossed module whose tables are honest groups."""
    m, n = xm.m, xm.n
    if m.zero != 0 or n.zero != 0:
        raise PreconditionError("classical core needs zero at id 0")
    x = ClassicalCrossedModule(m.add, n.add, xm.boundary, xm.action.table,
                               m.names, n.names)
    probs = classical_problems(x)
    if probs:
        raise PreconditionError("; ".join(probs))
    return x


def group_groupoid_from_classical(x: ClassicalCrossedModule) -> CatGroupModel:
    """Arrows ``(r, c): r -> d(c) + r`` with id ``r*|M| + c``."""
    probs = classical_problems(x)
    if probs:
        raise PreconditionError("; ".join(probs))
    tm, tn, d, act = x.m_table, x.n_table, x.boundary, x.action
    nm, nn = len(tm), len(tn)
    im, inn = _inverses(tm), _inverses(tn)

    def aid(r, c):
        return r * nm + c

    pairs = [(r, c) for r in range(nn) for c in range(nm)]
    d0 = tuple(r for r, _ in pairs)
    d1 = tuple(tn[d[c]][r] for r, c in pairs)
    ident = tuple(aid(r, 0) for r in range(nn))
    comp = {}
    for r, c in pairs:
        mid = tn[d[c]][r]
        for c2 in range(nm):
            comp[(aid(mid, c2), aid(r, c))] = aid(r, tm[c2][c])
    add_arr = tuple(tuple(aid(tn[r][r2], tm[c][act[r][c2]]) for r2, c2 in pairs)
                    for r, c in pairs)
    neg_arr = tuple(aid(inn[r], act[inn[r]][im[c]]) for r, c in pairs)
    assoc = {(a, b, c): ident[tn[tn[a][b]][c]]
             for a, b, c in itertools.product(range(nn), repeat=3)}
    objs = range(nn)
    names = x.n_names or tuple(map(str, objs))
    mnames = x.m_names or tuple(map(str, range(nm)))
    return CatGroupModel(
        n_objects=nn, d0=d0, d1=d1, ident=ident, comp=comp,
        add_obj=tuple(tuple(row) for row in tn), add_arr=add_arr,
        neg_obj=inn, neg_arr=neg_arr, zero=0, special=frozenset(ident), assoc=assoc,
        lunit=ident, runit=ident, linv=(ident[0],) * nn, rinv=(ident[0],) * nn,
        object_names=tuple(names),
        arrow_names=tuple(f"({names[r]},{mnames[c]})" for r, c in pairs))


# --- Star 0 --------------------------------------------------------------------------

def _require_catgroup(c: CatGroupModel):
    for rep in (verify_category(c), verify_groupoid(c), verify_monoidal(c),
                verify_categorical_group(c), verify_coherence(c)):
        if not rep.ok:
            bad = next(ch for ch in rep.checks if not ch.ok)
            raise PreconditionError(f"not a coherent categorical group: {rep.title} {bad.line()}")


def isomorphic_arrows(c: CatGroupModel, f, g) -> bool:
    """Search for ``theta0, theta1`` with ``theta1 ∘ f == g ∘ theta0``."""
    for t0 in c.hom(c.d0[f], c.d0[g]):
        right = c.comp[(g, t0)]
        for t1 in c.hom(c.d1[f], c.d1[g]):
            if c.comp[(t1, f)] == right:
                return True
    return False


def weakly_special_arrows(c: CatGroupModel, f, g) -> bool:
    """Like ``isomorphic_arrows`` with both ``theta`` special."""
    t0 = c.special_between.get((c.d0[f], c.d0[g]))
    t1 = c.special_between.get((c.d1[f], c.d1[g]))
    return t0 is not None and t1 is not None and c.comp[(t1, f)] == c.comp[(g, t0)]


def _special(c: CatGroupModel, a, b):
    f = c.special_between.get((a, b))
    if f is None:
        raise PreconditionError(f"no special arrow {c.obj_name(a)} -> {c.obj_name(b)}")
    return f


@dataclass(frozen=True)
class StarZero:
    """Arrows out of zero as a c-group; ``arrows[i]`` is the arrow behind element ``i``."""

    group: CGroup
    arrows: tuple

    def index(self, f):
        return self.arrows.index(f)


def star_zero(c: CatGroupModel, check=True) -> StarZero:
    if check:
        _require_catgroup(c)
    z = c.zero
    arrows = tuple(f for f in c.arrows if c.d0[f] == z)
    idx = {f: i for i, f in enumerate(arrows)}
    gamma = _special(c, z, c.add_obj[z][z])
    gamma_neg = _special(c, z, c.neg_obj[z])
    add = tuple(tuple(idx[c.comp[(c.add_arr[f][g], gamma)]] for g in arrows) for f in arrows)
    neg = tuple(idx[c.comp[(c.neg_arr[f], gamma_neg)]] for f in arrows)
    cong = frozenset((i, j) for i, f in enumerate(arrows) for j, g in enumerate(arrows)
                     if isomorphic_arrows(c, f, g))
    names = tuple(c.arrow_name(f) for f in arrows)
    grp = validate_cgroup(add, idx[c.ident[z]], neg, cong, None, names,
                          "star zero").raise_if_invalid()
    return StarZero(grp, arrows)


def objects_cgroup(c: CatGroupModel) -> CGroup:
    """Objects with congruence "some arrow joins them"."""
    cong = frozenset((a, b) for a in c.objects for b in c.objects if c.hom(a, b))
    names = tuple(c.obj_name(x) for x in c.objects)
    return validate_cgroup(c.add_obj, c.zero, c.neg_obj, cong, None, names,
                           "objects").raise_if_invalid()


def arrows_cgroup(c: CatGroupModel) -> CGroup:
    """All arrows with congruence "isomorphic as arrows"."""
    cong = frozenset((f, g) for f in c.arrows for g in c.arrows if isomorphic_arrows(c, f, g))
    return validate_cgroup(c.add_arr, c.ident[c.zero], c.neg_arr, cong, None,
                           tuple(c.arrow_name(f) for f in c.arrows), "arrows").raise_if_invalid()


def _conjugate(c: CatGroupModel, r, f):
    """``i(r) + (f + (-i(r)))``."""
    ir = c.ident[r]
    return c.add_arr[ir][c.add_arr[f][c.neg_arr[ir]]]


def star_action(c: CatGroupModel, sz: Optional[StarZero] = None,
                objects: Optional[CGroup] = None) -> CAction:
    sz = sz or star_zero(c)
    objects = objects or objects_cgroup(c)
    z = c.zero
    idx = {f: i for i, f in enumerate(sz.arrows)}
    table = []
    for r in c.objects:
        gamma = _special(c, z, c.add_obj[r][c.add_obj[z][c.neg_obj[r]]])
        table.append(tuple(idx[c.comp[(_conjugate(c, r, f), gamma)]] for f in sz.arrows))
    act = CAction(objects, sz.group, tuple(table))
    return validate_action(act, "star action").raise_if_invalid()


def star_crossed_module(c: CatGroupModel) -> CCrossedModule:
    """Arrows out of zero over the objects, boundary = target, weak-special = special squares."""
    _require_catgroup(c)
    sz = star_zero(c, check=False)
    objs = objects_cgroup(c)
    act = star_action(c, sz, objs)
    boundary = tuple(c.d1[f] for f in sz.arrows)
    weak = frozenset((i, j) for i, f in enumerate(sz.arrows) for j, g in enumerate(sz.arrows)
                     if weakly_special_arrows(c, f, g))
    xm = CCrossedModule(sz.group, objs, boundary, act, weak)
    return validate_crossed_module(xm, "star crossed module").raise_if_invalid()


@dataclass(frozen=True)
class KernelAction:
    action: CAction
    arrows: tuple


def cker_action(c: CatGroupModel) -> KernelAction:
    """``r . f = i(r) + (f - i(r))`` on arrows whose source is congruent to zero."""
    _require_catgroup(c)
    objs = objects_cgroup(c)
    z = c.zero
    arrows = tuple(f for f in c.arrows if objs.related(c.d0[f], z))
    idx = {f: i for i, f in enumerate(arrows)}
    add = tuple(tuple(idx[c.add_arr[f][g]] for g in arrows) for f in arrows)
    neg = tuple(idx[c.neg_arr[f]] for f in arrows)
    cong = frozenset((i, j) for i, f in enumerate(arrows) for j, g in enumerate(arrows)
                     if isomorphic_arrows(c, f, g))
    kgrp = validate_cgroup(add, idx[c.ident[z]], neg, cong, None,
                           tuple(c.arrow_name(f) for f in arrows), "ker d0").raise_if_invalid()
    table = tuple(tuple(idx[_conjugate(c, r, f)] for f in arrows) for r in c.objects)
    act = CAction(objs, kgrp, table)
    return KernelAction(validate_action(act, "kernel action").raise_if_invalid(), arrows)


# --- model isomorphism -------------------------------------------------------------

def _arrow_order(c: CatGroupModel, f, cap=64):
    """Least k with the k-fold sum of f an identity (0 if none up to ``cap``)."""
    acc = f
    idents = set(c.ident)
    for k in range(1, cap + 1):
        if acc in idents:
            return k
        acc = c.add_arr[acc][f]
    return 0


def _invariant(c: CatGroupModel, f):
    ident = c.ident[c.d0[f]] == f
    return (ident, c.d0[f] == c.d1[f], _arrow_order(c, f),
            len(c.hom(c.d0[f], c.d1[f])), len(c.outgoing[c.d0[f]]))


def find_model_isomorphism(a: CatGroupModel, b: CatGroupModel) -> Optional[tuple]:
    """Arrow bijection (tuple ``phi[f]``) preserving all structure maps; ``None`` if none.

    Objects travel with their identity arrows. Each choice is closed under
    sums, composites and negatives before the next branch point.
    """
    if (a.n_objects, a.n_arrows) != (b.n_objects, b.n_arrows):
        return None
    inv_a = [_invariant(a, f) for f in a.arrows]
    inv_b = [_invariant(b, f) for f in b.arrows]
    if sorted(inv_a) != sorted(inv_b):
        return None

    def close(phi, back, todo):
        while todo:
            f, g = todo.pop()
            if f in phi:
                if phi[f] != g:
                    return False
                continue
            if g in back or inv_a[f] != inv_b[g]:
                return False
            phi[f] = g
            back[g] = f
            todo.append((a.ident[a.d0[f]], b.ident[b.d0[g]]))
            todo.append((a.ident[a.d1[f]], b.ident[b.d1[g]]))
            todo.append((a.neg_arr[f], b.neg_arr[g]))
            for f2, g2 in list(phi.items()):
                todo.append((a.add_arr[f][f2], b.add_arr[g][g2]))
                todo.append((a.add_arr[f2][f], b.add_arr[g2][g]))
                for x, y, u, v in ((f, f2, g, g2), (f2, f, g2, g)):
                    ca, cb = a.comp.get((y, x)), b.comp.get((v, u))
                    if (ca is None) != (cb is None):
                        return False
                    if ca is not None:
                        todo.append((ca, cb))
        return True

    def search(phi, back):
        free = [f for f in a.arrows if f not in phi]
        if not free:
            return phi
        f = free[0]
        for g in b.arrows:
            if g in back or inv_b[g] != inv_a[f]:
                continue
            p2, b2 = dict(phi), dict(back)
            if close(p2, b2, [(f, g)]):
                got = search(p2, b2)
                if got is not None:
                    return got
        return None

    phi, back = {}, {}
    if not close(phi, back, [(a.ident[a.zero], b.ident[b.zero])]):
        return None
    got = search(phi, back)
    if got is None:
        return None
    out = tuple(got[f] for f in a.arrows)
    return out if is_model_isomorphism(a, b, out) else None


def object_map(a: CatGroupModel, b: CatGroupModel, phi) -> tuple:
    return tuple(b.d0[phi[a.ident[x]]] for x in a.objects)


def is_model_isomorphism(a: CatGroupModel, b: CatGroupModel, phi) -> bool:
    if sorted(phi) != list(b.arrows):
        return False
    ob = object_map(a, b, phi)
    if sorted(ob) != list(b.objects) or ob[a.zero] != b.zero:
        return False
    for f in a.arrows:
        if b.d0[phi[f]] != ob[a.d0[f]] or b.d1[phi[f]] != ob[a.d1[f]]:
            return False
        if b.neg_arr[phi[f]] != phi[a.neg_arr[f]]:
            return False
        if any(b.add_arr[phi[f]][phi[g]] != phi[a.add_arr[f][g]] for g in a.arrows):
            return False
    if any(b.ident[ob[x]] != phi[a.ident[x]] or b.neg_obj[ob[x]] != ob[a.neg_obj[x]]
           for x in a.objects):
        return False
    if any(b.add_obj[ob[x]][ob[y]] != ob[a.add_obj[x][y]]
           for x, y in itertools.product(a.objects, repeat=2)):
        return False
    return all(b.comp.get((phi[g], phi[f])) == phi[h] for (g, f), h in a.comp.items())


# --- round trip ----------------------------------------------------------------------

@dataclass
class IsoReport:
    found: bool
    arrows_built: int
    arrows_expected: int
    objects: int
    flags: Optional[CsscFlags] = None
    object_map: Optional[tuple] = None
    arrow_map: Optional[tuple] = None
    source: Optional[CatGroupModel] = field(default=None, repr=False)
    target: Optional[CatGroupModel] = field(default=None, repr=False)

    @property
    def ok(self):
        return self.found and self.arrows_built == self.arrows_expected

    def format(self):
        lines = [f"isomorphism {'found' if self.found else 'not found'}",
                 f"arrows {self.arrows_built} expected {self.arrows_expected}"
                 f" ({'match' if self.arrows_built == self.arrows_expected else 'MISMATCH'})",
                 f"objects {self.objects}"]
        if self.flags is not None:
            lines.append(f"star classification {self.flags.format()}")
        if self.found and self.source is not None and self.target is not None:
            s, t = self.source, self.target
            lines.append("object map")
            lines += [f"  {s.obj_name(x)} -> {t.obj_name(y)}" for x, y in enumerate(self.object_map)]
            lines.append("arrow map")
            lines += [f"  {s.arrow_name(f)} -> {t.arrow_name(g)}" for f, g in enumerate(self.arrow_map)]
        return "\n".join(lines)


def round_trip(x: ClassicalCrossedModule) -> IsoReport:
    """group-groupoid -> star crossed module -> categorical group, compared with the start."""
    try:
        c = group_groupoid_from_classical(x)
    except PreconditionError as e:
        raise StageError("group-groupoid", str(e)) from e
    try:
        xs = star_crossed_module(c)
    except (PreconditionError, ValidationError) as e:
        raise StageError("star", str(e)) from e
    flags = classify(xs)
    if not flags.cssc:
        raise StageError("star", f"star crossed module is not cssc: {flags.format()}")
    g = build_categorical_group(xs)
    phi = find_model_isomorphism(c, g)
    expected = len(x.n_table) * len(x.m_table)
    return IsoReport(phi is not None, g.n_arrows, expected, g.n_objects, flags,
                     object_map(c, g, phi) if phi else None, phi, c, g)
