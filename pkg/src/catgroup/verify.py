"""Exhaustive axiom checks for finite categorical-group models.

Every check quantifies over all tuples in lexicographic id order and
reports the first failing tuple, so witnesses are the smallest ones.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Optional

from .model import CatGroupModel
from .report import Report


def _first(cases: Iterable):
    """First witness whose predicate is false, else ``None``."""
    for witness, ok in cases:
        if not ok:
            return witness
    return None


def _record(rep: Report, name, cases, detail=""):
    w = _first(cases)
    rep.add(name, w is None, w or (), detail)
    return w is None


def _composable_pairs(m: CatGroupModel):
    """``(f, g)`` with ``g ∘ f`` defined, in id order."""
    for f in m.arrows:
        for g in m.outgoing[m.d1[f]]:
            yield f, g


# --- category -----------------------------------------------------------------

def verify_category(m: CatGroupModel) -> Report:
    rep = Report("category")
    arrows, d0, d1, comp, ident = m.arrows, m.d0, m.d1, m.comp, m.ident
    _record(rep, "identity-endpoints",
            (((x,), d0[ident[x]] == x and d1[ident[x]] == x) for x in m.objects))

    def comp_domain():
        for f in arrows:
            for g in arrows:
                yield (g, f), ((g, f) in comp) == (d1[f] == d0[g])

    _record(rep, "comp-defined-iff-composable", comp_domain())
    _record(rep, "comp-endpoints",
            (((g, f), d0[h] == d0[f] and d1[h] == d1[g])
             for (g, f), h in sorted(comp.items())))
    _record(rep, "left-identity",
            (((f,), comp.get((ident[d1[f]], f)) == f) for f in arrows))
    _record(rep, "right-identity",
            (((f,), comp.get((f, ident[d0[f]])) == f) for f in arrows))

    def assoc():
        for f, g in _composable_pairs(m):
            gf = comp[(g, f)]
            for h in m.outgoing[d1[g]]:
                yield (f, g, h), comp.get((h, gf)) == comp.get((comp[(h, g)], f))

    _record(rep, "associativity", assoc())
    return rep


def verify_groupoid(m: CatGroupModel) -> Report:
    rep = Report("groupoid")
    _record(rep, "every-arrow-invertible", (((f,), inv is not None)
                                             for f, inv in enumerate(m.inverse)))
    return rep


# --- monoidal structure ----------------------------------------------------------

def _bifunctor_checks(m: CatGroupModel, rep: Report):
    add, d0, d1, ao = m.add_arr, m.d0, m.d1, m.add_obj
    pairs = list(itertools.product(m.arrows, repeat=2))
    _record(rep, "sum-source", (((f, g), d0[add[f][g]] == ao[d0[f]][d0[g]]) for f, g in pairs))
    _record(rep, "sum-target", (((f, g), d1[add[f][g]] == ao[d1[f]][d1[g]]) for f, g in pairs))
    _record(rep, "identity-sum",
            (((x, y), add[m.ident[x]][m.ident[y]] == m.ident[ao[x][y]])
             for x, y in itertools.product(m.objects, repeat=2)))
    _record(rep, "interchange", interchange_cases(m))


def interchange_cases(m: CatGroupModel):
    """``(f' ∘ f) + (g' ∘ g) == (f' + g') ∘ (f + g)`` for all composable pairs."""
    add, comp = m.add_arr, m.comp
    cps = list(_composable_pairs(m))
    for f, f2 in cps:
        left_f = comp[(f2, f)]
        for g, g2 in cps:
            lhs = add[left_f][comp[(g2, g)]]
            rhs = comp.get((add[f2][g2], add[f][g]))
            yield (f, f2, g, g2), lhs == rhs


def _naturality_checks(m: CatGroupModel, rep: Report):
    add, comp, d0, d1 = m.add_arr, m.comp, m.d0, m.d1
    z = m.ident[m.zero]

    def alpha():
        for f, g, h in itertools.product(m.arrows, repeat=3):
            src = m.assoc[(d0[f], d0[g], d0[h])]
            tgt = m.assoc[(d1[f], d1[g], d1[h])]
            lhs = comp.get((tgt, add[add[f][g]][h]))
            rhs = comp.get((add[f][add[g][h]], src))
            yield (f, g, h), lhs is not None and lhs == rhs

    _record(rep, "alpha-natural", alpha())
    _record(rep, "lambda-natural",
            (((f,), comp.get((m.lunit[d1[f]], add[z][f])) == comp.get((f, m.lunit[d0[f]])))
             for f in m.arrows))
    _record(rep, "rho-natural",
            (((f,), comp.get((m.runit[d1[f]], add[f][z])) == comp.get((f, m.runit[d0[f]])))
             for f in m.arrows))


def _pick_endpoint_checks(m: CatGroupModel, rep: Report):
    ao, zero, d0, d1 = m.add_obj, m.zero, m.d0, m.d1

    def ends(f, a, b):
        return d0[f] == a and d1[f] == b

    _record(rep, "alpha-endpoints",
            (((x, y, z), ends(m.assoc[(x, y, z)], ao[ao[x][y]][z], ao[x][ao[y][z]]))
             for x, y, z in itertools.product(m.objects, repeat=3)))
    _record(rep, "lambda-endpoints",
            (((x,), ends(m.lunit[x], ao[zero][x], x)) for x in m.objects))
    _record(rep, "rho-endpoints",
            (((x,), ends(m.runit[x], ao[x][zero], x)) for x in m.objects))


def _pentagon_triangle(m: CatGroupModel, rep: Report):
    ao, add, ident, a = m.add_obj, m.add_arr, m.ident, m.assoc

    def pentagon():
        for x, y, z, t in itertools.product(m.objects, repeat=4):
            lhs = m.then(a[(ao[x][y], z, t)], a[(x, y, ao[z][t])])
            rhs = m.then(add[a[(x, y, z)]][ident[t]], a[(x, ao[y][z], t)],
                         add[ident[x]][a[(y, z, t)]])
            yield (x, y, z, t), lhs is not None and lhs == rhs

    def triangle():
        for x, y in itertools.product(m.objects, repeat=2):
            lhs = m.then(a[(x, m.zero, y)], add[ident[x]][m.lunit[y]])
            yield (x, y), lhs is not None and lhs == add[m.runit[x]][ident[y]]

    _record(rep, "pentagon", pentagon())
    _record(rep, "triangle", triangle())


def verify_monoidal(m: CatGroupModel) -> Report:
    rep = Report("monoidal")
    _bifunctor_checks(m, rep)
    _pick_endpoint_checks(m, rep)
    _naturality_checks(m, rep)
    _pentagon_triangle(m, rep)
    return rep


# --- inverses ----------------------------------------------------------------------

def verify_categorical_group(m: CatGroupModel) -> Report:
    rep = Report("categorical group")
    ao, no, na, add, d0, d1 = m.add_obj, m.neg_obj, m.neg_arr, m.add_arr, m.d0, m.d1
    zero, comp, ident, inv = m.zero, m.comp, m.ident, m.inverse

    _record(rep, "epsilon-endpoints",
            (((x,), d0[m.linv[x]] == ao[no[x]][x] and d1[m.linv[x]] == zero) for x in m.objects))
    _record(rep, "delta-endpoints",
            (((x,), d0[m.rinv[x]] == ao[x][no[x]] and d1[m.rinv[x]] == zero) for x in m.objects))
    ok = _record(rep, "negation-endpoints",
                 (((f,), d0[na[f]] == no[d0[f]] and d1[na[f]] == no[d1[f]]) for f in m.arrows))
    _record(rep, "negation-functorial",
            itertools.chain(
                (((x,), na[ident[x]] == ident[no[x]]) for x in m.objects),
                (((f, g), comp.get((na[g], na[f])) == na[comp[(g, f)]])
                 for f, g in _composable_pairs(m))))
    # these two are the statements -f + f ≈ 0 and f + (-f) ≈ 0
    _record(rep, "epsilon-natural",
            (((f,), ok and comp.get((m.linv[d1[f]], add[na[f]][f])) == m.linv[d0[f]])
             for f in m.arrows))
    _record(rep, "delta-natural",
            (((f,), ok and comp.get((m.rinv[d1[f]], add[f][na[f]])) == m.rinv[d0[f]])
             for f in m.arrows))

    def zigzag_left():
        for x in m.objects:
            d_inv = inv[m.rinv[x]]
            r_inv = inv[m.runit[x]]
            if d_inv is None or r_inv is None:
                yield (x,), False
                continue
            lhs = m.then(add[d_inv][ident[x]], m.assoc[(x, no[x], x)], add[ident[x]][m.linv[x]])
            yield (x,), lhs is not None and lhs == m.then(m.lunit[x], r_inv)

    def zigzag_right():
        for x in m.objects:
            nx = no[x]
            d_inv, a_inv, l_inv = inv[m.rinv[x]], inv[m.assoc[(nx, x, nx)]], inv[m.lunit[nx]]
            if None in (d_inv, a_inv, l_inv):
                yield (x,), False
                continue
            lhs = m.then(add[ident[nx]][d_inv], a_inv, add[m.linv[x]][ident[nx]])
            yield (x,), lhs is not None and lhs == m.then(m.runit[nx], l_inv)

    _record(rep, "zigzag-unit", zigzag_left())
    _record(rep, "zigzag-counit", zigzag_right())
    return rep


# --- coherence ---------------------------------------------------------------------

def _picks(m: CatGroupModel):
    for k in sorted(m.assoc):
        yield ("alpha",) + k, m.assoc[k]
    for name, fam in (("lambda", m.lunit), ("rho", m.runit),
                      ("epsilon", m.linv), ("delta", m.rinv)):
        for x, f in enumerate(fam):
            yield (name, x), f


def verify_coherence(m: CatGroupModel, expected_pairs: Optional[frozenset] = None) -> Report:
    """At most one special arrow per object pair, closure of the special set, special picks.

    With ``expected_pairs`` also checks that the special arrows sit exactly
    over those object pairs.
    """
    rep = Report("coherence")
    sp = m.special
    seen: dict = {}
    dup = None
    for f in sorted(sp):
        key = (m.d0[f], m.d1[f])
        if key in seen:
            dup = (seen[key], f)
            break
        seen[key] = f
    rep.add("unique-special-per-pair", dup is None, dup or ())
    s = sorted(sp)
    _record(rep, "identities-special", (((x,), m.ident[x] in sp) for x in m.objects))
    _record(rep, "special-closed-comp",
            (((f, g), m.comp[(g, f)] in sp)
             for f in s for g in s if m.d1[f] == m.d0[g]))
    _record(rep, "special-closed-sum", (((f, g), m.add_arr[f][g] in sp) for f in s for g in s))
    _record(rep, "special-closed-inverse",
            (((f,), m.inverse[f] is not None and m.inverse[f] in sp) for f in s))
    _record(rep, "picks-special", ((w, f in sp) for w, f in _picks(m)))
    if expected_pairs is not None:
        got = frozenset((m.d0[f], m.d1[f]) for f in sp)
        diff = sorted(got ^ frozenset(expected_pairs))
        rep.add("special-pairs-match", not diff, diff[0] if diff else (),
                f"{len(sp)} special arrows")
    return rep


def check_ker_comm(m: CatGroupModel) -> Report:
    """``f + g ≈ g + f`` for ``d1 f ≈ 0`` and ``d0 g ≈ 0``, by transport along special arrows."""
    rep = Report("kernel commutation")
    between = m.special_between
    zero = m.zero
    ker1 = [f for f in m.arrows if (m.d1[f], zero) in between]
    ker0 = [g for g in m.arrows if (m.d0[g], zero) in between]

    def cases():
        for f in ker1:
            for g in ker0:
                fg, gf = m.add_arr[f][g], m.add_arr[g][f]
                t0 = between.get((m.d0[fg], m.d0[gf]))
                t1 = between.get((m.d1[fg], m.d1[gf]))
                ok = (t0 is not None and t1 is not None
                      and m.comp.get((t1, fg)) == m.comp.get((gf, t0)))
                yield (f, g), ok

    _record(rep, "ker-commute", cases(), f"{len(ker1)}x{len(ker0)} pairs")
    return rep


def verify_all(m: CatGroupModel, expected_pairs: Optional[frozenset] = None,
               title="verify") -> Report:
    rep = Report(title)
    parts = (verify_category(m), verify_groupoid(m), verify_monoidal(m),
             verify_categorical_group(m), verify_coherence(m, expected_pairs), check_ker_comm(m))
    for part in parts:
        for c in part.checks:
            rep.checks.append(type(c)(f"{part.title}/{c.name}", c.ok, c.witness, c.detail))
    return rep
