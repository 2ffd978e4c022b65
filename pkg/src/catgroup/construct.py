"""Arrows of the categorical group built from a cssc-crossed module.

An arrow is stored in normal form ``(src, payload, tgt)`` where the payload is
the least-id element of a weak-special class of M and
``d(payload) + src`` is specially congruent to ``tgt`` in N. Special
isomorphisms of N disappear into the endpoints: between two objects there is
at most one of them, so only the endpoints carry information.

The same operations are also given on unnormalised raw arrows (a special
isomorphism, or a generating arrow ``(r, c)`` flanked by special
isomorphisms) so that the normal form can be checked against the direct
definitions.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Union

from .cgroup import SpecialCert, certify_special, replay_cert
from .crossed import CCrossedModule, congruence_lift, lift_along_special
from .errors import (
    ArrowCapExceeded,
    EndpointMismatch,
    InstanceCorruptionError,
    InvalidArrowError,
    PreconditionError,
)
from .model import CatGroupModel

DEFAULT_ARROW_CAP = 10_000


@dataclass(frozen=True, order=True)
class CanonicalArrow:
    src: int
    payload: int
    tgt: int

    def format(self, xm: Optional[CCrossedModule] = None) -> str:
        if xm is None:
            return f"{self.src} -[{self.payload}]-> {self.tgt}"
        n, m = xm.n, xm.m
        return f"{n.name(self.src)} -[{m.name(self.payload)}]-> {n.name(self.tgt)}"

    def __str__(self):
        return self.format()


def _valid(xm, src, c, tgt):
    n = xm.n
    return n.is_special(n.add[xm.boundary[c]][src], tgt)


def _arrow(xm, src, c, tgt):
    if not _valid(xm, src, c, tgt):
        # every operation below re-establishes the invariant on a valid instance
        raise InstanceCorruptionError(
            f"d({c}) + {src} is not specially congruent to {tgt}")
    return CanonicalArrow(src, xm.weak_rep(c), tgt)


def mk_arrow(xm: CCrossedModule, src: int, c: int, tgt: int) -> CanonicalArrow:
    if not _valid(xm, src, c, tgt):
        raise InvalidArrowError(
            f"d({xm.m.name(c)}) + {xm.n.name(src)} is not specially congruent "
            f"to {xm.n.name(tgt)}")
    return CanonicalArrow(src, xm.weak_rep(c), tgt)


def compose(xm: CCrossedModule, g2: CanonicalArrow, g1: CanonicalArrow) -> CanonicalArrow:
    """``g2 ∘ g1``."""
    if g1.tgt != g2.src:
        raise EndpointMismatch(f"cannot compose {g2} after {g1}")
    return _arrow(xm, g1.src, xm.m.add[g2.payload][g1.payload], g2.tgt)


def identity_arrow(xm: CCrossedModule, r: int) -> CanonicalArrow:
    return _arrow(xm, r, xm.m.zero, r)


def inverse_arrow(xm: CCrossedModule, f: CanonicalArrow) -> CanonicalArrow:
    return _arrow(xm, f.tgt, xm.m.neg[f.payload], f.src)


def add_arrows(xm: CCrossedModule, f1: CanonicalArrow, f2: CanonicalArrow) -> CanonicalArrow:
    m, n = xm.m, xm.n
    c = m.add[f1.payload][xm.act(f1.src, f2.payload)]
    return _arrow(xm, n.add[f1.src][f2.src], c, n.add[f1.tgt][f2.tgt])


def zero_arrow(xm: CCrossedModule) -> CanonicalArrow:
    return identity_arrow(xm, xm.n.zero)


def opposite_arrow(xm: CCrossedModule, f: CanonicalArrow) -> CanonicalArrow:
    m, n = xm.m, xm.n
    ns = n.neg[f.src]
    return _arrow(xm, ns, xm.act(ns, m.neg[f.payload]), n.neg[f.tgt])


def special_arrow(xm: CCrossedModule, a: int, b: int) -> CanonicalArrow:
    if not xm.n.is_special(a, b):
        raise InvalidArrowError(f"no special isomorphism {a} -> {b}")
    return normalize(xm, SpecialIso(a, b))


def congruence_square(xm: CCrossedModule, f: CanonicalArrow, f2: CanonicalArrow):
    """Arrows ``phi: f.src -> f2.src`` and ``theta: f.tgt -> f2.tgt`` with
    ``theta ∘ f == f2 ∘ phi``.

    ``phi`` uses the weak-special lift over ``f2.src - f.src`` when the sources
    are specially congruent and the least congruence lift otherwise; ``theta``
    is the first lift of ``f2.tgt - f.tgt`` (in id order) closing the square.
    """
    m, n = xm.m, xm.n
    r, r2 = f.src, f2.src
    if not n.related(r, r2):
        raise PreconditionError(f"sources {r} and {r2} are not congruent")
    if not m.related(f.payload, f2.payload):
        raise PreconditionError("payloads are not congruent; crossed module is not connected")

    def lift_of_zero(a, b):
        diff = n.minus(b, a)
        if n.is_special(a, b):
            return lift_along_special(xm, m.zero, diff)
        c = congruence_lift(xm, m.zero, diff)
        if c is None:
            raise InstanceCorruptionError(f"no lift of 0 over {diff}; crossed module is not special")
        return c

    phi = _arrow(xm, r, lift_of_zero(r, r2), r2)
    target = f2.tgt
    diff = n.minus(target, f.tgt)
    first = lift_of_zero(f.tgt, target)
    cands = [first] + [c for c in xm.fibres.get(diff, ()) if c != first]
    want = compose(xm, f2, phi)
    for c in cands:
        if not _valid(xm, f.tgt, c, target):
            continue
        theta = _arrow(xm, f.tgt, c, target)
        if compose(xm, theta, f) == want:
            return phi, theta
    raise InstanceCorruptionError("no arrow closes the congruence square")


# --- raw arrows --------------------------------------------------------------

@dataclass(frozen=True)
class SpecialIso:
    src: int
    tgt: int


@dataclass(frozen=True)
class Triple:
    """``beta (r, c) alpha`` with ``alpha: alpha_src -> r`` and ``beta: d(c)+r -> beta_tgt``."""

    alpha_src: int
    r: int
    c: int
    beta_tgt: int

    @property
    def src(self):
        return self.alpha_src

    @property
    def tgt(self):
        return self.beta_tgt


RawArrow = Union[SpecialIso, Triple]


def check_raw(xm: CCrossedModule, raw: RawArrow):
    n = xm.n
    if isinstance(raw, SpecialIso):
        if not n.is_special(raw.src, raw.tgt):
            raise InvalidArrowError(f"{raw} is not a special isomorphism")
    else:
        if not n.is_special(raw.alpha_src, raw.r):
            raise InvalidArrowError(f"{raw}: alpha is not special")
        if not n.is_special(n.add[xm.boundary[raw.c]][raw.r], raw.beta_tgt):
            raise InvalidArrowError(f"{raw}: beta is not special")
    return raw


def identify(xm: CCrossedModule, raw: SpecialIso) -> Triple:
    """Rewrite a special isomorphism ``a -> b`` as ``eps (a, c)`` with ``c`` the lift of 0 over ``b - a``."""
    n = xm.n
    c = lift_along_special(xm, xm.m.zero, n.minus(raw.tgt, raw.src))
    return check_raw(xm, Triple(raw.src, raw.src, c, raw.tgt))


def normalize(xm: CCrossedModule, raw: RawArrow) -> CanonicalArrow:
    check_raw(xm, raw)
    if isinstance(raw, SpecialIso):
        raw = identify(xm, raw)
    return _arrow(xm, raw.alpha_src, raw.c, raw.beta_tgt)


def raw_identity(xm: CCrossedModule, r: int) -> Triple:
    return check_raw(xm, Triple(r, r, xm.m.zero, r))


def raw_compose(xm: CCrossedModule, g2: RawArrow, g1: RawArrow) -> RawArrow:
    """``g2 ∘ g1`` by cases (a), (b), (c) of the composition rule."""
    if g1.tgt != g2.src:
        raise EndpointMismatch("raw arrows are not composable")
    if isinstance(g1, SpecialIso) and isinstance(g2, SpecialIso):
        out = SpecialIso(g1.src, g2.tgt)
    elif isinstance(g2, SpecialIso):
        out = Triple(g1.alpha_src, g1.r, g1.c, g2.tgt)
    elif isinstance(g1, SpecialIso):
        out = Triple(g1.src, g2.r, g2.c, g2.beta_tgt)
    else:
        out = Triple(g1.alpha_src, g1.r, xm.m.add[g2.c][g1.c], g2.beta_tgt)
    return check_raw(xm, out)


def compose_theta_cert(xm: CCrossedModule, g2: Triple, g1: Triple) -> SpecialCert:
    """Certificate for the special isomorphism ``theta`` in ``g2 ∘ g1 = theta (r, c2 + c1) alpha``.

    Chain: ``(d c2 + d c1) + r ~ d c2 + (d c1 + r) ~ d c2 + r2 ~ d c2 + r' ~ r''``.
    """
    n, d = xm.n, xm.boundary
    a, b, r = d[g2.c], d[g1.c], g1.r
    steps: list = [("assoc", a, b, r), ("identity", a)]

    def splice(x, y):
        cert = certify_special(n, x, y)
        if cert is None:
            raise InstanceCorruptionError(f"({x},{y}) is not special")
        off = len(steps)
        for st in cert.steps:
            if st[0] in ("symmetry",):
                steps.append((st[0], st[1] + off))
            elif st[0] in ("transitivity", "sum"):
                steps.append((st[0], st[1] + off, st[2] + off))
            else:
                steps.append(st)
        return len(steps) - 1

    beta1 = splice(n.add[b][r], g1.beta_tgt)
    steps.append(("sum", 1, beta1))
    s1 = len(steps) - 1
    alpha2 = splice(g1.beta_tgt, g2.r)
    steps.append(("sum", 1, alpha2))
    steps.append(("transitivity", s1, len(steps) - 1))
    s2 = len(steps) - 1
    steps.append(("transitivity", 0, s2))
    s3 = len(steps) - 1
    beta2 = splice(n.add[a][g2.r], g2.beta_tgt)
    steps.append(("transitivity", s3, beta2))
    claim = (n.add[n.add[a][b]][r], g2.beta_tgt)
    cert = SpecialCert(tuple(steps), claim)
    replay_cert(n, cert)
    return cert


def raw_inverse(xm: CCrossedModule, g: RawArrow) -> RawArrow:
    if isinstance(g, SpecialIso):
        return check_raw(xm, SpecialIso(g.tgt, g.src))
    n, m = xm.n, xm.m
    mid = n.add[xm.boundary[g.c]][g.r]
    return check_raw(xm, Triple(g.beta_tgt, mid, m.neg[g.c], g.alpha_src))


def raw_add(xm: CCrossedModule, g1: RawArrow, g2: RawArrow) -> RawArrow:
    """Sum of raw arrows; a special isomorphism summand is first identified."""
    if isinstance(g1, SpecialIso):
        g1 = identify(xm, g1)
    if isinstance(g2, SpecialIso):
        g2 = identify(xm, g2)
    n, m = xm.n, xm.m
    c = m.add[g1.c][xm.act(g1.r, g2.c)]
    return check_raw(xm, Triple(n.add[g1.alpha_src][g2.alpha_src], n.add[g1.r][g2.r], c,
                                n.add[g1.beta_tgt][g2.beta_tgt]))


def raw_add_specials(xm: CCrossedModule, g1: SpecialIso, g2: SpecialIso) -> SpecialIso:
    """The sum of two special isomorphisms as a special isomorphism."""
    n = xm.n
    return check_raw(xm, SpecialIso(n.add[g1.src][g2.src], n.add[g1.tgt][g2.tgt]))


def raw_opposite(xm: CCrossedModule, g: RawArrow) -> RawArrow:
    n, m = xm.n, xm.m
    if isinstance(g, SpecialIso):
        return check_raw(xm, SpecialIso(n.neg[g.src], n.neg[g.tgt]))
    nr = n.neg[g.r]
    return check_raw(xm, Triple(n.neg[g.alpha_src], nr, xm.act(nr, m.neg[g.c]),
                                n.neg[g.beta_tgt]))


# --- enumeration -------------------------------------------------------------

def arrow_cap():
    return int(os.environ.get("CATGROUP_ARROW_CAP", DEFAULT_ARROW_CAP))


def enumerate_arrows(xm: CCrossedModule, cap: Optional[int] = None) -> list[CanonicalArrow]:
    cap = arrow_cap() if cap is None else cap
    n = xm.n
    out = []
    for a in n.carrier:
        for c in xm.weak_classes:
            start = n.add[xm.boundary[c]][a]
            for b in n.carrier:
                if n.is_special(start, b):
                    out.append(CanonicalArrow(a, c, b))
                    if len(out) > cap:
                        raise ArrowCapExceeded(f"more than {cap} arrows")
    return out


def build_categorical_group(xm: CCrossedModule, cap: Optional[int] = None) -> CatGroupModel:
    arrows = enumerate_arrows(xm, cap)
    index = {f: i for i, f in enumerate(arrows)}
    n = xm.n
    d0 = tuple(f.src for f in arrows)
    d1 = tuple(f.tgt for f in arrows)
    ident = tuple(index[identity_arrow(xm, r)] for r in n.carrier)
    by_src: dict[int, list[int]] = {}
    for i, f in enumerate(arrows):
        by_src.setdefault(f.src, []).append(i)
    comp = {}
    for i, f in enumerate(arrows):
        for j in by_src.get(f.tgt, ()):
            comp[(j, i)] = index[compose(xm, arrows[j], f)]
    add_arr = tuple(tuple(index[add_arrows(xm, f, g)] for g in arrows) for f in arrows)
    neg_arr = tuple(index[opposite_arrow(xm, f)] for f in arrows)
    zero_payload = xm.weak_rep(xm.m.zero)
    special = frozenset(i for i, f in enumerate(arrows) if f.payload == zero_payload)
    sp = {(arrows[i].src, arrows[i].tgt): i for i in special}

    add = n.add
    assoc = {}
    for x in n.carrier:
        for y in n.carrier:
            for z in n.carrier:
                assoc[(x, y, z)] = sp[(add[add[x][y]][z], add[x][add[y][z]])]
    zero = n.zero
    lunit = tuple(sp[(add[zero][x], x)] for x in n.carrier)
    runit = tuple(sp[(add[x][zero], x)] for x in n.carrier)
    linv = tuple(sp[(add[n.neg[x]][x], zero)] for x in n.carrier)
    rinv = tuple(sp[(add[x][n.neg[x]], zero)] for x in n.carrier)
    return CatGroupModel(
        n_objects=n.n, d0=d0, d1=d1, ident=ident, comp=comp,
        add_obj=n.add, add_arr=add_arr, neg_obj=n.neg, neg_arr=neg_arr, zero=zero,
        special=special, assoc=assoc, lunit=lunit, runit=runit, linv=linv, rinv=rinv,
        object_names=tuple(n.name(x) for x in n.carrier),
        arrow_names=tuple(f.format(xm) for f in arrows))
