"""Finite groups up to congruence relation (c-groups).

Elements are dense integer ids ``0..n-1``. Relations are frozensets of ordered
pairs; the special relation S is the least sum-closed equivalence containing
every axiom instance, so "being special" is a property of a pair and the pair
itself is the unique special witness between its endpoints.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import CertificateError, NotACSubgroup, StructuralError
from .report import ValidationReport

Pair = tuple[int, int]

AXIOM_KINDS = ("lunit", "runit", "linv", "rinv", "assoc")


# --- relation helpers -------------------------------------------------------

def equality(n: int) -> frozenset:
    return frozenset((a, a) for a in range(n))


def total(n: int) -> frozenset:
    return frozenset(itertools.product(range(n), repeat=2))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def labels(self):
        # union keeps the smaller id as root, so the root is the least class member
        return tuple(self.find(x) for x in range(len(self.parent)))


def equivalence_labels(n: int, pairs: Iterable[Pair]) -> tuple[int, ...]:
    """Label each element by the least id of its class in the generated equivalence."""
    uf = _UnionFind(n)
    for a, b in pairs:
        uf.union(a, b)
    return uf.labels()


def pairs_from_labels(labels: Sequence[int]) -> frozenset:
    classes: dict[int, list[int]] = {}
    for x, l in enumerate(labels):
        classes.setdefault(l, []).append(x)
    return frozenset(p for c in classes.values() for p in itertools.product(c, repeat=2))


def equivalence_closure(n: int, pairs: Iterable[Pair]) -> frozenset:
    return pairs_from_labels(equivalence_labels(n, pairs))


def classes_from_labels(labels: Sequence[int]) -> list[tuple[int, ...]]:
    classes: dict[int, list[int]] = {}
    for x, l in enumerate(labels):
        classes.setdefault(l, []).append(x)
    return [tuple(c) for _, c in sorted(classes.items())]


def relation_from_spec(n: int, spec) -> frozenset:
    """``'equality'``, ``'total'``, or an iterable of generating pairs."""
    if spec == "equality":
        return equality(n)
    if spec == "total":
        return total(n)
    return equivalence_closure(n, spec)


# --- the c-group type -------------------------------------------------------

@dataclass(frozen=True)
class CGroup:
    add: tuple
    zero: int
    neg: tuple
    cong: frozenset
    special: frozenset
    names: Optional[tuple] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.add)

    @property
    def carrier(self) -> range:
        return range(len(self.add))

    def plus(self, a, b):
        return self.add[a][b]

    def minus(self, a, b):
        """``a - b`` read as ``a + (-b)``."""
        return self.add[a][self.neg[b]]

    def related(self, a, b) -> bool:
        return self.cong_labels[a] == self.cong_labels[b]

    def is_special(self, a, b) -> bool:
        return self.special_labels[a] == self.special_labels[b]

    @cached_property
    def cong_labels(self):
        return equivalence_labels(self.n, self.cong)

    @cached_property
    def special_labels(self):
        return equivalence_labels(self.n, self.special)

    def name(self, x) -> str:
        return self.names[x] if self.names else str(x)

    def is_strict(self) -> bool:
        return all(a == b for a, b in self.special)

    def __repr__(self):
        return f"CGroup(n={self.n})"


def axiom_instances(add, zero, neg):
    """Yield ``(kind, args, pair)`` for every instance of the c-group axioms."""
    n = len(add)
    for a in range(n):
        yield "lunit", (a,), (add[zero][a], a)
    for a in range(n):
        yield "runit", (a,), (add[a][zero], a)
    for a in range(n):
        yield "linv", (a,), (add[neg[a]][a], zero)
    for a in range(n):
        yield "rinv", (a,), (add[a][neg[a]], zero)
    for a, b, c in itertools.product(range(n), repeat=3):
        yield "assoc", (a, b, c), (add[add[a][b]][c], add[a][add[b][c]])


def _axiom_pair(add, zero, neg, kind, args):
    if kind == "lunit":
        (a,) = args
        return add[zero][a], a
    if kind == "runit":
        (a,) = args
        return add[a][zero], a
    if kind == "linv":
        (a,) = args
        return add[neg[a]][a], zero
    if kind == "rinv":
        (a,) = args
        return add[a][neg[a]], zero
    if kind == "assoc":
        a, b, c = args
        return add[add[a][b]][c], add[a][add[b][c]]
    raise CertificateError(f"unknown axiom kind {kind!r}")


def _closure_labels(add, zero, neg) -> tuple[int, ...]:
    n = len(add)
    uf = _UnionFind(n)
    for _, _, (p, q) in axiom_instances(add, zero, neg):
        uf.union(p, q)
    changed = True
    while changed:
        changed = False
        for x in range(n):
            r = uf.find(x)
            if r == x:
                continue
            rowx, rowr = add[x], add[r]
            for u in range(n):
                if uf.union(rowx[u], rowr[u]):
                    changed = True
                if uf.union(add[u][x], add[u][r]):
                    changed = True
    return uf.labels()


def special_closure(g) -> frozenset:
    """Least sum-closed equivalence relation containing all axiom instances."""
    return pairs_from_labels(_closure_labels(g.add, g.zero, g.neg))


# --- validation -------------------------------------------------------------

def _check_structure(add, zero, neg, pair_sets):
    n = len(add)
    if n == 0:
        raise StructuralError("empty carrier")
    for i, row in enumerate(add):
        if len(row) != n:
            raise StructuralError(f"add row {i} has length {len(row)}, expected {n}")
        for v in row:
            if not (0 <= v < n):
                raise StructuralError(f"add row {i} references unknown element {v}")
    if not (0 <= zero < n):
        raise StructuralError(f"zero {zero} out of range")
    if len(neg) != n or any(not (0 <= v < n) for v in neg):
        raise StructuralError("neg table has wrong length or unknown elements")
    for label, pairs in pair_sets:
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise StructuralError(f"{label} pair ({a},{b}) out of range")


def _equivalence_violation(n, rel):
    for a in range(n):
        if (a, a) not in rel:
            return ("reflexive", (a,))
    for a, b in sorted(rel):
        if (b, a) not in rel:
            return ("symmetric", (a, b))
    succ: dict[int, list[int]] = {}
    for a, b in sorted(rel):
        succ.setdefault(a, []).append(b)
    for a, b in sorted(rel):
        for c in succ.get(b, ()):
            if (a, c) not in rel:
                return ("transitive", (a, b, c))
    return None


def _sum_closure_violation(add, rel_labels):
    # for an equivalence, sum-closure reduces to closure under one-sided translation
    n = len(add)
    for x in range(n):
        r = rel_labels[x]
        if r == x:
            continue
        for u in range(n):
            if rel_labels[add[x][u]] != rel_labels[add[r][u]]:
                return (x, r, u, u)
            if rel_labels[add[u][x]] != rel_labels[add[u][r]]:
                return (u, u, x, r)
    return None


def validate_cgroup(add, zero, neg, cong, special=None, names=None, subject="cgroup"):
    """Check every c-group invariant; collect violations with concrete witnesses.

    ``cong`` and ``special`` are literal pair sets. ``special=None`` means
    "compute by closure". Structural errors (bad dimensions) raise.
    """
    add = tuple(tuple(int(v) for v in row) for row in add)
    neg = tuple(int(v) for v in neg)
    cong = frozenset((int(a), int(b)) for a, b in cong)
    if special is not None:
        special = frozenset((int(a), int(b)) for a, b in special)
    _check_structure(add, zero, neg, [("cong", cong), ("special", special or ())])
    n = len(add)
    rep = ValidationReport(subject)

    bad = _equivalence_violation(n, cong)
    if bad:
        rep.add("equivalence", bad[1], f"cong is not {bad[0]}")
        labels = None
    else:
        labels = equivalence_labels(n, cong)
        w = _sum_closure_violation(add, labels)
        if w:
            rep.add("R-compatibility", w, "(a,a'),(b,b') in R but sums are not")

    def rel(a, b):
        return (a, b) in cong if labels is None else labels[a] == labels[b]

    names_by_kind = {"assoc": "associativity", "lunit": "left-unit", "runit": "right-unit",
                     "linv": "left-inverse", "rinv": "right-inverse"}
    seen = set()
    for kind, args, (p, q) in axiom_instances(add, zero, neg):
        if kind not in seen and not rel(p, q):
            seen.add(kind)
            rep.add(names_by_kind[kind], args, f"{p} !~ {q}")

    closure_labels = _closure_labels(add, zero, neg)
    closure = pairs_from_labels(closure_labels)
    if not closure <= cong:
        a, b = min(closure - cong)
        rep.add("special-not-in-cong", (a, b))
    if special is not None:
        bad = _equivalence_violation(n, special)
        if bad:
            rep.add("special-not-equivalence", bad[1], f"special is not {bad[0]}")
        else:
            w = _sum_closure_violation(add, equivalence_labels(n, special))
            if w:
                rep.add("special-not-sum-closed", w)
        if not special <= cong:
            rep.add("special-not-in-cong", min(special - cong))
        missing = closure - special
        if missing:
            rep.add("special-missing", min(missing), "supplied special omits a closure pair")
        elif special != closure and rep.ok:
            rep.warnings.append(
                f"supplied special relation has {len(special)} pairs, closure has "
                f"{len(closure)}; replaced by the closure")
    if rep.ok:
        rep.value = CGroup(add, zero, neg, cong, closure, tuple(names) if names else None)
    return rep


def seal(g: CGroup, subject="cgroup") -> CGroup:
    """Re-validate an already constructed CGroup, raising on any violation."""
    return validate_cgroup(g.add, g.zero, g.neg, g.cong, g.special, g.names,
                           subject).raise_if_invalid()


def default_negation(add, zero, cong) -> tuple:
    """For each a an exact inverse if one exists, else the least x with
    a+x and x+a congruent to 0."""
    n = len(add)
    labels = equivalence_labels(n, cong)
    neg = []
    for a in range(n):
        x = next((x for x in range(n) if add[a][x] == zero == add[x][a]), None)
        if x is None:
            x = next((x for x in range(n)
                      if labels[add[a][x]] == labels[zero] == labels[add[x][a]]), None)
        if x is None:
            raise StructuralError(f"element {a} has no inverse up to congruence")
        neg.append(x)
    return tuple(neg)


def make_cgroup(add, zero=0, neg=None, cong="equality", special=None, names=None,
                subject="cgroup") -> CGroup:
    """Convenience constructor: builds relations from short specs and validates.

    ``neg=None`` uses ``default_negation``.
    """
    add = tuple(tuple(row) for row in add)
    n = len(add)
    cong_pairs = relation_from_spec(n, cong)
    if neg is None:
        neg = default_negation(add, zero, cong_pairs)
    if special is not None and special != "auto":
        special = relation_from_spec(n, special)
    else:
        special = None
    return validate_cgroup(add, zero, neg, cong_pairs, special, names,
                           subject).raise_if_invalid()


def with_cong(g: CGroup, cong) -> CGroup:
    """Same tables, a different congruence relation (re-validated)."""
    return make_cgroup(g.add, g.zero, g.neg, cong, names=g.names)


# --- special-congruence certificates ---------------------------------------

@dataclass(frozen=True)
class SpecialCert:
    """Replayable derivation of a special pair.

    Each step is a tuple: ``(kind, *element_args)`` for an axiom instance,
    ``('identity', a)``, ``('symmetry', i)``, ``('transitivity', i, j)`` or
    ``('sum', i, j)``, where ``i, j`` index earlier steps.
    """

    steps: tuple
    claim: Pair

    def __len__(self):
        return len(self.steps)


def replay_cert(g: CGroup, cert: SpecialCert) -> Pair:
    add = g.add
    got: list[Pair] = []
    for k, step in enumerate(cert.steps):
        kind, args = step[0], step[1:]

        def prev(i):
            if not (isinstance(i, int) and 0 <= i < k):
                raise CertificateError(f"step {k} references step {i}")
            return got[i]

        if kind in AXIOM_KINDS:
            if any(not (0 <= a < g.n) for a in args):
                raise CertificateError(f"step {k}: element out of range")
            pair = _axiom_pair(add, g.zero, g.neg, kind, args)
        elif kind == "identity":
            pair = (args[0], args[0])
        elif kind == "symmetry":
            x, y = prev(args[0])
            pair = (y, x)
        elif kind == "transitivity":
            (x, y), (y2, z) = prev(args[0]), prev(args[1])
            if y != y2:
                raise CertificateError(f"step {k}: transitivity through {y} != {y2}")
            pair = (x, z)
        elif kind == "sum":
            (x, y), (u, v) = prev(args[0]), prev(args[1])
            pair = (add[x][u], add[y][v])
        else:
            raise CertificateError(f"step {k}: unknown kind {kind!r}")
        got.append(pair)
    if not got:
        raise CertificateError("empty certificate")
    if got[-1] != tuple(cert.claim):
        raise CertificateError(f"certificate proves {got[-1]}, claims {cert.claim}")
    return got[-1]


class _CertWriter:
    def __init__(self):
        self.steps: list[tuple] = []
        self.memo: dict = {}

    def emit(self, step, key=None):
        if key is not None and key in self.memo:
            return self.memo[key]
        self.steps.append(step)
        idx = len(self.steps) - 1
        if key is not None:
            self.memo[key] = idx
        return idx


def _edge_derivations(g: CGroup):
    """Every non-diagonal pair reachable from a generator by translations.

    Maps an edge ``(x, y)`` to how it was obtained. Together with transitivity
    these edges generate exactly the special closure.
    """
    add, n = g.add, g.n
    edges: dict[Pair, tuple] = {}
    queue: deque = deque()
    for kind, args, (p, q) in axiom_instances(g.add, g.zero, g.neg):
        if p != q and (p, q) not in edges:
            edges[(p, q)] = ("gen", kind, args)
            queue.append((p, q))
    for (p, q) in list(edges):
        if (q, p) not in edges:
            edges[(q, p)] = ("sym", (p, q))
            queue.append((q, p))
    while queue:
        e = queue.popleft()
        x, y = e
        for u in range(n):
            left = (add[u][x], add[u][y])
            if left[0] != left[1] and left not in edges:
                edges[left] = ("left", u, e)
                queue.append(left)
            right = (add[x][u], add[y][u])
            if right[0] != right[1] and right not in edges:
                edges[right] = ("right", e, u)
                queue.append(right)
    return edges


def _write_edge(w: _CertWriter, g: CGroup, edges, e):
    if e in w.memo:
        return w.memo[e]
    node = edges[e]
    if node[0] == "gen":
        idx = w.emit((node[1], *node[2]))
    elif node[0] == "sym":
        i = _write_edge(w, g, edges, node[1])
        idx = w.emit(("symmetry", i))
    elif node[0] == "left":
        i = _write_edge(w, g, edges, node[2])
        j = w.emit(("identity", node[1]), key=("id", node[1]))
        idx = w.emit(("sum", j, i))
    else:
        i = _write_edge(w, g, edges, node[1])
        j = w.emit(("identity", node[2]), key=("id", node[2]))
        idx = w.emit(("sum", i, j))
    w.memo[e] = idx
    return idx


def certify_special(g: CGroup, x: int, y: int) -> Optional[SpecialCert]:
    """A replayable certificate for ``(x, y)`` in S, or ``None`` if not special."""
    if x == y:
        return SpecialCert((("identity", x),), (x, y))
    edges = _edge_derivations(g)
    adj: dict[int, list[int]] = {}
    for a, b in sorted(edges):
        adj.setdefault(a, []).append(b)
    prev = {x: None}
    queue = deque([x])
    while queue and y not in prev:
        a = queue.popleft()
        for b in adj.get(a, ()):
            if b not in prev:
                prev[b] = a
                queue.append(b)
    if y not in prev:
        return None
    path = [y]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    w = _CertWriter()
    acc = _write_edge(w, g, edges, (path[0], path[1]))
    for a, b in zip(path[1:], path[2:]):
        nxt = _write_edge(w, g, edges, (a, b))
        acc = w.emit(("transitivity", acc, nxt))
    assert acc == len(w.steps) - 1
    return SpecialCert(tuple(w.steps), (x, y))


def special_closure_by_edges(g: CGroup) -> frozenset:
    """Closure computed from translated generators; independent of the fixpoint route."""
    edges = _edge_derivations(g)
    return equivalence_closure(g.n, list(edges) + [(a, a) for a in g.carrier])


# --- morphisms --------------------------------------------------------------

@dataclass(frozen=True)
class CGroupMorphism:
    dom: CGroup
    cod: CGroup
    map: tuple

    def __call__(self, a):
        return self.map[a]


def validate_morphism(f: CGroupMorphism, subject="morphism") -> ValidationReport:
    rep = ValidationReport(subject)
    d, c, m = f.dom, f.cod, f.map
    if len(m) != d.n or any(not (0 <= v < c.n) for v in m):
        raise StructuralError("morphism table does not match domain/codomain")
    for a, b in itertools.product(d.carrier, repeat=2):
        if m[d.add[a][b]] != c.add[m[a]][m[b]]:
            rep.add("homomorphism", (a, b), "f(a+b) != f(a)+f(b)")
            break
    for a, b in sorted(d.cong):
        if not c.related(m[a], m[b]):
            rep.add("preserves-cong", (a, b))
            break
    for a, b in sorted(d.special):
        if not c.is_special(m[a], m[b]):
            rep.add("preserves-special", (a, b))
            break
    if rep.ok:
        rep.value = f
    return rep


def morphism(dom, cod, table) -> CGroupMorphism:
    f = CGroupMorphism(dom, cod, tuple(table))
    return validate_morphism(f).raise_if_invalid()


# --- c-subgroups, kernels, images -------------------------------------------

@dataclass(frozen=True)
class CSubgroup:
    parent: CGroup
    elements: tuple
    group: CGroup

    def embed(self, i):
        return self.elements[i]

    @cached_property
    def _index(self):
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x):
        return self._index[x]

    def __contains__(self, x):
        return x in self._index


def c_subgroup(g: CGroup, elements: Iterable[int]) -> CSubgroup:
    """Restrict ``g`` to ``elements``; raise NotACSubgroup unless that is a c-group."""
    elems = tuple(sorted(set(elements)))
    if not elems:
        raise NotACSubgroup("empty subset")
    idx = {x: i for i, x in enumerate(elems)}
    for a, b in itertools.product(elems, repeat=2):
        if g.add[a][b] not in idx:
            raise NotACSubgroup(f"not closed under addition: {a}+{b}")
    add = tuple(tuple(idx[g.add[a][b]] for b in elems) for a in elems)
    cong = frozenset((idx[a], idx[b]) for a, b in g.cong if a in idx and b in idx)
    labels = equivalence_labels(len(elems), cong)

    def rel(i, j):
        return labels[i] == labels[j]

    k = len(elems)
    zero_candidates = ([idx[g.zero]] if g.zero in idx else []) + list(range(k))
    for z in zero_candidates:
        if all(rel(add[z][a], a) and rel(add[a][z], a) for a in range(k)):
            break
    else:
        raise NotACSubgroup("no zero element inside the subset")
    neg = []
    for i, a in enumerate(elems):
        cands = ([idx[g.neg[a]]] if g.neg[a] in idx else []) + list(range(k))
        for x in cands:
            if rel(add[i][x], z) and rel(add[x][i], z):
                neg.append(x)
                break
        else:
            raise NotACSubgroup(f"element {a} has no inverse inside the subset")
    names = tuple(g.name(x) for x in elems) if g.names else None
    rep = validate_cgroup(add, z, neg, cong, None, names, "c-subgroup")
    if not rep.ok:
        raise NotACSubgroup(rep.format())
    return CSubgroup(g, elems, rep.value)


def c_kernel(f: CGroupMorphism) -> CSubgroup:
    c = f.cod
    return c_subgroup(f.dom, [a for a in f.dom.carrier if c.related(f.map[a], c.zero)])


def c_image(f: CGroupMorphism) -> CSubgroup:
    c = f.cod
    hit = {c.cong_labels[f.map[a]] for a in f.dom.carrier}
    return c_subgroup(c, [b for b in c.carrier if c.cong_labels[b] in hit])


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def _tilde_in(g: CGroup, x, h: CSubgroup):
    lab = g.cong_labels[x]
    return any(g.cong_labels[e] == lab for e in h.elements)


def is_normal(g: CGroup, h: CSubgroup) -> Verdict:
    """``g + (h - g)`` is congruent to an element of H for all g, h."""
    if h.parent is not g and h.parent != g:
        raise NotACSubgroup("subgroup belongs to a different c-group")
    for x in h.elements:
        for a in g.carrier:
            if not _tilde_in(g, g.add[a][g.minus(x, a)], h):
                return Verdict(False, (a, x))
    return Verdict(True)


def is_perfect(g: CGroup, h: CSubgroup) -> Verdict:
    """Anything congruent to an element of H is in H."""
    if h.parent is not g and h.parent != g:
        raise NotACSubgroup("subgroup belongs to a different c-group")
    for a in g.carrier:
        if a not in h and _tilde_in(g, a, h):
            return Verdict(False, (a,))
    return Verdict(True)


def is_connected(g: CGroup) -> Verdict:
    for a in g.carrier:
        if not g.related(g.zero, a):
            return Verdict(False, (g.zero, a) if g.zero < a else (a, g.zero))
    return Verdict(True)


# --- semidirect product ------------------------------------------------------

def semidirect(b: CGroup, a: CGroup, act) -> CGroup:
    """``B ⋉ A`` with ``(b', a') + (b, a) = (b' + b, a' + b'·a)``.

    ``act`` is a CAction of ``b`` on ``a`` or a raw ``|B| x |A|`` table; it
    must pass ``validate_action``. Pair ``(x, y)`` has id ``x*|A| + y``.
    """
    from .crossed import CAction, validate_action

    if not isinstance(act, CAction):
        act = CAction(b, a, tuple(tuple(r) for r in act))
    validate_action(act).raise_if_invalid()
    t = act.table
    na = a.n
    ids = list(itertools.product(b.carrier, a.carrier))

    def pid(x, y):
        return x * na + y

    add = tuple(
        tuple(pid(b.add[x1][x2], a.add[y1][t[x1][y2]]) for (x2, y2) in ids)
        for (x1, y1) in ids)
    neg = tuple(pid(b.neg[x], t[b.neg[x]][a.neg[y]]) for (x, y) in ids)
    cong = frozenset((pid(x1, y1), pid(x2, y2))
                     for (x1, x2) in b.cong for (y1, y2) in a.cong)
    names = tuple(f"({b.name(x)},{a.name(y)})" for x, y in ids)
    return validate_cgroup(add, pid(b.zero, a.zero), neg, cong, None, names,
                           "semidirect").raise_if_invalid()
