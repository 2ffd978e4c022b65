"""Built-in crossed modules and a seeded search for non-strict ones."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional

from . import groups as G
from .cgroup import CGroup, c_subgroup, is_normal, is_perfect, make_cgroup, validate_cgroup
from .crossed import (
    CCrossedModule,
    classify,
    conjugation_crossed_module,
    crossed_module,
    trivial_action,
    validate_crossed_module,
)
from .errors import CatGroupError, InstanceCorruptionError

# Three-element c-group over Z2 with the zero doubled: 0a, 0b over 0 and 1 over 1.
FZ2_ADD = ((0, 1, 2), (1, 0, 2), (2, 2, 1))
FZ2_NEG = (0, 1, 2)
FZ2_CONG = ((0, 1),)
FZ2_NAMES = ("0a", "0b", "1")


def _triv():
    z1 = G.cyclic(1)
    return crossed_module(z1, z1, (0,), trivial_action(z1, z1))


def _xm4():
    z2 = G.cyclic(2, "total")
    t4 = G.cyclic_table(4)
    # the boundary only preserves congruence if N is taken modulo its image {0, 2}
    z4 = G.group(t4, G.coset_relation(t4, (0, 2)))
    return crossed_module(z2, z4, (0, 2), trivial_action(z4, z2), "equality")


def _inclusion(table, sub, names=None):
    g = G.group(table, G.coset_relation(table, sub), names)
    return conjugation_crossed_module(g, c_subgroup(g, sub), "equality")


def _s3a3():
    names = tuple("".join(map(str, p)) for p in G.symmetric3_perms())
    return _inclusion(G.s3_table(), (0, 1, 2), names)


def _k4z2():
    return _inclusion(G.product_table(G.cyclic_table(2), G.cyclic_table(2)), (0, 1))


def _q8z():
    return _inclusion(G.q8_table(), (0, 1), ("1", "-1", "i", "-i", "j", "-j", "k", "-k"))


def fz2_base() -> CGroup:
    return make_cgroup(FZ2_ADD, 0, FZ2_NEG, FZ2_CONG, names=FZ2_NAMES)


def _fz2_from_data():
    n = fz2_base()
    return conjugation_crossed_module(n, c_subgroup(n, (0, 1)), "total")


def is_fz2_like(xm: CCrossedModule) -> bool:
    """Three-element N over Z2 with a doubled zero, W total, classified cssc."""
    n = xm.n
    if n.n != 3 or xm.weak != frozenset(itertools.product(xm.m.carrier, repeat=2)):
        return False
    classes = sorted(len([b for b in n.carrier if n.related(a, b)]) for a in n.carrier)
    return (classes == [1, 2, 2] and len([a for a in n.carrier if n.related(a, n.zero)]) == 2
            and validate_crossed_module(xm).ok and classify(xm).cssc)


def _fz2():
    try:
        xm = _fz2_from_data()
        if is_fz2_like(xm):
            return xm
    except CatGroupError:
        pass
    # shipped tables are wrong: fall back to the first search hit of the right shape
    for hit in search_fattened(3, 2, 2000, seed=1):
        if is_fz2_like(hit.xm):
            return hit.xm
    raise InstanceCorruptionError("no instance of the FZ2 shape could be built")


_BUILDERS = {
    "TRIV": _triv,
    "XM4": _xm4,
    "S3A3": _s3a3,
    "K4Z2": _k4z2,
    "Q8Z": _q8z,
    "FZ2": _fz2,
}

BUILTIN_NAMES = tuple(_BUILDERS)
STRICT_NAMES = ("TRIV", "XM4", "S3A3", "K4Z2", "Q8Z")

_cache: dict = {}


def builtin_instance(name: str) -> CCrossedModule:
    key = name.upper()
    if key not in _BUILDERS:
        raise KeyError(f"unknown instance {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    if key not in _cache:
        _cache[key] = _BUILDERS[key]()
    return _cache[key]


# --- fattening and search ----------------------------------------------------------

def fatten_group(table, dupes, seed=0) -> CGroup:
    """Replace each element ``e`` of a group by ``dupes[e]`` copies.

    Sums and negatives pick a seeded-random copy of the true result; the
    congruence identifies copies of the same element.
    """
    rng = random.Random(seed)
    base = len(table)
    if len(dupes) != base or any(k < 1 for k in dupes):
        raise ValueError("need a positive multiplicity for every element")
    proj = [e for e in range(base) for _ in range(dupes[e])]
    fibre = {e: [x for x, p in enumerate(proj) if p == e] for e in range(base)}
    n = len(proj)
    add = tuple(tuple(rng.choice(fibre[table[proj[x]][proj[y]]]) for y in range(n))
                for x in range(n))
    bneg = G._exact_neg(table)
    neg = tuple(rng.choice(fibre[bneg[proj[x]]]) for x in range(n))
    cong = frozenset((x, y) for x in range(n) for y in range(n) if proj[x] == proj[y])
    names = tuple(f"{proj[x]}{'abcdefgh'[fibre[proj[x]].index(x)]}" if dupes[proj[x]] > 1
                  else str(proj[x]) for x in range(n))
    return validate_cgroup(add, fibre[0][0], neg, cong, None, names,
                           "fattened group").raise_if_invalid()


@dataclass(frozen=True)
class SearchHit:
    xm: CCrossedModule
    base: str
    dupes: tuple
    weak: str
    key: tuple

    def describe(self):
        return (f"base={self.base} dupes={','.join(map(str, self.dupes))} "
                f"|N|={self.xm.n.n} |M|={self.xm.m.n} weak={self.weak}")


def canonical_key(xm: CCrossedModule) -> tuple:
    """Relabeling-invariant key of an inclusion crossed module (brute force over N)."""
    n = xm.n
    image = tuple(xm.boundary)
    best = None
    for perm in itertools.permutations(range(n.n)):
        if perm[n.zero] != 0:
            continue
        inv = [0] * n.n
        for a, b in enumerate(perm):
            inv[b] = a
        add = tuple(tuple(perm[n.add[inv[a]][inv[b]]] for b in range(n.n)) for a in range(n.n))
        neg = tuple(perm[n.neg[inv[a]]] for a in range(n.n))
        cong = tuple(sorted((perm[a], perm[b]) for a, b in n.cong))
        sub = tuple(sorted(perm[x] for x in image))
        weak = tuple(sorted(tuple(sorted((perm[image[c]], perm[image[d]])))
                            for c, d in xm.weak))
        key = (n.n, xm.m.n, add, neg, cong, sub, weak)
        if best is None or key < best:
            best = key
    return best


def _base_groups(max_n):
    return [(name, t) for name, t in G.small_groups(max_n)]


def _dupe_vectors(order, max_n):
    """Multiplicity vectors with some element doubled and total size at most ``max_n``."""
    out = []
    for vec in itertools.product(range(1, max_n + 1), repeat=order):
        if max(vec) > 1 and sum(vec) <= max_n:
            out.append(vec)
    return out


def search_fattened(max_n: int, max_m: int, trials: int, seed: int = 0) -> list[SearchHit]:
    """Sample fattened groups N and normal perfect c-subgroups M of size at most ``max_m``.

    Each trial draws a base group, a multiplicity vector, a fattening seed,
    a subgroup and a weak-special candidate. Hits are validated, classified
    cssc, non-strict (special congruence on N not equality) and deduplicated up
    to relabeling. The result is sorted by key, so it depends only on the
    arguments.
    """
    rng = random.Random(seed)
    spaces = []
    for name, table in _base_groups(max_n):
        for vec in _dupe_vectors(len(table), max_n):
            spaces.append((name, table, vec))
    if not spaces or trials <= 0:
        return []
    hits: dict = {}
    seen: set = set()
    subsets_memo: dict = {}
    for _ in range(trials):
        name, table, vec = rng.choice(spaces)
        fseed = rng.randrange(1 << 30)
        n = fatten_group(table, vec, fseed)
        kind = rng.choice(("equality", "fibre", "total", "derived"))
        if n.special == frozenset((a, a) for a in n.carrier):
            continue
        tkey = (n.add, n.neg, n.zero)
        subs = subsets_memo.get(tkey)
        if subs is None:
            subs = _normal_perfect_subgroups(n, max_m)
            subsets_memo[tkey] = subs
        if not subs:
            continue
        sub = subs[rng.randrange(len(subs))]
        memo = (tkey, sub.elements, kind)
        if memo in seen:
            continue
        seen.add(memo)
        hit = _try(n, sub, kind, name, vec)
        if hit is not None and hit.key not in hits:
            hits[hit.key] = hit
    return [hits[k] for k in sorted(hits)]


def _normal_perfect_subgroups(n: CGroup, max_m):
    out = []
    for size in range(1, max_m + 1):
        for elems in itertools.combinations(n.carrier, size):
            try:
                h = c_subgroup(n, elems)
            except CatGroupError:
                continue
            if is_normal(n, h) and is_perfect(n, h):
                out.append(h)
    return out


def _try(n, sub, kind, name, vec) -> Optional[SearchHit]:
    if kind == "fibre":
        lab = n.cong_labels
        els = sub.elements
        kind_spec = frozenset((i, j) for i, x in enumerate(els) for j, y in enumerate(els)
                              if lab[x] == lab[y])
    else:
        kind_spec = kind
    try:
        xm = conjugation_crossed_module(n, sub, kind_spec)
    except CatGroupError:
        return None
    if not classify(xm).cssc:
        return None
    return SearchHit(xm, name, tuple(vec), kind, canonical_key(xm))
