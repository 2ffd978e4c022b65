"""Cayley tables of small groups used by the built-in instances."""
from __future__ import annotations

import itertools

from .cgroup import CGroup, make_cgroup


def cyclic_table(n):
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


def product_table(t1, t2):
    n1, n2 = len(t1), len(t2)
    ids = list(itertools.product(range(n1), range(n2)))
    return tuple(tuple(t1[a][c] * n2 + t2[b][d] for (c, d) in ids) for (a, b) in ids)


def _perm_table(perms):
    """Table of ``p + q`` as the composite "apply q, then p"."""
    index = {p: i for i, p in enumerate(perms)}
    return tuple(tuple(index[tuple(p[q[k]] for k in range(len(q)))] for q in perms)
                 for p in perms)


def symmetric3_perms():
    # even permutations first, so A3 = {0, 1, 2}
    perms = sorted(itertools.permutations(range(3)), key=lambda p: (_parity(p), p))
    return perms


def _parity(p):
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


def s3_table():
    return _perm_table(symmetric3_perms())


def q8_table():
    # elements 1, -1, i, -i, j, -j, k, -k as (sign, unit)
    units = ["1", "i", "j", "k"]
    mul = {("1", u): (1, u) for u in units}
    mul.update({(u, "1"): (1, u) for u in units})
    for u in "ijk":
        mul[(u, u)] = (-1, "1")
    mul.update({("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for u in units for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}

    def times(x, y):
        s, u = mul[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    return tuple(tuple(index[times(x, y)] for y in elems) for x in elems)


def group(table, cong="equality", names=None) -> CGroup:
    """A finite group (zero = id 0) as a c-group with the given congruence."""
    return make_cgroup(table, 0, None if cong == "equality" else _exact_neg(table),
                       cong, names=names)


def _exact_neg(table):
    return tuple(next(x for x in range(len(table)) if table[a][x] == 0) for a in range(len(table)))


def cyclic(n, cong="equality") -> CGroup:
    return group(cyclic_table(n), cong)


def s3(cong="equality") -> CGroup:
    names = tuple("".join(map(str, p)) for p in symmetric3_perms())
    return group(s3_table(), cong, names)


def q8(cong="equality") -> CGroup:
    names = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    return group(q8_table(), cong, names)


def klein(cong="equality") -> CGroup:
    return group(product_table(cyclic_table(2), cyclic_table(2)), cong)


def coset_relation(table, subgroup):
    """Pairs ``(a, b)`` with ``a - b`` in ``subgroup`` (a normal subgroup)."""
    n = len(table)
    neg = _exact_neg(table)
    sub = set(subgroup)
    return frozenset((a, b) for a in range(n) for b in range(n) if table[a][neg[b]] in sub)


def small_groups(max_order):
    """A fixed list of ``(name, table)`` with order at most ``max_order``."""
    out = [("Z1", cyclic_table(1))]
    for k in range(2, max_order + 1):
        out.append((f"Z{k}", cyclic_table(k)))
        if k == 4:
            out.append(("K4", product_table(cyclic_table(2), cyclic_table(2))))
        if k == 6:
            out.append(("S3", s3_table()))
        if k == 8:
            out.append(("Q8", q8_table()))
    return out
