"""Fully enumerated finite categorical-group models."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional


@dataclass(frozen=True)
class CatGroupModel:
    """Objects ``0..n_objects-1`` and arrows ``0..len(d0)-1`` with every structure map tabulated.

    ``comp[(g, f)]`` is ``g ∘ f`` and is present exactly for composable pairs
    (``d1[f] == d0[g]``). ``linv[x]`` is the designated special arrow
    ``-x + x -> 0`` and ``rinv[x]`` the one ``x + (-x) -> 0``.
    """

    n_objects: int
    d0: tuple
    d1: tuple
    ident: tuple
    comp: dict
    add_obj: tuple
    add_arr: tuple
    neg_obj: tuple
    neg_arr: tuple
    zero: int
    special: frozenset
    assoc: dict
    lunit: tuple
    runit: tuple
    linv: tuple
    rinv: tuple
    object_names: Optional[tuple] = field(default=None, compare=False)
    arrow_names: Optional[tuple] = field(default=None, compare=False)

    @property
    def n_arrows(self):
        return len(self.d0)

    @property
    def objects(self):
        return range(self.n_objects)

    @property
    def arrows(self):
        return range(len(self.d0))

    def obj_name(self, x):
        return self.object_names[x] if self.object_names else str(x)

    def arrow_name(self, f):
        return self.arrow_names[f] if self.arrow_names else str(f)

    @cached_property
    def homs(self):
        out: dict = {}
        for f in self.arrows:
            out.setdefault((self.d0[f], self.d1[f]), []).append(f)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, x, y):
        return self.homs.get((x, y), ())

    @cached_property
    def outgoing(self):
        out = [[] for _ in self.objects]
        for f in self.arrows:
            out[self.d0[f]].append(f)
        return tuple(tuple(o) for o in out)

    @cached_property
    def special_between(self):
        """``(x, y) -> special arrow``; first one in id order if several."""
        out = {}
        for f in sorted(self.special):
            out.setdefault((self.d0[f], self.d1[f]), f)
        return out

    @cached_property
    def inverse(self):
        """Two-sided inverse of each arrow, ``None`` where none exists."""
        inv = []
        for f in self.arrows:
            x, y = self.d0[f], self.d1[f]
            got = None
            for g in self.hom(y, x):
                if self.comp.get((g, f)) == self.ident[x] and self.comp.get((f, g)) == self.ident[y]:
                    got = g
                    break
            inv.append(got)
        return tuple(inv)

    def then(self, *arrows):
        """Composite of ``arrows`` applied left to right; ``None`` if not composable."""
        acc = arrows[0]
        for g in arrows[1:]:
            acc = self.comp.get((g, acc))
            if acc is None:
                return None
        return acc

    def dump(self) -> str:
        on, an = self.obj_name, self.arrow_name
        lines = [f"objects {self.n_objects}"]
        lines += [f"  {x} {on(x)}" for x in self.objects]
        lines.append(f"arrows {self.n_arrows}")
        lines += [f"  {f} {on(self.d0[f])} -> {on(self.d1[f])} {an(f)}" for f in self.arrows]
        lines.append(f"zero {on(self.zero)}")
        lines.append("identity " + " ".join(str(i) for i in self.ident))
        lines.append("comp")
        lines += [f"  {g} o {f} = {h}" for (g, f), h in sorted(self.comp.items())]
        lines.append("add_obj")
        lines += ["  " + " ".join(map(str, row)) for row in self.add_obj]
        lines.append("add_arr")
        lines += ["  " + " ".join(map(str, row)) for row in self.add_arr]
        lines.append("neg_obj " + " ".join(map(str, self.neg_obj)))
        lines.append("neg_arr " + " ".join(map(str, self.neg_arr)))
        lines.append("special " + " ".join(map(str, sorted(self.special))))
        return "\n".join(lines) + "\n"
