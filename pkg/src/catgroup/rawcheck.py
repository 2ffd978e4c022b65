"""Randomised agreement between raw-arrow operations and the normal form."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .construct import (
    SpecialIso,
    Triple,
    add_arrows,
    compose,
    compose_theta_cert,
    identify,
    identity_arrow,
    inverse_arrow,
    normalize,
    opposite_arrow,
    raw_add,
    raw_add_specials,
    raw_compose,
    raw_identity,
    raw_inverse,
    raw_opposite,
)
from .crossed import CCrossedModule


def _special_class(xm, a):
    lab = xm.n.special_labels
    return [b for b in xm.n.carrier if lab[b] == lab[a]]


def random_raw(xm: CCrossedModule, rng: random.Random, src=None, p_special=0.25):
    """A random raw arrow, optionally with a prescribed source."""
    n = xm.n
    a = rng.choice(list(n.carrier)) if src is None else src
    if rng.random() < p_special:
        return SpecialIso(a, rng.choice(_special_class(xm, a)))
    r = rng.choice(_special_class(xm, a))
    c = rng.randrange(xm.m.n)
    b = rng.choice(_special_class(xm, n.add[xm.boundary[c]][r]))
    return Triple(a, r, c, b)


def respelling(xm: CCrossedModule, raw: Triple, rng: random.Random):
    """Another raw arrow with the same endpoints and a weakly special payload, if any."""
    n = xm.n
    opts = []
    for r in _special_class(xm, raw.alpha_src):
        for c in xm.m.carrier:
            if xm.weak_rep(c) == xm.weak_rep(raw.c) and n.is_special(
                    n.add[xm.boundary[c]][r], raw.beta_tgt):
                opts.append(Triple(raw.alpha_src, r, c, raw.beta_tgt))
    return rng.choice(opts) if opts else None


@dataclass
class AgreementResult:
    pairs: int = 0
    checks: int = 0
    certificates: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.mismatches

    def note(self, what, ok, *witness):
        self.checks += 1
        if not ok and len(self.mismatches) < 20:
            self.mismatches.append((what,) + witness)


def raw_agreement(xm: CCrossedModule, pairs=1000, seed=0) -> AgreementResult:
    """Draw ``pairs`` composable raw pairs plus an independent summand; compare every
    raw operation, normalised, with the canonical one."""
    rng = random.Random(seed)
    res = AgreementResult()
    for _ in range(pairs):
        g1 = random_raw(xm, rng)
        g2 = random_raw(xm, rng, src=g1.tgt)
        h = random_raw(xm, rng)
        n1, n2, nh = normalize(xm, g1), normalize(xm, g2), normalize(xm, h)
        res.pairs += 1

        got = normalize(xm, raw_compose(xm, g2, g1))
        res.note("compose", got == compose(xm, n2, n1), g1, g2)
        t1 = identify(xm, g1) if isinstance(g1, SpecialIso) else g1
        t2 = identify(xm, g2) if isinstance(g2, SpecialIso) else g2
        res.note("compose-identified", normalize(xm, raw_compose(xm, t2, t1)) == got, g1, g2)
        cert = compose_theta_cert(xm, t2, t1)
        res.certificates += 1
        res.note("theta-certificate-claim", cert.claim[1] == t2.beta_tgt, g1, g2)

        res.note("add", normalize(xm, raw_add(xm, g1, h)) == add_arrows(xm, n1, nh), g1, h)
        if isinstance(g1, SpecialIso) and isinstance(h, SpecialIso):
            res.note("add-specials",
                     normalize(xm, raw_add_specials(xm, g1, h)) == add_arrows(xm, n1, nh), g1, h)
        res.note("inverse", normalize(xm, raw_inverse(xm, g1)) == inverse_arrow(xm, n1), g1)
        res.note("opposite", normalize(xm, raw_opposite(xm, g1)) == opposite_arrow(xm, n1), g1)
        res.note("identity", normalize(xm, raw_identity(xm, g1.src)) == identity_arrow(xm, g1.src),
                 g1.src)
        if isinstance(t1, Triple):
            alt = respelling(xm, t1, rng)
            if alt is not None:
                res.note("respelling", normalize(xm, alt) == n1, t1, alt)
    return res
