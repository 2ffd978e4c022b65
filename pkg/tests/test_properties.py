"""Invariants as hypothesis properties over random fattened c-groups and instances."""
import itertools
import random
from functools import lru_cache

from hypothesis import given
from hypothesis import strategies as st

from catgroup import groups as G
from catgroup.cgroup import certify_special, replay_cert, special_closure_by_edges
from catgroup.construct import (
    add_arrows,
    build_categorical_group,
    compose,
    congruence_square,
    enumerate_arrows,
    identity_arrow,
    inverse_arrow,
    normalize,
)
from catgroup.fileio import export_text, load_text
from catgroup.instances import BUILTIN_NAMES, builtin_instance, fatten_group, search_fattened
from catgroup.rawcheck import random_raw, raw_agreement, respelling
from catgroup.verify import verify_all

BASES = [t for _, t in G.small_groups(4)]


@st.composite
def fattened(draw):
    table = draw(st.sampled_from(BASES))
    dupes = tuple(draw(st.integers(1, 2)) for _ in range(len(table)))
    return fatten_group(table, dupes, draw(st.integers(0, 10_000)))


@lru_cache(maxsize=1)
def _hits():
    return tuple(h.xm for h in search_fattened(3, 2, 3000, seed=11))


@st.composite
def instance(draw):
    pool = [builtin_instance(n) for n in BUILTIN_NAMES] + list(_hits())
    return draw(st.sampled_from(pool))


@given(fattened())
def test_closure_routes_agree_and_sit_inside_congruence(g):
    assert g.special == special_closure_by_edges(g)
    assert g.special <= g.cong
    lab = g.special_labels
    for (a, b), (c, d) in itertools.product(g.special, repeat=2):
        assert lab[g.add[a][c]] == lab[g.add[b][d]]


@given(fattened(), st.data())
def test_certificates_replay(g, data):
    a, b = data.draw(st.sampled_from(sorted(g.special)))
    cert = certify_special(g, a, b)
    assert replay_cert(g, cert) == (a, b)


@given(instance())
def test_zero_boundary_is_special_to_zero(xm):
    assert xm.n.is_special(xm.boundary[xm.m.zero], xm.n.zero)


@given(instance(), st.integers(0, 2**31))
def test_raw_operations_agree(xm, seed):
    assert raw_agreement(xm, pairs=40, seed=seed).ok


@given(instance(), st.integers(0, 2**31))
def test_respellings_normalise_equal(xm, seed):
    rng = random.Random(seed)
    for _ in range(30):
        raw = random_raw(xm, rng, p_special=0)
        alt = respelling(xm, raw, rng)
        assert alt is not None
        assert normalize(xm, alt) == normalize(xm, raw)


@given(instance(), st.data())
def test_canonical_laws(xm, data):
    arrows = enumerate_arrows(xm)
    f = data.draw(st.sampled_from(arrows))
    g = data.draw(st.sampled_from([a for a in arrows if a.src == f.tgt]))
    h = data.draw(st.sampled_from([a for a in arrows if a.src == g.tgt]))
    assert compose(xm, h, compose(xm, g, f)) == compose(xm, compose(xm, h, g), f)
    assert compose(xm, f, identity_arrow(xm, f.src)) == f
    assert compose(xm, identity_arrow(xm, f.tgt), f) == f
    assert compose(xm, inverse_arrow(xm, f), f) == identity_arrow(xm, f.src)
    assert inverse_arrow(xm, inverse_arrow(xm, f)) == f
    k = data.draw(st.sampled_from(arrows))
    s = add_arrows(xm, f, k)
    assert (s.src, s.tgt) == (xm.n.add[f.src][k.src], xm.n.add[f.tgt][k.tgt])


@given(instance(), st.data())
def test_congruence_square_commutes(xm, data):
    arrows = enumerate_arrows(xm)
    f = data.draw(st.sampled_from(arrows))
    g = data.draw(st.sampled_from([a for a in arrows if xm.n.related(a.src, f.src)]))
    phi, theta = congruence_square(xm, f, g)
    assert compose(xm, theta, f) == compose(xm, g, phi)


@given(instance())
def test_built_model_verifies(xm):
    assert verify_all(build_categorical_group(xm), xm.n.special).ok


@given(instance())
def test_export_load_round_trip(xm):
    back = load_text(export_text(xm, "P")).only_xmod()
    assert (back.m.add, back.n.add, back.boundary, back.action.table, back.weak, back.n.cong) == (
        xm.m.add, xm.n.add, xm.boundary, xm.action.table, xm.weak, xm.n.cong)
