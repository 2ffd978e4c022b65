import itertools

import pytest

from catgroup import groups as G
from catgroup.cgroup import (
    SpecialCert,
    c_image,
    c_kernel,
    c_subgroup,
    certify_special,
    equivalence_closure,
    is_connected,
    is_normal,
    is_perfect,
    make_cgroup,
    morphism,
    replay_cert,
    semidirect,
    special_closure,
    special_closure_by_edges,
    validate_cgroup,
    with_cong,
)
from catgroup.crossed import CAction
from catgroup.errors import CertificateError, NotACSubgroup, StructuralError, ValidationError
from catgroup.instances import FZ2_ADD, FZ2_NEG, fatten_group, fz2_base


def test_strict_group_has_equality_special():
    z4 = G.cyclic(4)
    assert z4.special == frozenset((a, a) for a in range(4))
    assert z4.is_strict()


def test_fz2_closure_merges_the_two_zeros():
    n = fz2_base()
    # 1 + (-1) = 1 + 1 = 0b must be special to the zero 0a
    assert n.is_special(1, 0)
    assert n.special == n.cong
    assert len(n.special) == 5


def test_closure_agrees_with_edge_search():
    for seed in range(10):
        g = fatten_group(G.cyclic_table(3), (2, 1, 2), seed)
        assert special_closure(g) == special_closure_by_edges(g) == g.special


def test_certificate_replays_to_claim():
    n = fz2_base()
    cert = certify_special(n, 2, 2)
    assert replay_cert(n, cert) == (2, 2)
    cert = certify_special(n, 1, 0)
    assert replay_cert(n, cert) == (1, 0)
    assert certify_special(n, 0, 2) is None


def test_tampered_certificate_is_rejected():
    n = fz2_base()
    cert = certify_special(n, 1, 0)
    with pytest.raises(CertificateError):
        replay_cert(n, SpecialCert(cert.steps, (0, 2)))
    with pytest.raises(CertificateError):
        replay_cert(n, SpecialCert((("transitivity", 0, 0),), (0, 0)))


def test_validation_collects_several_violations():
    # Z3 table with a non-associative twist, congruence equality
    add = [[0, 1, 2], [1, 2, 0], [2, 0, 0]]
    rep = validate_cgroup(add, 0, (0, 1, 2), frozenset((a, a) for a in range(3)))
    assert not rep.ok
    assert "associativity" in rep.names()
    assert rep.first("right-inverse").witness == (1,)
    assert "special-not-in-cong" in rep.names()


def test_non_congruence_relation_is_flagged():
    rel = equivalence_closure(4, [(0, 1)])
    rep = validate_cgroup(G.cyclic_table(4), 0, (0, 3, 2, 1), rel)
    assert rep.first("R-compatibility") is not None


def test_supplied_special_smaller_than_closure_is_an_error():
    rep = validate_cgroup(FZ2_ADD, 0, FZ2_NEG, equivalence_closure(3, [(0, 1)]),
                          special=frozenset((a, a) for a in range(3)))
    assert rep.first("special-missing") is not None


def test_bad_shape_raises():
    with pytest.raises(StructuralError):
        validate_cgroup([[0, 1], [1]], 0, (0, 1), frozenset())


def test_make_cgroup_finds_negatives_up_to_congruence():
    g = make_cgroup(FZ2_ADD, 0, None, [(0, 1)])
    assert g.neg[2] == 2
    with pytest.raises(ValidationError):
        make_cgroup([[0, 1], [1, 1]], 0, (0, 1), "equality")


def test_subgroup_kernel_image():
    s3 = G.s3("equality")
    a3 = c_subgroup(s3, (0, 1, 2))
    assert is_normal(s3, a3)
    assert is_perfect(s3, a3)
    with pytest.raises(NotACSubgroup):
        c_subgroup(s3, (0, 3, 1))
    refl = c_subgroup(s3, (0, 3))
    v = is_normal(s3, refl)
    assert not v and v.witness is not None
    z2 = G.cyclic(2)
    sign = morphism(s3, z2, (0, 0, 0, 1, 1, 1))
    assert c_kernel(sign).elements == (0, 1, 2)
    assert c_image(sign).elements == (0, 1)


def test_perfect_fails_for_partial_class():
    g = G.cyclic(4, G.coset_relation(G.cyclic_table(4), (0, 2)))
    h = c_subgroup(g, (0,))
    assert not is_perfect(g, h)
    assert is_perfect(g, c_subgroup(g, (0, 2)))


def test_connected():
    assert is_connected(G.cyclic(3, "total"))
    v = is_connected(G.cyclic(3))
    assert not v and v.witness == (0, 1)


def test_semidirect_z3_by_z2_is_nonabelian_order_six():
    z3, z2 = G.cyclic(3), G.cyclic(2)
    flip = CAction(z2, z3, ((0, 1, 2), (0, 2, 1)))
    g = semidirect(z2, z3, flip)
    assert g.n == 6 and g.is_strict()
    assert any(g.add[a][b] != g.add[b][a] for a, b in itertools.product(g.carrier, repeat=2))


def test_with_cong_revalidates():
    z4 = G.cyclic(4)
    g = with_cong(z4, G.coset_relation(G.cyclic_table(4), (0, 2)))
    assert g.related(1, 3) and not g.related(0, 1)
