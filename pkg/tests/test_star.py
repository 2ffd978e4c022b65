from dataclasses import replace

import pytest

from catgroup.construct import build_categorical_group
from catgroup.crossed import classify
from catgroup.errors import PreconditionError
from catgroup.instances import builtin_instance
from catgroup.star import (
    ClassicalCrossedModule,
    cker_action,
    classical_core,
    classical_problems,
    find_model_isomorphism,
    group_groupoid_from_classical,
    is_model_isomorphism,
    objects_cgroup,
    round_trip,
    star_action,
    star_crossed_module,
    star_zero,
)
from catgroup.verify import verify_all


def gg(name):
    return group_groupoid_from_classical(classical_core(builtin_instance(name)))


def test_group_groupoid_sizes_and_axioms():
    assert gg("XM4").n_arrows == 8
    assert gg("S3A3").n_arrows == 18
    triv = gg("TRIV")
    assert (triv.n_objects, triv.n_arrows) == (1, 1)
    for name in ("XM4", "S3A3", "Q8Z"):
        assert verify_all(gg(name)).ok


def test_classical_oracle_rejects_bad_tables():
    x = classical_core(builtin_instance("S3A3"))
    trivial = tuple(tuple(range(3)) for _ in range(6))
    probs = classical_problems(replace(x, action=trivial))
    assert any("equivariance" in p for p in probs)
    with pytest.raises(PreconditionError):
        group_groupoid_from_classical(replace(x, boundary=(0, 3, 4)))


def test_classical_core_refuses_fattened_tables():
    with pytest.raises(PreconditionError):
        classical_core(builtin_instance("FZ2"))


def test_star_zero_of_xm4_is_z2_total():
    sz = star_zero(gg("XM4"))
    g = sz.group
    assert g.n == 2 and len(g.cong) == 4 and g.is_strict()


def test_star_zero_of_s3a3_is_z3_total():
    g = star_zero(gg("S3A3")).group
    assert g.n == 3 and len(g.cong) == 9
    assert all(g.add[a][b] == g.add[b][a] for a in g.carrier for b in g.carrier)


def test_star_action_recovers_conjugation():
    xm = builtin_instance("S3A3")
    act = star_action(gg("S3A3"))
    assert act.table == xm.action.table
    xm4 = builtin_instance("XM4")
    assert star_action(gg("XM4")).table == xm4.action.table


def test_objects_congruence_is_arrow_existence():
    objs = objects_cgroup(gg("XM4"))
    assert objs.related(1, 3) and not objs.related(0, 1)


@pytest.mark.parametrize("name", ["TRIV", "XM4", "S3A3", "K4Z2", "Q8Z"])
def test_star_of_strict_is_cssc_with_equalities(name):
    xs = star_crossed_module(gg(name))
    assert classify(xs).cssc
    assert xs.weak == frozenset((a, a) for a in xs.m.carrier)
    assert xs.n.special == frozenset((a, a) for a in xs.n.carrier)


def test_star_of_fz2_model_is_cssc():
    m = build_categorical_group(builtin_instance("FZ2"))
    xs = star_crossed_module(m)
    assert classify(xs).cssc
    assert not xs.n.is_strict()


@pytest.mark.parametrize("name", ["XM4", "S3A3", "FZ2"])
def test_kernel_action_is_valid(name):
    xm = builtin_instance(name)
    ka = cker_action(build_categorical_group(xm))
    assert ka.action.acted.n == len(ka.arrows)


def test_round_trip_reports():
    rep = round_trip(classical_core(builtin_instance("XM4")))
    assert rep.ok and rep.arrows_built == 8
    text = rep.format()
    assert "isomorphism found" in text and "arrow map" in text
    assert round_trip(classical_core(builtin_instance("TRIV"))).ok


def test_isomorphism_search_negative_and_check():
    a, b = gg("XM4"), gg("K4Z2")
    # same sizes, different object groups (Z4 versus Z2 x Z2)
    assert (a.n_objects, a.n_arrows) == (b.n_objects, b.n_arrows)
    assert find_model_isomorphism(a, b) is None
    phi = find_model_isomorphism(a, a)
    assert phi is not None and is_model_isomorphism(a, a, phi)


def test_non_catgroup_input_rejected():
    m = gg("XM4")
    with pytest.raises(PreconditionError):
        star_zero(replace(m, neg_arr=tuple(m.arrows)))


def test_classical_shape_errors():
    x = ClassicalCrossedModule(((0,),), ((0, 1), (1, 0)), (0,), ((0,),))
    assert classical_problems(x) == ["action table has the wrong shape"]
