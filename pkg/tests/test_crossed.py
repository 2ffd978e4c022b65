from dataclasses import replace

import pytest

from catgroup import groups as G
from catgroup.cgroup import c_subgroup, make_cgroup
from catgroup.crossed import (
    CAction,
    classify,
    conjugation_crossed_module,
    congruence_lift,
    crossed_module,
    derived_weak_special,
    lift_along_special,
    trivial_action,
    validate_action,
    validate_crossed_module,
)
from catgroup.errors import InstanceCorruptionError, PreconditionError, ValidationError
from catgroup.instances import builtin_instance


def test_builtins_are_cssc():
    for name in ("TRIV", "XM4", "S3A3", "K4Z2", "Q8Z", "FZ2"):
        assert classify(builtin_instance(name)).cssc, name


def test_xm4_needs_coset_congruence_on_n():
    # with equality on Z4 the boundary cannot carry the total congruence of Z2
    z2, z4 = G.cyclic(2, "total"), G.cyclic(4)
    with pytest.raises(ValidationError) as e:
        crossed_module(z2, z4, (0, 2), trivial_action(z4, z2))
    assert "boundary.preserves-cong" in e.value.report.names()


def test_xm4_with_total_weak_relation_fails_w3():
    xm = builtin_instance("XM4")
    bad = replace(xm, weak=frozenset((a, b) for a in range(2) for b in range(2)))
    rep = validate_crossed_module(bad)
    assert rep.first("W3").witness == (0, 1)


def test_unique_lift_failure_is_reported():
    # both elements of M lie over the single element of N
    z2 = G.cyclic(2, "total")
    z1 = G.cyclic(1)
    act = trivial_action(z1, z2)
    xm = crossed_module(z2, z1, (0, 0), act, "equality")
    assert classify(xm).cssc
    assert derived_weak_special(replace(xm, weak=frozenset({(0, 0), (1, 1)}))) is None
    with pytest.raises(ValidationError) as e:
        crossed_module(z2, z1, (0, 0), act, "total")
    assert e.value.report.first("special-lift").witness == (0, 0, 2)


def test_classify_flags_non_connected():
    z2 = G.cyclic(2)
    xm = crossed_module(z2, z2, (0, 1), trivial_action(z2, z2))
    f = classify(xm)
    assert f.strict and f.special and not f.connected
    assert f.connected_witness == (0, 1)
    assert "connected=F(0,1)" in f.format()


def test_classify_flags_peiffer_failure():
    # nonabelian M over a point: d(a).a1 = a1 but a + a1 - a differs
    s3 = G.s3("total")
    z1 = G.cyclic(1)
    xm = crossed_module(s3, z1, (0,) * 6, trivial_action(z1, s3))
    f = classify(xm)
    assert f.connected and f.special and not f.strict
    assert f.strict_witness[0] == "CM2"


def test_action_validation_witnesses():
    z3 = G.cyclic(3)
    z2 = G.cyclic(2)
    bad = CAction(z2, z3, ((0, 1, 2), (1, 2, 0)))
    rep = validate_action(bad)
    assert not rep.ok and rep.first("distributes") is not None


def test_lifts():
    xm = builtin_instance("FZ2")
    assert lift_along_special(xm, 0, 1) == 1
    assert congruence_lift(xm, 0, 1) == 1
    with pytest.raises(PreconditionError):
        lift_along_special(xm, 0, 2)


def test_corrupted_lift_is_detected():
    xm = builtin_instance("FZ2")
    broken = replace(xm, weak=frozenset({(0, 0), (1, 1)}))
    with pytest.raises(InstanceCorruptionError):
        lift_along_special(broken, 0, 1)


def test_conjugation_checks_normality():
    s3 = G.s3("equality")
    with pytest.raises(PreconditionError):
        conjugation_crossed_module(s3, c_subgroup(s3, (0, 3)))


def test_derived_weak_special_on_fz2_is_total():
    n = make_cgroup(((0, 1, 2), (1, 0, 2), (2, 2, 1)), 0, (0, 1, 2), [(0, 1)])
    xm = conjugation_crossed_module(n, c_subgroup(n, (0, 1)), "derived")
    assert xm.weak == frozenset((a, b) for a in range(2) for b in range(2))
