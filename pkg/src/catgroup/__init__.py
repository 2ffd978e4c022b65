"""Finite c-groups, cssc-crossed modules and the categorical groups built from them."""

from .cgroup import (
    CGroup,
    CGroupMorphism,
    CSubgroup,
    SpecialCert,
    certify_special,
    c_image,
    c_kernel,
    c_subgroup,
    is_connected,
    is_normal,
    is_perfect,
    make_cgroup,
    replay_cert,
    semidirect,
    special_closure,
    validate_cgroup,
)
from .crossed import (
    CAction,
    CCrossedModule,
    CsscFlags,
    classify,
    conjugation_crossed_module,
    derived_weak_special,
    lift_along_special,
    validate_action,
    validate_crossed_module,
)
from .construct import (
    CanonicalArrow,
    SpecialIso,
    Triple,
    add_arrows,
    build_categorical_group,
    compose,
    congruence_square,
    identity_arrow,
    inverse_arrow,
    mk_arrow,
    normalize,
    opposite_arrow,
    zero_arrow,
)
from .model import CatGroupModel
from .errors import CatGroupError

__version__ = "0.1.0"
