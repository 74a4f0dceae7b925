from quadembed.ideals.division import multivariate_divide, reduce
from quadembed.ideals.groebner import DEFAULT_BUDGET, IdealBasis, Member, NotMember, buchberger, ideal_membership
from quadembed.ideals.orders import DEFAULT_PRECEDENCE, MonomialOrder
from quadembed.ideals.quotients import (
    KeyNormalForm,
    SubringReport,
    key_normal_form,
    preserved_subring_check,
    sl2_normal_form,
    sl2_relation,
    sl2_ring,
)

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_PRECEDENCE",
    "IdealBasis",
    "KeyNormalForm",
    "Member",
    "MonomialOrder",
    "NotMember",
    "SubringReport",
    "buchberger",
    "ideal_membership",
    "key_normal_form",
    "multivariate_divide",
    "preserved_subring_check",
    "reduce",
    "sl2_normal_form",
    "sl2_relation",
    "sl2_ring",
]
