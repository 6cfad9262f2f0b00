"""m-closures of permutation groups, with the linear-group machinery used to test
3-closures of solvable affine groups."""

from .closure import (
    ClosureResult,
    is_m_closed,
    is_partly_regular,
    is_two_closed_restriction,
    m_closure,
    m_closure_brute,
    one_closure,
    two_closure,
    two_closure_brute,
)
from .kernels import BACKEND
from .morbits import TupleColoring, are_m_equivalent, m_orbit_coloring, read_coloring, write_coloring
from .perm import (
    GroupError,
    Perm,
    PermGroup,
    alternating_group,
    cyclic_group,
    dihedral_group,
    group_from_generators,
    symmetric_group,
    trivial_group,
)
from .products import direct_sum, wreath_imprimitive, wreath_product_action

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ClosureResult",
    "GroupError",
    "Perm",
    "PermGroup",
    "TupleColoring",
    "alternating_group",
    "are_m_equivalent",
    "cyclic_group",
    "dihedral_group",
    "direct_sum",
    "group_from_generators",
    "is_m_closed",
    "is_partly_regular",
    "is_two_closed_restriction",
    "m_closure",
    "m_closure_brute",
    "m_orbit_coloring",
    "one_closure",
    "read_coloring",
    "symmetric_group",
    "trivial_group",
    "two_closure",
    "two_closure_brute",
    "wreath_imprimitive",
    "wreath_product_action",
    "write_coloring",
]
