"""Finite-group cohomology: H^1 with nonabelian coefficients, Sha-type
kernels over subgroup families, Baer sums, twists, and group-ring identities."""

from .groups import (
    FiniteGroup,
    GroupAction,
    action_from_generators,
    action_from_json,
    all_actions,
    automorphisms,
    cyclic,
    dihedral,
    direct_product,
    group_from_json,
    library,
    preset,
    quaternion,
    symmetric,
    trivial_action,
)
from .h1 import (
    CohomologyClass,
    baer_sum,
    class_of,
    coboundary,
    crossed_homomorphisms,
    cyclic_family,
    h1,
    h1_paths_agree,
    h1_via_lifts,
    is_cocycle,
    sha_kernel,
    torsor_contraction,
    twist,
    twist_isomorphism,
)
from .ring import (
    GroupRingElement,
    abelian_groups_of_order,
    kolyvagin_derivative_check,
    orbit_count_involution,
)
