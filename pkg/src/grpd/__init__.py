"""grpd: exact computation with groupoids internal to finite sets.

Decides essential / Morita / Morita-homotopy equivalence, composes
bibundle correspondences, glues descent data, and computes the
geometric-complexity covering invariant by exact search.
"""

from .core import (FinGroupoid, StrictArrow, NatTrans, validate_groupoid,
                   compose_functors, enumerate_functors, cocylinder,
                   are_homotopic, interval_groupoid, pair_groupoid,
                   discrete_groupoid, terminal_groupoid, disjoint_union,
                   restrict)
from .bibundle import (Bibundle, LeftAction, RightAction, unit_bibundle,
                       tensor, functor_to_bibundle, bibundles_isomorphic,
                       are_morita_equivalent, is_principal, transpose,
                       validate_bibundle)
from .homotopy import (Cospan, homotopy_pullback, is_essential_equivalence,
                       is_essential_homotopy_equivalence,
                       are_morita_homotopy_equivalent, skeletonize,
                       skeleton_equal, Skeleton)
from .complexity import (orbits, is_transitive, point_groupoid,
                         morita_point_check, subgroupoid,
                         is_weak_point_subgroupoid, cgeo, relative_cgeo,
                         exists_deformation, locus_key)
from .descent import (Bundle, Cover, CoverPiece, DescentDatum,
                      check_subcanonical, check_cocycle, glue, descend)

__version__ = "0.1.0"
