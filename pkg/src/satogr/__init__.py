"""Exact computations on finite windows of the Sato Grassmannian of k((z)).

Points are subspaces of the window ``z^{-i} k[[z]] / z^{i} k[[z]]``;
coordinates are maximal minors indexed by truncated Maya diagrams.
Arithmetic is exact over Q (fractions) and GF(p).
"""

from ._backend import BACKEND
from .duality import annihilator, gram_matrix, gram_transport, perp, residue_pairing
from .errors import SatoGrError
from .field import GF, QQ, Fp, field_from_name
from .laurent import LaurentVector
from .linalg import ExactMatrix, kernel, rank, rref, subspace_intersect, subspace_sum
from .maya import (
    IndexSet,
    MayaDiagram,
    between_levels,
    charge,
    enumerate_level,
    index_set,
    pad,
    restrict_level,
    sign_normalize,
    truncate,
)
from .operators import BandOperator, MulOperator, act, act_on_plucker, is_glC
from .plucker import (
    QuadraticRelation,
    chart_reconstruct,
    evaluate,
    generate_all,
    generate_relation,
    satisfies_all,
)
from .points import (
    GrassPoint,
    PluckerVector,
    chart_membership,
    embed_level,
    from_maya,
    index_of,
    plucker_vector,
)
from .projgeo import (
    PencilFamily,
    collinear_geometric,
    collinear_plucker,
    pencil,
    pencil_points,
    reference_space,
)
from .restriction import (
    WindowPair,
    check_embedding_diagram,
    inner_contraction,
    pullback_coords,
    pushforward_coords,
    restrict_section,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
