"""Exact field patching over the projective line over k[[t]].

The package represents the patch rings and fields of the line with
truncated series, splits branch-ring elements additively, factors group
elements by Newton iteration in a chart, and glues tensor objects from
local data, emitting certificates that an independent verifier re-checks.
"""

from .charts import Chart, cayley_chart, chart_epsilon, check_standard_position, gl_chart, weil_restrict_chart
from .config import SessionConfig
from .errors import FieldPatchError
from .factorization import FactorCert, gl_factor, group_factor, newton_factor
from .patching import (
    PatchingProblem,
    Tensor,
    TensorObject,
    isometry_between,
    isotropy_local_global_demo,
    patch_tensor_object,
    patch_vector_space,
)
from .rational import Poly2, RationalF, expand_rational
from .scalars import GF, QQ, Field
from .series import INF, Laurent, PatchSeries, Tag
from .splitting import additive_factor, intersect_reconstruct, split_residue
from .verify import verify_cert, verify_text

__all__ = [
    "Chart", "cayley_chart", "chart_epsilon", "check_standard_position", "gl_chart", "weil_restrict_chart",
    "SessionConfig", "FieldPatchError", "FactorCert", "gl_factor", "group_factor", "newton_factor",
    "PatchingProblem", "Tensor", "TensorObject", "isometry_between", "isotropy_local_global_demo",
    "patch_tensor_object", "patch_vector_space", "Poly2", "RationalF", "expand_rational",
    "GF", "QQ", "Field", "INF", "Laurent", "PatchSeries", "Tag",
    "additive_factor", "intersect_reconstruct", "split_residue", "verify_cert", "verify_text",
]
