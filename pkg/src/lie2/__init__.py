"""Exact computations with Lie 2-algebras over GF(2^k)."""

__version__ = "0.1.0"

from .field import FieldSpec, Scalar, arith, field_make, frobenius_sqrt  # noqa: E402
from .exactla import Subspace, nullspace, rref, subspace_combine  # noqa: E402
from .core import (  # noqa: E402
    LieAlgebra,
    center,
    centralizer,
    derived_dims,
    derived_series,
    ideal_closure,
    quotient_by_ideal,
    verify_axioms,
)
from .restricted import (  # noqa: E402
    NotRestricted,
    Torus,
    TwoMap,
    cartan_subalgebra,
    toral_rank_of_cartan,
    toral_span,
    two_map_derive,
    two_map_eval,
    two_map_verify,
)
from .classical import ClassicalSpec, build_classical, congruence_iso, form_algebra  # noqa: E402
from .chevalley import chevalley_mod2, classical_quotient, roots_from_cartan  # noqa: E402
from .contragredient import assemble, build_local, extend_degree, kac_veisfeiler, root_decomposition  # noqa: E402
from .simplicity import SimplicityVerdict, centroid, is_simple, is_simple_fast, is_simple_oracle  # noqa: E402
