"""Exact computations with representation spaces of noncommutative algebras."""
from .cayley_hamilton import ch_check, ch_coefficients, standard_identity, trace_reduce
from .errors import (CyclicQuiverError, DimensionError, MathError, NcrepError, RelationViolated,
                     SchurCheckError, SingularMatrixError, ValidationError)
from .exact import Matrix, NcPolynomial, TracePolynomial
from .filtration import (FiltrationProfile, FinDimAlgebra, abelianization, commutator_filtration,
                         fixture_b_algebra, lie_layer, matrix_algebra, nil_d_test)
from .invariants import CycleTrace, block_decomposition, cycle_generators, evaluate_cycle, word_trace
from .local_structure import (LocalData, SmoothnessReport, local_quiver, predicted_dim, smoothness_report,
                              strata_check, strata_label)
from .quiver import Arrow, Necklace, Path, PathElement, Quiver, enumerate_necklaces, enumerate_paths, euler_form
from .rep_scheme import (Presentation, QuiverRep, RepPoint, SemisimplePoint, base_change, conjugate,
                         direct_sum, ext1_dim_presented, ext1_dim_quiver, free_product, hom_dim,
                         path_algebra_presentation, tangent_dim, verify_point)

__all__ = [
    "abelianization", "Arrow", "base_change", "block_decomposition", "ch_check", "ch_coefficients",
    "commutator_filtration", "conjugate", "cycle_generators", "CycleTrace", "CyclicQuiverError",
    "DimensionError", "direct_sum", "enumerate_necklaces", "enumerate_paths", "euler_form", "evaluate_cycle",
    "ext1_dim_presented", "ext1_dim_quiver", "FiltrationProfile", "FinDimAlgebra", "fixture_b_algebra",
    "free_product", "hom_dim", "lie_layer", "local_quiver", "LocalData", "MathError", "Matrix",
    "matrix_algebra", "NcPolynomial", "NcrepError", "Necklace", "nil_d_test", "Path",
    "path_algebra_presentation", "PathElement", "predicted_dim", "Presentation", "Quiver", "QuiverRep",
    "RelationViolated", "RepPoint", "SchurCheckError", "SemisimplePoint", "SingularMatrixError",
    "smoothness_report", "SmoothnessReport", "standard_identity", "strata_check", "strata_label",
    "tangent_dim", "trace_reduce", "TracePolynomial", "ValidationError", "verify_point", "word_trace",
]

__version__ = "0.1.0"
