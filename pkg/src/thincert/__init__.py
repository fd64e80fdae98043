"""thincert: certifying exact linear algebra over Q and GF(p).

For a sparse matrix over an exact field the library produces one of two
verified certificates: an injection of columns into rows through nonzero
entries, or a nonzero kernel vector.  Around that dichotomy it offers a
two-sided diagonal rearrangement, a string weighting with rank witnesses,
and an incremental consistency checker for streamed equation rows.
"""

from .field import FieldElement, FieldSpec, parse_scalar
from .linalg import (SparseMatrix, UnsolvabilityCertificate, Vector, kernel_basis,
                     rank, solve, unsolvable_core)
from .bigraph import (Matching, SupportGraph, Vertex, cantor_bernstein_merge,
                      deficiency_string, hall_violator, max_matching, support_graph)
from .strings import (DependentColumnsError, MuValue, OmegaBlock, OrdinalString,
                      SaturatedString, WitnessPair, is_saturated, lemma_witness,
                      mu_finite, mu_ordinal, parse_string_literal, parse_vertex,
                      unlisted_rows_vanish)
from .certify import Bijection, Certificate, Dependence, Sdr, certify_columns, diagonalize
from .stream import AllPrefixesSolvable, StreamState, StreamStatus, UnsolvableAt
from .files import (MatrixFormatError, parse_field_token, parse_matrix,
                    parse_stream_row, render_matrix)

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "FieldElement", "parse_scalar",
    "Vector", "SparseMatrix", "UnsolvabilityCertificate",
    "rank", "kernel_basis", "solve", "unsolvable_core",
    "Vertex", "SupportGraph", "Matching",
    "support_graph", "max_matching", "hall_violator",
    "deficiency_string", "cantor_bernstein_merge",
    "MuValue", "SaturatedString", "OmegaBlock", "OrdinalString", "WitnessPair",
    "DependentColumnsError", "parse_vertex", "parse_string_literal",
    "is_saturated", "mu_finite", "mu_ordinal", "lemma_witness",
    "unlisted_rows_vanish",
    "Sdr", "Dependence", "Certificate", "Bijection",
    "certify_columns", "diagonalize",
    "StreamState", "StreamStatus", "AllPrefixesSolvable", "UnsolvableAt",
    "MatrixFormatError", "parse_matrix", "render_matrix",
    "parse_field_token", "parse_stream_row",
    "__version__",
]
