"""Worst-case strip complexes for persistent homology computation."""

from .complexes import (ComplexFormatError, FilteredComplex, Simplex,
                        euler_characteristic, parse, serialize, simplex,
                        to_json, from_json, validate)
from .f2 import (AdditionCounter, BoundaryMatrix, add_columns, add_into,
                 boundary_matrix, boundary_submatrix, dump, low, rank_f2)
from .generators import (StripLabels, labels, modified_strip,
                         predicted_additions_modified,
                         predicted_additions_modified_components,
                         predicted_additions_strip, strip, strip_sizes)
from .realization import (DeltaUnderflowError, EmbeddingError, FilteredGraph,
                          FlagReport, PointCloudRealization, RealizationError,
                          RealizationReport, clique_complex, compress_levels,
                          embed, flag_check, gram_matrix, one_skeleton,
                          realize, thresholds, verify_realization,
                          vietoris_rips)
from .reduction import (ALGORITHMS, PersistenceDiagram, PersistencePair,
                        ReductionResult, betti_oracle, diagram, extract_pairs,
                        reduce, reduce_lookahead, reduce_standard, reduce_twist)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
