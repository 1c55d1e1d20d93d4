"""Scikit-learn style front ends for reduction and realization.

These wrappers follow the estimator protocol (get_params/set_params,
fit returning self, trailing-underscore fitted attributes) so the library
composes with sklearn pipelines and model-selection tooling.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .complexes import FilteredComplex, validate
from .f2 import boundary_matrix
from .realization import (FilteredGraph, clique_complex, realize,
                          verify_realization, vietoris_rips)
from .reduction import ALGORITHMS, diagram, extract_pairs, reduce


def check_filtered_complex(X) -> FilteredComplex:
    """Validate an input complex, raising on the first violation."""
    if not isinstance(X, FilteredComplex):
        raise TypeError(f"expected a FilteredComplex, got {type(X).__name__}")
    report = validate(X)
    if not report.ok:
        raise ValueError(f"invalid filtered complex: {report.violations[0]} "
                         f"({len(report.violations)} violation(s))")
    return X


def check_filtered_graph(X) -> FilteredGraph:
    if not isinstance(X, FilteredGraph):
        raise TypeError(f"expected a FilteredGraph, got {type(X).__name__}")
    return X


class PersistenceReducer(BaseEstimator, TransformerMixin):
    """Compute persistence diagrams of a filtered complex by matrix reduction.

    Parameters
    ----------
    algorithm : {"standard", "twist", "lookahead"}
    record_trace : bool, record every column addition performed.
    """

    def __init__(self, algorithm: str = "standard", record_trace: bool = False):
        self.algorithm = algorithm
        self.record_trace = record_trace

    def fit(self, X, y=None):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        X = check_filtered_complex(X)
        self.result_ = reduce(boundary_matrix(X), self.algorithm,
                              self.record_trace)
        self.pairs_ = extract_pairs(self.result_, X)
        self.diagram_ = diagram(self.pairs_)
        self.counter_ = self.result_.counter
        return self

    def transform(self, X):
        """Diagram points of X as an array of (dimension, birth, death) rows."""
        if not hasattr(self, "result_"):
            raise NotFittedError("call fit before transform")
        X = check_filtered_complex(X)
        result = reduce(boundary_matrix(X), self.algorithm)
        dgm = diagram(extract_pairs(result, X))
        rows = [(dim, b, d)
                for dim, pts in sorted(dgm.points.items())
                for b, d in pts]
        return np.array(rows, dtype=float).reshape(-1, 3)


class VietorisRipsRealizer(BaseEstimator, TransformerMixin):
    """Embed a filtered graph as a point cloud and rebuild its filtration.

    fit computes the embedding (points_, radii_, gram_, level_map_);
    transform returns the Vietoris-Rips filtered complex of the stored
    realization, which is isomorphic stage-by-stage to the clique-complex
    filtration of the input graph.
    """

    def __init__(self, verify: bool = False):
        self.verify = verify

    def fit(self, X, y=None):
        X = check_filtered_graph(X)
        realization = realize(X)
        self.realization_ = realization
        self.points_ = np.array(realization.points)
        self.radii_ = list(realization.radii)
        self.gram_ = realization.gram
        self.level_map_ = list(realization.level_map)
        if self.verify:
            report = verify_realization(X)
            if not report.ok:
                raise ValueError(f"realization round trip failed: "
                                 f"{(report.edge_mismatches + [report.diagram_mismatch])[0]}")
        return self

    def transform(self, X=None):
        if not hasattr(self, "realization_"):
            raise NotFittedError("call fit before transform")
        r = self.realization_
        from mpmath import mp
        with mp.workprec(r.precision_bits):
            return vietoris_rips(r._mp_points, r._mp_radii)
