"""scikit-learn transformer exposing the spectral bounds as graph features."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bounds import BOUND_NAMES, bounds_report
from .graph import Graph

__all__ = ["SpectralBoundTransformer", "check_graphs"]


def check_graphs(X) -> list[Graph]:
    """Coerce ``X`` to a list of graphs.

    Items may be :class:`Graph` instances or ``(n, edges)`` pairs.
    """
    if isinstance(X, Graph):
        raise TypeError("expected a sequence of graphs, got a single Graph")
    out = []
    for i, item in enumerate(X):
        if isinstance(item, Graph):
            out.append(item)
        elif isinstance(item, tuple) and len(item) == 2:
            out.append(Graph(int(item[0]), tuple(map(tuple, item[1]))))
        else:
            raise TypeError(f"sample {i}: cannot interpret {type(item).__name__} as a graph")
    if not out:
        raise ValueError("found 0 graphs, expected at least 1")
    if any(g.n < 1 for g in out):
        raise ValueError("graphs must have at least one vertex")
    return out


class SpectralBoundTransformer(TransformerMixin, BaseEstimator):
    """Map each graph to its spectral treewidth lower bounds.

    Stateless: ``fit`` only validates the parameters. Output columns follow
    ``bounds`` and, with ``include_best``, end with the integer best bound.
    Inapplicable bounds (edgeless graphs) are NaN.

    Parameters
    ----------
    bounds : tuple of str, default all four
        Subset of ``("cs03", "ghnoo24", "thm1", "thm2")``.
    include_best : bool, default True
    """

    def __init__(self, bounds=BOUND_NAMES, include_best=True):
        self.bounds = bounds
        self.include_best = include_best

    def fit(self, X, y=None):
        unknown = set(self.bounds) - set(BOUND_NAMES)
        if unknown or not self.bounds:
            raise ValueError(f"bounds must be a non-empty subset of {BOUND_NAMES}, got {self.bounds!r}")
        check_graphs(X)
        self.bounds_ = tuple(self.bounds)
        self.n_features_out_ = len(self.bounds_) + bool(self.include_best)
        return self

    def transform(self, X):
        check_is_fitted(self, "bounds_")
        rows = []
        for g in check_graphs(X):
            rep = bounds_report(g)
            row = [np.nan if getattr(rep, b) is None else getattr(rep, b) for b in self.bounds_]
            if self.include_best:
                row.append(rep.best_integer)
            rows.append(row)
        return np.asarray(rows, dtype=float)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "bounds_")
        names = list(self.bounds_) + (["best_integer"] if self.include_best else [])
        return np.asarray(names, dtype=object)
