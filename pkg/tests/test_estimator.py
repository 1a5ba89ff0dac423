import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from spectw.bounds import bounds_report
from spectw.estimator import SpectralBoundTransformer, check_graphs
from spectw.graph import Graph, generate

GRAPHS = [generate("complete_bipartite:3,5"), generate("complete:5"), Graph(3), generate("cycle:6")]


def test_transform_matches_report():
    X = SpectralBoundTransformer().fit_transform(GRAPHS)
    assert X.shape == (4, 5)
    rep = bounds_report(GRAPHS[0])
    assert X[0, :4] == pytest.approx([rep.cs03, rep.ghnoo24, rep.thm1, rep.thm2])
    assert X[0, 4] == 2 and X[1, 4] == 4
    assert np.isnan(X[2, :4]).all() and X[2, 4] == 0


def test_subset_and_feature_names():
    est = SpectralBoundTransformer(bounds=("thm1",), include_best=False).fit(GRAPHS)
    assert est.get_feature_names_out().tolist() == ["thm1"]
    assert est.transform(GRAPHS[:1]).tolist() == [[pytest.approx(2.0)]]


def test_params_and_clone():
    est = SpectralBoundTransformer(bounds=("thm2", "thm1"))
    assert est.get_params() == {"bounds": ("thm2", "thm1"), "include_best": True}
    assert clone(est).get_params() == est.get_params()


def test_not_fitted():
    with pytest.raises(NotFittedError):
        SpectralBoundTransformer().transform(GRAPHS)


def test_bad_bounds():
    with pytest.raises(ValueError):
        SpectralBoundTransformer(bounds=("thm9",)).fit(GRAPHS)


def test_pipeline_composition():
    pipe = make_pipeline(SpectralBoundTransformer(include_best=False), FunctionTransformer(np.nan_to_num))
    out = pipe.fit_transform(GRAPHS)
    assert out.shape == (4, 4) and np.isfinite(out).all()


def test_check_graphs():
    assert check_graphs([(2, [(0, 1)])]) == [generate("complete:2")]
    with pytest.raises(TypeError):
        check_graphs(generate("complete:2"))
    with pytest.raises(TypeError):
        check_graphs([np.eye(2)])
    with pytest.raises(ValueError):
        check_graphs([])
    with pytest.raises(ValueError):
        check_graphs([Graph(0)])
