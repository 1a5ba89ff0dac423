import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spectw.graph import Graph, generate, stats
from spectw.spectrum import (
    ConvergenceError,
    eigenvalues,
    lambda2,
    lambda_max,
    laplacian,
    quadratic_form,
    quadratic_form_matrix,
    symmetric_eigenvalues,
)

from _corpus import full_corpus

CORPUS = full_corpus()


def charpoly_roots(g: Graph) -> list[float]:
    """Exact Laplacian spectrum via the characteristic polynomial."""
    lam = sympy.Symbol("lam")
    poly = sympy.Matrix(laplacian(g).tolist()).charpoly(lam)
    roots = sympy.roots(poly.as_expr(), lam)
    return sorted(float(r) for r, mult in roots.items() for _ in range(mult))


def test_laplacian_examples():
    assert laplacian(generate("complete:2")).tolist() == [[1, -1], [-1, 1]]
    assert laplacian(generate("path:3")).tolist() == [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]
    assert laplacian(Graph(2)).tolist() == [[0, 0], [0, 0]]
    with pytest.raises(ValueError):
        laplacian(Graph(0))


@pytest.mark.parametrize("name,g", CORPUS[::11])
def test_laplacian_rows_sum_to_zero(name, g):
    L = laplacian(g)
    assert L.dtype.kind == "i"
    assert (L.sum(axis=1) == 0).all()
    assert (L == L.T).all()


@pytest.mark.parametrize(
    "desc,expected",
    [
        ("complete:2", [0, 2]),
        ("complete:3", [0, 3, 3]),
        ("cycle:4", [0, 2, 2, 4]),
        ("complete_bipartite:1,3", [0, 1, 1, 4]),
        ("path:3", [0, 1, 3]),
    ],
)
def test_eigenvalue_examples(desc, expected):
    got = eigenvalues(generate(desc)).eigenvalues
    assert got == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("desc", ["cycle:4", "complete_bipartite:1,3", "path:3", "grid:2,3"])
def test_examples_against_characteristic_polynomial(desc):
    g = generate(desc)
    assert eigenvalues(g).eigenvalues == pytest.approx(charpoly_roots(g), abs=1e-10)


@pytest.mark.parametrize("n", [3, 4, 5, 7, 10])
def test_cycle_circulant_formula(n):
    expected = sorted(2 - 2 * math.cos(2 * math.pi * k / n) for k in range(n))
    assert eigenvalues(generate(f"cycle:{n}")).eigenvalues == pytest.approx(expected, abs=1e-10)


def test_lambda_examples():
    assert lambda2(generate("complete_bipartite:3,5")) == pytest.approx(3, abs=1e-10)
    assert lambda2(Graph(4, ((0, 1), (2, 3)))) == 0.0
    assert lambda_max(generate("complete:5")) == pytest.approx(5, abs=1e-10)
    with pytest.raises(ValueError):
        lambda2(Graph(1))
    assert eigenvalues(Graph(1)).eigenvalues == (0.0,)


@pytest.mark.parametrize("name,g", CORPUS[::3])
def test_matches_lapack(name, g):
    ours = np.asarray(eigenvalues(g).eigenvalues)
    ref = np.linalg.eigvalsh(laplacian(g).astype(float))
    assert np.allclose(ours, ref, atol=1e-9)


@given(st.integers(1, 30).flatmap(lambda n: arrays(float, (n, n), elements=st.floats(-10, 10))))
@settings(max_examples=100, deadline=None)
def test_symmetric_eigenvalues_random(A):
    A = A + A.T
    ref = np.linalg.eigvalsh(A)
    scale = max(1.0, np.abs(A).sum())
    assert np.allclose(symmetric_eigenvalues(A), ref, atol=1e-10 * scale)


def test_symmetric_eigenvalues_rejects_non_square():
    with pytest.raises(ValueError):
        symmetric_eigenvalues(np.zeros((2, 3)))


def test_convergence_error_surfaces(monkeypatch):
    import spectw.spectrum as sp

    monkeypatch.setattr(sp, "_MAX_QL_ITER", 0)
    with pytest.raises(ConvergenceError):
        sp.eigenvalues(generate("cycle:6"))


def test_deterministic():
    g = generate("gnp:12,0.4,3")
    assert eigenvalues(g) == eigenvalues(g)


@pytest.mark.parametrize("name,g", CORPUS[::2])
def test_spectrum_invariants(name, g):
    spec = eigenvalues(g)
    vals = spec.eigenvalues
    assert list(vals) == sorted(vals)
    assert abs(vals[0]) <= 1e-8
    assert abs(sum(vals) - 2 * g.m) <= 1e-6 * max(1, g.n)
    assert spec.zero_multiplicity == stats(g).component_count
    if g.m:
        degs = g.degrees
        assert vals[-1] >= g.max_degree + 1 - 1e-6
        assert vals[-1] <= max(degs[u] + degs[v] for u, v in g.edges) + 1e-6


@pytest.mark.parametrize("name,g", [c for c in CORPUS if c[1].n >= 2][::2])
def test_lambda2_equals_lambda_max_iff_complete_or_edgeless(name, g):
    spec = eigenvalues(g)
    flat = abs(spec.lambda2 - spec.lambda_max) <= 1e-6
    assert flat == (g.is_complete() or g.m == 0)


@pytest.mark.parametrize("n", range(3, 9))
def test_near_complete_is_not_flat(n):
    g = generate(f"complete:{n}").remove_edge(0, 1)
    spec = eigenvalues(g)
    assert spec.lambda_max - spec.lambda2 > 0.5


def test_quadratic_form_examples():
    assert quadratic_form(generate("complete:3"), [1, 1, 1]) == 0
    assert quadratic_form(generate("complete:2"), [1, -1]) == 4
    assert quadratic_form(generate("path:3"), [1, 0, -1]) == 2
    with pytest.raises(ValueError):
        quadratic_form(generate("path:3"), [1, 0])


@pytest.mark.parametrize("name,g", CORPUS[::9])
def test_quadratic_form_identity_and_rayleigh(name, g):
    rng = np.random.default_rng(g.n * 1000 + g.m)
    spec = eigenvalues(g)
    for _ in range(5):
        x = rng.normal(size=g.n) + 1j * rng.normal(size=g.n)
        norm2 = float(np.sum(np.abs(x) ** 2))
        q = quadratic_form(g, x)
        assert q >= 0
        assert abs(q - quadratic_form_matrix(g, x)) <= 1e-9 * (1 + norm2)
        if g.n >= 2:
            x0 = x - x.mean()
            assert quadratic_form(g, x0) >= (spec.lambda2 - 1e-6) * float(np.sum(np.abs(x0) ** 2))
