"""Laplacian matrix, its eigenvalues, and the Laplacian quadratic form.

The eigensolver is a self-contained dense symmetric routine: Householder
reduction to tridiagonal form followed by implicit-shift QL iterations on the
tridiagonal matrix. numpy is used only as an array container.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "ConvergenceError",
    "SpectrumResult",
    "TOLERANCE",
    "eigenvalues",
    "lambda2",
    "lambda_max",
    "laplacian",
    "quadratic_form",
    "quadratic_form_matrix",
    "symmetric_eigenvalues",
    "zero_threshold",
]

#: Accuracy guaranteed for each reported eigenvalue at desk scale.
TOLERANCE = 1e-8

_EPS = np.finfo(float).eps
_MAX_QL_ITER = 60


class ConvergenceError(RuntimeError):
    """The QL iteration did not converge for some eigenvalue."""


def laplacian(g: Graph) -> np.ndarray:
    """Integer Laplacian ``D - A`` of ``g`` as an ``(n, n)`` array."""
    if g.n == 0:
        raise ValueError("Laplacian of the empty graph is undefined")
    L = np.zeros((g.n, g.n), dtype=np.int64)
    if g.m:
        e = np.asarray(g.edges)
        L[e[:, 0], e[:, 1]] = -1
        L[e[:, 1], e[:, 0]] = -1
    L[np.diag_indices(g.n)] = g.degrees
    return L


def _tridiagonalize(A: np.ndarray) -> tuple[list[float], list[float]]:
    """Householder reduction. Returns (diagonal, subdiagonal) with len n, n-1."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    for k in range(n - 2):
        x = A[k + 1:, k]
        norm = np.linalg.norm(x)
        if norm == 0.0:
            continue
        alpha = -math.copysign(norm, x[0])
        v = x.copy()
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        # A <- H A H with H = I - 2 v v^T acting on rows/cols k+1..n-1
        sub = A[k + 1:, k:]
        sub -= 2.0 * np.outer(v, v @ sub)
        sub = A[k:, k + 1:]
        sub -= 2.0 * np.outer(sub @ v, v)
    d = [float(t) for t in np.diag(A)]
    e = [float(t) for t in np.diag(A, -1)]
    return d, e


def _tridiagonal_ql(d: list[float], e: list[float]) -> list[float]:
    """Eigenvalues of the symmetric tridiagonal matrix (d, e), in place on d."""
    n = len(d)
    e = list(e) + [0.0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > _MAX_QL_ITER:
                raise ConvergenceError(f"no convergence for eigenvalue {l} after {_MAX_QL_ITER} iterations")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d


def symmetric_eigenvalues(A) -> np.ndarray:
    """All eigenvalues of a dense real symmetric matrix, sorted ascending."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] == 0:
        return np.zeros(0)
    d, e = _tridiagonalize(A)
    vals = _tridiagonal_ql(d, e)
    # stable sort keeps solver order among ties
    return np.sort(np.asarray(vals), kind="stable")


def zero_threshold(m: int) -> float:
    """Eigenvalues at or below this magnitude are classified as zero."""
    return 1e-8 * max(1, 2 * m)


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: tuple[float, ...]
    tolerance: float
    zero_multiplicity: int
    zero_threshold: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def lambda2(self) -> float:
        if self.n < 2:
            raise ValueError("lambda2 needs at least two vertices")
        return self.eigenvalues[1]

    @property
    def lambda_max(self) -> float:
        return self.eigenvalues[-1]

    def to_dict(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "lambda2": self.lambda2 if self.n >= 2 else None,
            "lambda_max": self.lambda_max,
            "tolerance": self.tolerance,
        }


def eigenvalues(g: Graph) -> SpectrumResult:
    """Laplacian spectrum of ``g``, non-decreasing.

    Values within :func:`zero_threshold` of zero are reported as exactly 0.0.
    """
    vals = symmetric_eigenvalues(laplacian(g))
    thr = zero_threshold(g.m)
    vals = np.where(np.abs(vals) <= thr, 0.0, vals)
    return SpectrumResult(
        eigenvalues=tuple(float(v) for v in vals),
        tolerance=TOLERANCE,
        zero_multiplicity=int(np.count_nonzero(vals == 0.0)),
        zero_threshold=thr,
    )


def lambda2(g: Graph) -> float:
    """Algebraic connectivity; 0.0 for disconnected graphs."""
    if g.n < 2:
        raise ValueError("lambda2 needs at least two vertices")
    return eigenvalues(g).lambda2


def lambda_max(g: Graph) -> float:
    return eigenvalues(g).lambda_max


def _as_vector(g: Graph, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (g.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({g.n},)")
    return x


def quadratic_form(g: Graph, x) -> float:
    """``x* L x`` evaluated as the edge sum of ``|x(u) - x(v)|**2``."""
    x = _as_vector(g, x)
    if not g.m:
        return 0.0
    e = np.asarray(g.edges)
    return float(np.sum(np.abs(x[e[:, 0]] - x[e[:, 1]]) ** 2))


def quadratic_form_matrix(g: Graph, x) -> float:
    """``x* L x`` by explicit matrix products; the real part is returned."""
    x = _as_vector(g, x)
    return float(np.real(np.conj(x) @ (laplacian(g) @ x)))
