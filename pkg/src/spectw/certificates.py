"""Constructive certificates for the spectral treewidth bounds.

Both bounds rest on a balanced partition ``(S, U1, U2, U3)`` of the vertices
with ``|S| <= tw + 1``, ``|Ui| <= (n - |S|) / 2`` and no edge between
different ``Ui``. This module builds such a partition from a tree decomposition
and then checks numerically the inequalities the bounds are derived from:

* a unit-modulus complex test vector ``x`` that is constant on each ``Ui``,
  zero on ``S`` and sums to zero gives
  ``l2 * (n - |S|) <= x* L x <= maxdeg * |S|``;
* for ``X = Ui`` and ``Y = V - S - Ui``:
  ``|S| >= 2 l2 |X| / (lmax - l2)``, summed over ``i``.

Every comparison uses the additive slack ``tau = 1e-6 * n``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .bounds import bound_thm1, bound_thm2
from .exact import TreeDecomposition, validate_td
from .graph import Graph
from .spectrum import SpectrumResult, eigenvalues, quadratic_form

__all__ = [
    "BalancedPartition",
    "CertificateReport",
    "GuLiuResult",
    "InfeasibleTriangleError",
    "PartitionError",
    "Theorem2Report",
    "TriangleCoefficients",
    "balanced_separator",
    "build_test_vector",
    "refine_decomposition",
    "slack",
    "three_partition",
    "triangle_coefficients",
    "verify_gu_liu",
    "verify_theorem1_chain",
    "verify_theorem2_chain",
]


class PartitionError(ValueError):
    """A vertex partition violates its required structure."""


class InfeasibleTriangleError(ValueError):
    """No unit-modulus combination exists: the largest side exceeds half the sum."""


def slack(n: int) -> float:
    return 1e-6 * n


# -- separator ----------------------------------------------------------------


def refine_decomposition(td: TreeDecomposition) -> TreeDecomposition:
    """Subdivide tree edges so adjacent bags differ in exactly one vertex.

    Between bags ``A`` and ``B`` the chain drops ``A - B`` one vertex at a time
    down to ``A & B`` and then adds ``B - A`` one at a time. Every new bag is
    a subset of an original bag, so the width does not grow.
    """
    bags = list(td.bags)
    edges = []
    for a, b in td.tree_edges:
        A, B = bags[a], bags[b]
        prev, cur = a, A
        steps = []
        for v in sorted(A - B):
            cur = cur - {v}
            steps.append(cur)
        for v in sorted(B - A):
            cur = cur | {v}
            steps.append(cur)
        for bag in steps[:-1]:
            bags.append(bag)
            edges.append((prev, len(bags) - 1))
            prev = len(bags) - 1
        edges.append((prev, b))
    return TreeDecomposition(tuple(bags), tuple(edges))


def _heavy_component(g: Graph, S: frozenset[int]) -> list[int] | None:
    cap = (g.n - len(S)) / 2
    for comp in g.components(S):
        if len(comp) > cap:
            return comp
    return None


def balanced_separator(g: Graph, td: TreeDecomposition) -> frozenset[int]:
    """A set ``S``, contained in some bag of ``td``, whose removal leaves only
    components with at most ``(n - |S|) / 2`` vertices.

    Walks the bags of :func:`refine_decomposition`, starting at bag 0 and
    stepping towards the oversized component until none is left. The walk
    cannot step back along the edge it came in on, so it stops after at most
    as many steps as the tree has bags.
    """
    report = validate_td(g, td)
    if not report.valid:
        raise PartitionError("invalid tree decomposition: " + "; ".join(report.failures()))
    if not td.bags:
        return frozenset()
    fine = refine_decomposition(td)
    adj = fine.neighbors()
    t, came_from = 0, None
    for _ in range(len(fine.bags) + 1):
        S = fine.bags[t]
        heavy = _heavy_component(g, S)
        if heavy is None:
            return S
        target = heavy[0]
        step = None
        for u in adj[t]:
            if _subtree_contains(fine, adj, u, t, target):
                step = u
                break
        if step is None or step == came_from:
            raise AssertionError("separator walk reversed; decomposition inconsistent")
        t, came_from = step, t
    raise AssertionError("separator walk did not terminate")


def _subtree_contains(td: TreeDecomposition, adj, start: int, blocked: int, v: int) -> bool:
    stack, seen = [start], {start, blocked}
    while stack:
        a = stack.pop()
        if v in td.bags[a]:
            return True
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return False


# -- three-way partition ------------------------------------------------------


@dataclass(frozen=True)
class BalancedPartition:
    S: frozenset[int]
    U1: frozenset[int]
    U2: frozenset[int]
    U3: frozenset[int]

    @property
    def parts(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        return (self.U1, self.U2, self.U3)

    def violations(self, g: Graph) -> list[str]:
        """Structural problems of this partition for ``g``; empty when valid."""
        out = []
        sets = (self.S,) + self.parts
        if sum(len(s) for s in sets) != g.n or set().union(*sets) != set(range(g.n)):
            out.append("sets do not partition the vertex set")
        cap = (g.n - len(self.S)) / 2
        for i, U in enumerate(self.parts, 1):
            if len(U) > cap:
                out.append(f"|U{i}| = {len(U)} exceeds (n - |S|)/2 = {cap}")
        label = {}
        for i, U in enumerate(self.parts):
            for v in U:
                label[v] = i
        for u, v in g.edges:
            if u in label and v in label and label[u] != label[v]:
                out.append(f"edge ({u}, {v}) joins U{label[u] + 1} and U{label[v] + 1}")
                break
        return out

    def to_dict(self) -> dict:
        return {k: sorted(getattr(self, k)) for k in ("S", "U1", "U2", "U3")}


def _assign(sizes: list[int], cap: float) -> list[int] | None:
    """Bin index per component, largest first into the least-loaded bin."""
    loads = [0, 0, 0]
    bins = [0] * len(sizes)
    for i in sorted(range(len(sizes)), key=lambda i: (-sizes[i], i)):
        b = min(range(3), key=lambda j: (loads[j], j))
        loads[b] += sizes[i]
        bins[i] = b
    if max(loads) <= cap:
        return bins
    for bins in itertools.product(range(3), repeat=len(sizes)):
        loads = [0, 0, 0]
        for s, b in zip(sizes, bins):
            loads[b] += s
        if max(loads) <= cap:
            return list(bins)
    return None


def three_partition(g: Graph, S: Iterable[int]) -> BalancedPartition:
    """Group the components of ``G - S`` into three bins of size at most
    ``(n - |S|) / 2``."""
    S = frozenset(S)
    comps = g.components(S)
    cap = (g.n - len(S)) / 2
    sizes = [len(c) for c in comps]
    if any(s > cap for s in sizes):
        raise PartitionError(f"component of size {max(sizes)} exceeds (n - |S|)/2 = {cap}")
    bins = _assign(sizes, cap)
    if bins is None:
        raise AssertionError("no balanced assignment of components to three bins")
    groups: list[set[int]] = [set(), set(), set()]
    for comp, b in zip(comps, bins):
        groups[b].update(comp)
    return BalancedPartition(S, *(frozenset(x) for x in groups))


# -- unit complex coefficients ------------------------------------------------


@dataclass(frozen=True)
class TriangleCoefficients:
    a: float
    b: float
    c: float
    alpha: complex
    beta: complex
    gamma: complex
    theta: float = 0.0
    phi: float = 0.0

    @property
    def residual(self) -> float:
        return abs(self.a * self.alpha + self.b * self.beta + self.c * self.gamma)

    @property
    def coefficients(self) -> tuple[complex, complex, complex]:
        return (self.alpha, self.beta, self.gamma)


def _triangle_area4(x: float, y: float, z: float) -> float:
    """Four times the area of the triangle with sides x, y, z (Kahan's form)."""
    x, y, z = sorted((x, y, z), reverse=True)
    prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z))
    return math.sqrt(max(prod, 0.0))


def triangle_coefficients(a: float, b: float, c: float) -> TriangleCoefficients:
    """Unit complex numbers with ``a*alpha + b*beta + c*gamma == 0``.

    Exists iff ``max(a, b, c) <= (a + b + c) / 2``. With the largest side
    moved to the third slot, the two others are placed along a triangle with
    side lengths ``a``, ``b``, ``c``: ``alpha = exp(i theta)``,
    ``beta = exp(-i phi)``, ``gamma = -1`` where ``theta`` and ``phi`` are the
    angles facing ``b`` and ``a``. A degenerate triangle (``a + b == c``)
    gives ``(1, 1, -1)``.
    """
    sides = (float(a), float(b), float(c))
    if any(s < 0 or not math.isfinite(s) for s in sides):
        raise ValueError(f"sides must be finite and nonnegative, got {sides}")
    total = sum(sides)
    # exact comparison; floats convert to Fraction without rounding
    excess = 2 * Fraction(max(sides)) - sum(map(Fraction, sides))
    if excess > 2 * min(1e-9, 1e-12 * max(1.0, total)):
        raise InfeasibleTriangleError(f"max side {max(sides)} exceeds half the sum {total / 2}")

    zeros = [i for i, s in enumerate(sides) if s == 0]
    if zeros:
        coef = [1 + 0j] * 3
        if len(zeros) == 1:
            # remaining two sides are equal; they cancel
            coef[[i for i in range(3) if i not in zeros][1]] = -1 + 0j
        return TriangleCoefficients(*sides, *coef)

    k = max(range(3), key=lambda i: (sides[i], i))
    perm = [i for i in range(3) if i != k] + [k]
    pa, pb, pc = (sides[i] for i in perm)
    if abs(pa + pb - pc) <= 1e-12 * total:
        coef_p = [1 + 0j, 1 + 0j, -1 + 0j]
        theta = phi = 0.0
    else:
        area4 = _triangle_area4(pa, pb, pc)
        theta = math.atan2(area4, pa * pa + pc * pc - pb * pb)
        phi = math.atan2(area4, pb * pb + pc * pc - pa * pa)
        coef_p = [cmath.exp(1j * theta), cmath.exp(-1j * phi), -1 + 0j]
    coef = [0j] * 3
    for slot, i in enumerate(perm):
        coef[i] = coef_p[slot]
    return TriangleCoefficients(*sides, *coef, theta=theta, phi=phi)


def build_test_vector(partition: BalancedPartition, n: int | None = None) -> np.ndarray:
    """Complex vector equal to the i-th coefficient on ``Ui`` and 0 on ``S``."""
    if n is None:
        n = len(partition.S) + sum(len(U) for U in partition.parts)
    tri = triangle_coefficients(*(len(U) for U in partition.parts))
    x = np.zeros(n, dtype=complex)
    for U, coef in zip(partition.parts, tri.coefficients):
        x[sorted(U)] = coef
    return x


# -- inequality chains --------------------------------------------------------


def _spectrum(g: Graph, spectrum: SpectrumResult | None) -> SpectrumResult:
    return spectrum if spectrum is not None else eigenvalues(g)


def _complex_json(z: complex) -> list[float]:
    return [z.real, z.imag]


@dataclass
class CertificateReport:
    partition: BalancedPartition
    x: np.ndarray
    coefficients: tuple[complex, complex, complex]
    sum_x: complex
    norm_sq: float
    qform: float
    lower: float
    upper: float
    lambda2: float
    max_degree: int
    implied_bound: float | None
    tau: float
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict:
        return {
            "partition": self.partition.to_dict(),
            "coefficients": [_complex_json(z) for z in self.coefficients],
            "x": [_complex_json(complex(z)) for z in self.x],
            "sum_x": _complex_json(self.sum_x),
            "norm_sq": self.norm_sq,
            "quadratic_form": self.qform,
            "lower": self.lower,
            "upper": self.upper,
            "lambda2": self.lambda2,
            "max_degree": self.max_degree,
            "implied_separator_bound": self.implied_bound,
            "tau": self.tau,
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def verify_theorem1_chain(
    g: Graph, partition: BalancedPartition, spectrum: SpectrumResult | None = None
) -> CertificateReport:
    """Check ``l2 (n - |S|) <= x* L x <= maxdeg |S|`` for the test vector.

    Also checks ``sum(x) == 0``, ``|x|^2 == n - |S|`` and the consequence
    ``|S| >= n l2 / (maxdeg + l2)``.
    """
    problems = partition.violations(g)
    if problems:
        raise PartitionError("; ".join(problems))
    n, s = g.n, len(partition.S)
    tau = slack(n)
    l2 = _spectrum(g, spectrum).lambda2 if n >= 2 else 0.0
    D = g.max_degree
    x = build_test_vector(partition, n)
    coefs = triangle_coefficients(*(len(U) for U in partition.parts)).coefficients
    sum_x = complex(np.sum(x))
    norm_sq = float(np.sum(np.abs(x) ** 2))
    qform = quadratic_form(g, x)
    lower = l2 * (n - s)
    upper = float(D * s)
    implied = bound_thm1(n, D, l2)
    implied = None if implied is None else implied + 1

    checks = {
        "sum_zero": abs(sum_x) <= 1e-9 * max(1, n),
        "norm_sq": abs(norm_sq - (n - s)) <= 1e-9 * max(1, n),
        "lower": lower - tau <= qform,
        "upper": qform <= upper + tau,
    }
    if implied is not None:
        checks["implied_separator_bound"] = s >= implied - tau
    return CertificateReport(
        partition, x, coefs, sum_x, norm_sq, qform, lower, upper, l2, D, implied, tau, checks
    )


@dataclass(frozen=True)
class GuLiuResult:
    """``|S| >= 2 l2 |X| / (lmax - l2)``; ``applicable`` is False for complete
    or edgeless graphs, where the inequality is not claimed."""

    applicable: bool
    lhs: float
    rhs: float | None
    margin: float | None
    tau: float

    @property
    def passed(self) -> bool:
        return not self.applicable or self.margin >= -self.tau

    def to_dict(self) -> dict:
        return {"applicable": self.applicable, "lhs": self.lhs, "rhs": self.rhs,
                "margin": self.margin, "tau": self.tau, "passed": self.passed}


def verify_gu_liu(
    g: Graph,
    S: Iterable[int],
    X: Iterable[int],
    Y: Iterable[int],
    spectrum: SpectrumResult | None = None,
) -> GuLiuResult:
    S, X, Y = frozenset(S), frozenset(X), frozenset(Y)
    if len(S) + len(X) + len(Y) != g.n or (S | X | Y) != frozenset(range(g.n)):
        raise PartitionError("(S, X, Y) does not partition the vertex set")
    if len(X) > len(Y):
        raise PartitionError(f"|X| = {len(X)} exceeds |Y| = {len(Y)}")
    nbr = g.neighbor_masks
    ymask = sum(1 << v for v in Y)
    for v in X:
        if nbr[v] & ymask:
            raise PartitionError(f"vertex {v} in X has a neighbor in Y")
    tau = slack(g.n)
    if g.m == 0 or g.is_complete():
        return GuLiuResult(False, float(len(S)), None, None, tau)
    spec = _spectrum(g, spectrum)
    l2, lmax = spec.lambda2, spec.lambda_max
    gap = lmax - l2
    if gap <= spec.tolerance:
        return GuLiuResult(False, float(len(S)), None, None, tau)
    rhs = 2 * l2 * len(X) / gap
    return GuLiuResult(True, float(len(S)), rhs, len(S) - rhs, tau)


@dataclass
class Theorem2Report:
    complete_branch: bool
    instances: list[GuLiuResult]
    summed_lhs: float | None
    summed_rhs: float | None
    bound: float | None
    separator_size: int
    tau: float
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict:
        return {
            "complete_branch": self.complete_branch,
            "instances": [r.to_dict() for r in self.instances],
            "summed_lhs": self.summed_lhs,
            "summed_rhs": self.summed_rhs,
            "bound": self.bound,
            "separator_size": self.separator_size,
            "tau": self.tau,
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def verify_theorem2_chain(
    g: Graph, partition: BalancedPartition, spectrum: SpectrumResult | None = None
) -> Theorem2Report:
    """Sum the three ``X = Ui`` instances of the separator inequality.

    For a complete graph the separator argument does not apply; instead it
    checks ``l2 == lmax == n`` and that the bound equals ``n - 1``.
    """
    problems = partition.violations(g)
    if problems:
        raise PartitionError("; ".join(problems))
    n, s = g.n, len(partition.S)
    tau = slack(n)
    if g.m == 0:
        return Theorem2Report(False, [], None, None, None, s, tau, {})
    spec = _spectrum(g, spectrum)
    l2, lmax = spec.lambda2, spec.lambda_max
    bound = bound_thm2(n, l2, lmax)
    if g.is_complete():
        checks = {
            "lambda2_equals_n": abs(l2 - n) <= tau,
            "lambda_max_equals_n": abs(lmax - n) <= tau,
            "bound_equals_n_minus_1": abs(bound - (n - 1)) <= tau,
        }
        return Theorem2Report(True, [], None, None, bound, s, tau, checks)

    instances = []
    for U in partition.parts:
        rest = frozenset(range(n)) - partition.S - U
        instances.append(verify_gu_liu(g, partition.S, U, rest, spec))
    gap = lmax - l2
    summed_lhs = 3.0 * s
    summed_rhs = 2 * l2 * (n - s) / gap
    checks = {f"instance_U{i}": r.passed for i, r in enumerate(instances, 1)}
    checks["summed"] = summed_lhs >= summed_rhs - 3 * tau
    checks["implied_separator_bound"] = s >= bound + 1 - tau
    return Theorem2Report(False, instances, summed_lhs, summed_rhs, bound, s, tau, checks)
