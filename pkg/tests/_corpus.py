"""Deterministic graph corpora and independent oracles shared by the tests."""

from __future__ import annotations

import itertools
from functools import lru_cache

from spectw.graph import Family, Graph, generate

GNP_PROBS = (0.2, 0.3, 0.45, 0.6, 0.8)


def gnp_family(seed: int) -> Family:
    n = 4 + seed % 9
    p = GNP_PROBS[(seed // 9) % len(GNP_PROBS)]
    return Family("gnp", (n, p, seed))


@lru_cache(maxsize=None)
def gnp_corpus(count: int = 500) -> tuple[tuple[str, Graph], ...]:
    """``count`` seeded random graphs with 4 <= n <= 12."""
    return tuple((str(f), generate(f)) for f in map(gnp_family, range(count)))


def family_instances(max_n: int = 12) -> list[Family]:
    fams = [Family("complete", (n,)) for n in range(1, max_n + 1)]
    fams += [Family("complete_bipartite", (p, q)) for p in range(1, max_n) for q in range(p, max_n + 1 - p)]
    fams += [Family("path", (n,)) for n in range(1, max_n + 1)]
    fams += [Family("cycle", (n,)) for n in range(3, max_n + 1)]
    fams += [Family("grid", (r, c)) for r in range(1, max_n + 1) for c in range(r, max_n + 1) if r * c <= max_n]
    return fams


@lru_cache(maxsize=None)
def family_corpus(max_n: int = 12) -> tuple[tuple[str, Graph], ...]:
    return tuple((str(f), generate(f)) for f in family_instances(max_n))


def full_corpus() -> tuple[tuple[str, Graph], ...]:
    return family_corpus() + gnp_corpus()


# -- independent oracles ------------------------------------------------------


def union_find_components(g: Graph) -> int:
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in g.edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(g.n)})


def elimination_width(g: Graph, order) -> int:
    """Width of an elimination ordering by explicit fill-in on adjacency sets."""
    adj = {v: set(a) for v, a in enumerate(g.adjacency)}
    width = 0
    for v in order:
        nb = adj.pop(v)
        width = max(width, len(nb))
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
    return width


def brute_force_tw(g: Graph) -> int:
    """Minimum width over all n! orderings."""
    if g.n == 0:
        return -1
    return min(elimination_width(g, p) for p in itertools.permutations(range(g.n)))


def branch_and_bound_tw(g: Graph) -> int:
    """Exhaustive search over elimination sequences, cut off at the best width."""
    best = g.n - 1

    def search(adj, width):
        nonlocal best
        if width >= best:
            return
        if not adj:
            best = width
            return
        for v in sorted(adj):
            nb = adj[v]
            w = max(width, len(nb))
            if w >= best:
                continue
            nxt = {a: (s - {v}) | (nb - {a}) if a in nb else set(s) for a, s in adj.items() if a != v}
            search(nxt, w)

    search({v: set(a) for v, a in enumerate(g.adjacency)}, 0)
    return best
