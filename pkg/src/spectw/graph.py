"""Simple undirected graphs, text formats, and the generator families."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Family",
    "Graph",
    "GraphFormatError",
    "GraphStats",
    "disjoint_union",
    "generate",
    "parse_edge_list",
    "parse_family",
    "parse_pace_gr",
    "read_graph",
    "stats",
    "to_edge_list",
    "to_pace_gr",
]


class GraphFormatError(ValueError):
    """Raised for malformed graph text or invalid edge sets."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0 .. n-1``.

    ``edges`` may be given in any order and orientation; it is normalized to a
    sorted tuple of ``(u, v)`` pairs with ``u < v``. Self-loops, duplicate
    edges and out-of-range endpoints raise :class:`GraphFormatError`.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphFormatError(f"vertex count must be >= 0, got {self.n}")
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphFormatError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Neighborhood of each vertex as an integer bitmask."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.neighbor_masks[u] >> v) & 1 == 1

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components of the graph minus ``removed``.

        Components are sorted lists, ordered by their smallest vertex.
        """
        blocked = set(removed)
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s] or s in blocked:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if not seen[w] and w not in blocked:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = (min(u, v), max(u, v))
        if e not in set(self.edges):
            raise KeyError(e)
        return Graph(self.n, tuple(f for f in self.edges if f != e))


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    max_degree: int
    component_count: int


def stats(g: Graph) -> GraphStats:
    return GraphStats(g.n, g.m, g.max_degree, len(g.components()))


# -- text formats -------------------------------------------------------------


def parse_pace_gr(text: str) -> Graph:
    """Parse PACE ``.gr`` text (1-indexed) into a 0-indexed :class:`Graph`."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise GraphFormatError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "tw":
                raise GraphFormatError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise GraphFormatError(f"line {lineno}: negative counts in header")
            continue
        if header is None:
            raise GraphFormatError(f"line {lineno}: edge before header")
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two endpoints, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer endpoint in {line!r}") from None
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"line {lineno}: vertex index out of range 1..{n}")
        edges.append((u - 1, v - 1))
    if header is None:
        raise GraphFormatError("missing 'p tw <n> <m>' header")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


_COUNT_LINE = re.compile(r"^\s*#\s*n\s*=\s*(\d+)\s*$")


def parse_edge_list(text: str) -> Graph:
    """Parse a 0-indexed ``u v`` edge list.

    The vertex count is ``max label + 1`` unless a line ``# n = <count>``
    declares it explicitly (needed for trailing isolated vertices).
    """
    n_declared = None
    tokens: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        match = _COUNT_LINE.match(raw)
        if match:
            n_declared = int(match.group(1))
            continue
        line = raw.split("#", 1)[0]
        for tok in line.split():
            try:
                tokens.append(int(tok))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer token {tok!r}") from None
    if len(tokens) % 2:
        raise GraphFormatError("odd number of endpoint tokens")
    if any(t < 0 for t in tokens):
        raise GraphFormatError("negative vertex label")
    edges = list(zip(tokens[::2], tokens[1::2]))
    n = max(tokens, default=-1) + 1
    if n_declared is not None:
        if n_declared < n:
            raise GraphFormatError(f"declared n={n_declared} but label {n - 1} present")
        n = n_declared
    return Graph(n, tuple(edges))


def to_pace_gr(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def to_edge_list(g: Graph) -> str:
    lines = [f"# n = {g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    """Read a ``.gr`` file, or an edge list for any other suffix."""
    path = str(path)
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".gr"):
        return parse_pace_gr(text)
    return parse_edge_list(text)


# -- generators ---------------------------------------------------------------

_ARITY = {
    "complete": 1,
    "complete_bipartite": 2,
    "path": 1,
    "cycle": 1,
    "grid": 2,
    "gnp": 3,
}


@dataclass(frozen=True)
class Family:
    """A generator family with its arguments, e.g. ``Family("grid", (3, 4))``."""

    name: str
    args: tuple = field(default=())

    def __post_init__(self):
        if self.name not in _ARITY:
            raise ValueError(f"unknown family {self.name!r}; choose from {sorted(_ARITY)}")
        if len(self.args) != _ARITY[self.name]:
            raise ValueError(f"{self.name} takes {_ARITY[self.name]} argument(s), got {len(self.args)}")

    def __str__(self):
        return f"{self.name}:" + ",".join(str(a) for a in self.args)


def parse_family(desc: str) -> Family:
    """Parse the ``name:arg,arg`` micro-syntax, e.g. ``complete_bipartite:3,5``."""
    name, _, rest = desc.strip().partition(":")
    raw = [a.strip() for a in rest.split(",")] if rest.strip() else []
    args: list = []
    try:
        for i, a in enumerate(raw):
            if name == "gnp" and i == 1:
                args.append(float(a))
            else:
                args.append(int(a))
    except ValueError:
        raise ValueError(f"bad family arguments in {desc!r}") from None
    return Family(name, tuple(args))


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def generate(family: Family | str) -> Graph:
    """Build a member of a generator family.

    Vertex labeling:

    * ``complete(n)``, ``path(n)``, ``cycle(n)``: ``0 .. n-1`` in order along
      the path or cycle.
    * ``complete_bipartite(p, q)``: side A is ``0 .. p-1``, side B is
      ``p .. p+q-1``.
    * ``grid(r, c)``: cell ``(i, j)`` is vertex ``i * c + j``.
    * ``gnp(n, p, seed)``: each pair ``u < v`` in lexicographic order is kept
      when the next draw of numpy's PCG64 generator seeded with ``seed`` is
      below ``p``.
    """
    if isinstance(family, str):
        family = parse_family(family)
    name, args = family.name, family.args
    if name == "complete":
        (n,) = args
        _require(n >= 1, "complete needs n >= 1")
        return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))
    if name == "complete_bipartite":
        p, q = args
        _require(p >= 1 and q >= 1, "complete_bipartite needs p, q >= 1")
        return Graph(p + q, tuple((u, p + w) for u in range(p) for w in range(q)))
    if name == "path":
        (n,) = args
        _require(n >= 1, "path needs n >= 1")
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    if name == "cycle":
        (n,) = args
        _require(n >= 3, "cycle needs n >= 3")
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))
    if name == "grid":
        r, c = args
        _require(r >= 1 and c >= 1, "grid needs r, c >= 1")
        edges = []
        for i in range(r):
            for j in range(c):
                v = i * c + j
                if j + 1 < c:
                    edges.append((v, v + 1))
                if i + 1 < r:
                    edges.append((v, v + c))
        return Graph(r * c, tuple(edges))
    if name == "gnp":
        n, p, seed = args
        _require(n >= 1, "gnp needs n >= 1")
        _require(0.0 <= p <= 1.0, "gnp probability must lie in [0, 1]")
        rng = np.random.Generator(np.random.PCG64(int(seed) % 2**64))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        keep = rng.random(len(pairs)) < p
        return Graph(n, tuple(e for e, k in zip(pairs, keep) if k))
    raise AssertionError(name)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    offset = 0
    edges = []
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges]
        offset += g.n
    return Graph(offset, tuple(edges))
