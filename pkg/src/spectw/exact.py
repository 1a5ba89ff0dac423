"""Exact treewidth for small graphs, tree decompositions, and their validation.

The oracle is the subset dynamic program over elimination orderings::

    TW(empty) = -inf
    TW(S)     = min_{v in S} max(TW(S - v), q(S - v, v))

where ``q(S, v)`` counts the vertices outside ``S + v`` reachable from ``v``
through paths whose interior lies in ``S``. Vertex sets are integer bitmasks
and the table is filled level by level (by ``|S|``).

States whose value already reaches the width of a min-degree elimination
ordering are dropped. If no state survives to the full vertex set, that
heuristic ordering is optimal and is returned instead.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Family, Graph, parse_family

__all__ = [
    "DEFAULT_LIMIT",
    "ExactResult",
    "SizeLimitError",
    "TDFormatError",
    "TDValidation",
    "TreeDecomposition",
    "closed_form_tw",
    "decomposition_from_order",
    "exact_tw",
    "min_degree_order",
    "order_width",
    "parse_td",
    "to_td",
    "validate_td",
]

DEFAULT_LIMIT = 20
HARD_LIMIT = 24


class SizeLimitError(ValueError):
    """The graph is too large for the exact oracle."""


class TDFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "tree_edges", tuple((int(a), int(b)) for a, b in self.tree_edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


@dataclass(frozen=True)
class ExactResult:
    width: int
    decomposition: TreeDecomposition
    elimination_order: tuple[int, ...]
    # states that survived pruning; useful for gauging cost
    states: int = 0


# -- elimination orderings ----------------------------------------------------


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _q(nbr: Sequence[int], S: int, v: int) -> int:
    seen = frontier = 1 << v
    out = 0
    while frontier:
        reach = 0
        f = frontier
        while f:
            low = f & -f
            reach |= nbr[low.bit_length() - 1]
            f ^= low
        out |= reach & ~S
        frontier = reach & S & ~seen
        seen |= frontier
    return _popcount(out & ~(1 << v))


def _fill_in_bags(g: Graph, order: Sequence[int]) -> list[frozenset[int]]:
    """Bag of each vertex: itself plus its later neighbors in the filled graph."""
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(a) for a in g.adjacency]
    bags = []
    for v in order:
        later = {u for u in nbrs[v] if pos[u] > pos[v]}
        for u in later:
            nbrs[u] |= later
            nbrs[u].discard(u)
        bags.append(frozenset(later | {v}))
    return bags


def order_width(g: Graph, order: Sequence[int]) -> int:
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    return max((len(b) for b in _fill_in_bags(g, order)), default=0) - 1


def min_degree_order(g: Graph) -> tuple[int, ...]:
    """Greedy min-degree elimination; ties go to the lowest vertex index."""
    nbrs = [set(a) for a in g.adjacency]
    alive = set(range(g.n))
    order = []
    while alive:
        v = min(alive, key=lambda u: (len(nbrs[u]), u))
        for u in nbrs[v]:
            nbrs[u] |= nbrs[v]
            nbrs[u].discard(u)
            nbrs[u].discard(v)
        alive.remove(v)
        order.append(v)
    return tuple(order)


def decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition whose i-th bag belongs to the i-th eliminated vertex.

    Each bag is attached to the bag of its earliest-eliminated later neighbor,
    or to the next bag when it has none (a finished component).
    """
    bags = _fill_in_bags(g, order)
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    for i, v in enumerate(order):
        later = bags[i] - {v}
        if later:
            edges.append((i, min(pos[u] for u in later)))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    return TreeDecomposition(tuple(bags), tuple(edges))


# -- exact oracle -------------------------------------------------------------


def exact_tw(g: Graph, limit: int = DEFAULT_LIMIT, prune: bool = True) -> ExactResult:
    """Exact treewidth of ``g`` with an optimal decomposition.

    Raises :class:`SizeLimitError` when ``g.n`` exceeds ``limit``. With
    ``prune=False`` every subset state is kept (plain DP, for cross-checks).
    """
    n = g.n
    if n < 1:
        raise ValueError("exact_tw needs at least one vertex")
    if limit > HARD_LIMIT:
        raise SizeLimitError(f"limit {limit} exceeds the hard cap {HARD_LIMIT}")
    if n > limit:
        raise SizeLimitError(f"graph has {n} vertices, oracle limit is {limit}")

    heuristic = min_degree_order(g)
    ub = order_width(g, heuristic) if prune else n
    nbr = g.neighbor_masks
    full = (1 << n) - 1

    cur = {0: -1}
    last: dict[int, int] = {}
    states = 1
    for _ in range(n):
        nxt: dict[int, tuple[int, int]] = {}
        for S, val in cur.items():
            for v in range(n):
                if S >> v & 1:
                    continue
                w = max(val, _q(nbr, S, v))
                if w >= ub:
                    continue
                T = S | 1 << v
                old = nxt.get(T)
                if old is None or (w, v) < old:
                    nxt[T] = (w, v)
        if not nxt:
            break
        for T, (_, v) in nxt.items():
            last[T] = v
        cur = {T: w for T, (w, _) in nxt.items()}
        states += len(cur)

    if full in cur:
        width = max(cur[full], 0)
        rev = []
        S = full
        while S:
            v = last[S]
            rev.append(v)
            S &= ~(1 << v)
        order = tuple(reversed(rev))
    else:
        width, order = ub, heuristic
    td = decomposition_from_order(g, order)
    assert td.width == width
    return ExactResult(width, td, order, states)


def closed_form_tw(family: Family | str) -> int:
    """Known treewidth of a generator family member."""
    if isinstance(family, str):
        family = parse_family(family)
    name, args = family.name, family.args
    if name == "complete":
        (n,) = args
        if n < 1:
            raise ValueError("complete needs n >= 1")
        return n - 1
    if name == "complete_bipartite":
        p, q = args
        if p < 1 or q < 1:
            raise ValueError("complete_bipartite needs p, q >= 1")
        return min(p, q)
    if name == "path":
        (n,) = args
        if n < 1:
            raise ValueError("path needs n >= 1")
        return 1 if n >= 2 else 0
    if name == "cycle":
        (n,) = args
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return 2
    if name == "grid":
        r, c = args
        if r < 2 or c < 2:
            raise ValueError("grid closed form needs r, c >= 2 (1 x c grids are paths)")
        return min(r, c)
    raise ValueError(f"no closed form for family {name!r}")


# -- validation ---------------------------------------------------------------


@dataclass
class TDValidation:
    """Outcome of each decomposition check, with a witness for failures."""

    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)
    width: int = -1

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    def __bool__(self):
        return self.valid

    def failures(self) -> list[str]:
        return [f"{k}: {self.witnesses.get(k)}" for k, ok in self.checks.items() if not ok]

    def _record(self, name: str, witness=None):
        self.checks[name] = witness is None
        if witness is not None:
            self.witnesses[name] = witness


def _connected(nodes: set[int], adj: list[list[int]]) -> bool:
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b in nodes and b not in seen:
                seen.add(b)
                queue.append(b)
    return seen == nodes


def validate_td(g: Graph, td: TreeDecomposition) -> TDValidation:
    report = TDValidation(width=td.width)
    k = len(td.bags)

    bad = [v for b in td.bags for v in b if not 0 <= v < g.n]
    report._record("labels", f"vertex {bad[0]} not in graph" if bad else None)

    covered = set().union(*td.bags) if td.bags else set()
    missing = [v for v in range(g.n) if v not in covered]
    report._record("vertex_coverage", f"vertex {missing[0]} in no bag" if missing else None)

    uncovered = next((e for e in g.edges if not any(e[0] in b and e[1] in b for b in td.bags)), None)
    report._record("edge_coverage", f"edge {uncovered} in no bag" if uncovered else None)

    tree_witness = None
    if any(not (0 <= a < k and 0 <= b < k) or a == b for a, b in td.tree_edges):
        tree_witness = "tree edge references a missing bag or is a loop"
    elif k and len(td.tree_edges) != k - 1:
        tree_witness = f"{len(td.tree_edges)} tree edges for {k} bags"
    elif not _connected(set(range(k)), td.neighbors()):
        tree_witness = "bag tree is disconnected"
    report._record("tree", tree_witness)

    adj = td.neighbors() if tree_witness is None or "loop" not in tree_witness else [[] for _ in range(k)]
    incoherent = None
    for v in sorted(covered):
        holding = {i for i, b in enumerate(td.bags) if v in b}
        if not _connected(holding, adj):
            incoherent = f"bags holding vertex {v} ({sorted(holding)}) are not connected"
            break
    report._record("coherence", incoherent)
    return report


# -- PACE .td -----------------------------------------------------------------


def to_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse PACE ``.td`` text. Returns the decomposition and declared ``n``."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s":
                if header is not None or len(parts) != 5 or parts[1] != "td":
                    raise TDFormatError(f"line {lineno}: bad solution line {raw!r}")
                header = tuple(int(p) for p in parts[2:])
            elif header is None:
                raise TDFormatError(f"line {lineno}: content before 's td' line")
            elif parts[0] == "b":
                bid = int(parts[1])
                if not 1 <= bid <= header[0] or bid in bags:
                    raise TDFormatError(f"line {lineno}: bad or repeated bag id {bid}")
                bags[bid] = frozenset(int(v) - 1 for v in parts[2:])
            elif len(parts) == 2:
                edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
            else:
                raise TDFormatError(f"line {lineno}: unrecognized line {raw!r}")
        except ValueError as exc:
            if isinstance(exc, TDFormatError):
                raise
            raise TDFormatError(f"line {lineno}: non-integer token in {raw!r}") from None
    if header is None:
        raise TDFormatError("missing 's td' line")
    nbags, _, n = header
    if len(bags) != nbags:
        raise TDFormatError(f"declared {nbags} bags, found {len(bags)}")
    td = TreeDecomposition(tuple(bags[i] for i in range(1, nbags + 1)), tuple(edges))
    return td, n


def single_bag(g: Graph) -> TreeDecomposition:
    return TreeDecomposition((frozenset(range(g.n)),))
