"""Graphs, the tree/unicyclic families, and their distance-squared matrices.

Labeling convention used by every family constructor: cycle vertices come
first as ``0..p-1`` in cycle order, then attached vertices in construction
order. Witness constructors in :mod:`inertia_lab.predictors` rely on it.
"""

from __future__ import annotations

import heapq
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Union

from .errors import Disconnected, InvalidSpec, OutOfRange, SizeLimit, UnsupportedGraph
from .rng import SplitMix64

MAX_ENUMERATION_N = 12


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are normalized to ``(u, v)`` with ``u < v`` and sorted, so two
    graphs with the same edge set compare equal.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec(f"graph needs at least one vertex, got n={self.n}")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidSpec(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidSpec(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise InvalidSpec(f"multi-edge {e}")
            norm.add(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        return len(_reach(self, 0)) == self.n

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidSpec("relabeling must be a permutation of 0..n-1")
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "Graph":
        try:
            return cls(int(obj["n"]), tuple(tuple(e) for e in obj["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidSpec):
                raise
            raise InvalidSpec(f"malformed graph JSON: {exc}") from exc


def _reach(g: Graph, start: int, banned: int = -1) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w != banned and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


# ---------------------------------------------------------------------------
# families

@dataclass(frozen=True)
class Path:
    n: int


@dataclass(frozen=True)
class Star:
    n: int


@dataclass(frozen=True)
class Cycle:
    p: int


@dataclass(frozen=True)
class Tree:
    """Labeled tree given by its Prüfer sequence.

    ``n`` defaults to ``len(pruefer) + 2``; the only other allowed value is
    ``n=1`` with an empty sequence (the single-vertex tree).
    """

    pruefer: tuple[int, ...] = ()
    n: Optional[int] = None

    @property
    def size(self) -> int:
        return self.n if self.n is not None else len(self.pruefer) + 2


@dataclass(frozen=True)
class EvenCycleOneTree:
    p: int
    tree: Tree
    attach: int = 0


@dataclass(frozen=True)
class SaturatedCycle:
    p: int


@dataclass(frozen=True)
class CyclePendants:
    p: int
    s: int


@dataclass(frozen=True)
class OppositePendants:
    k: int


@dataclass(frozen=True)
class TriangleOneTree:
    tree: Tree
    attach: int = 0


FamilySpec = Union[
    Path, Star, Cycle, Tree, EvenCycleOneTree, SaturatedCycle,
    CyclePendants, OppositePendants, TriangleOneTree,
]


def tree_from_pruefer(seq: Sequence[int], n: Optional[int] = None) -> Graph:
    """Decode a Prüfer sequence into the unique labeled tree it encodes."""
    seq = [int(a) for a in seq]
    if n is None:
        n = len(seq) + 2
    if n == 1 and not seq:
        return Graph(1)
    if n != len(seq) + 2:
        raise OutOfRange(f"Prüfer sequence of length {len(seq)} encodes {len(seq) + 2} vertices, not {n}")
    for a in seq:
        if not 0 <= a < n:
            raise OutOfRange(f"Prüfer entry {a} outside 0..{n - 1}")
    degree = [1] * n
    for a in seq:
        degree[a] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for a in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, a))
        degree[a] -= 1
        if degree[a] == 1:
            heapq.heappush(leaves, a)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph(n, tuple(edges))


def _cycle_edges(p: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % p) for i in range(p)]


def attach_tree(p: int, tree: Graph, attach: int = 0) -> Graph:
    """Join ``tree`` to cycle vertex 0 of a ``p``-cycle by one edge.

    Tree vertex ``attach`` becomes vertex ``p``; the remaining tree vertices
    follow in increasing label order.
    """
    if not 0 <= attach < tree.n:
        raise InvalidSpec(f"attach vertex {attach} not in tree of size {tree.n}")
    order = [attach] + [v for v in range(tree.n) if v != attach]
    where = {v: p + i for i, v in enumerate(order)}
    edges = _cycle_edges(p) + [(0, p)]
    edges += [(where[u], where[v]) for u, v in tree.edges]
    return Graph(p + tree.n, tuple(edges))


def build_family(spec: FamilySpec) -> Graph:
    match spec:
        case Path(n=n):
            if n < 1:
                raise InvalidSpec("path needs n >= 1")
            return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
        case Star(n=n):
            if n < 2:
                raise InvalidSpec("star needs n >= 2")
            return Graph(n, tuple((0, i) for i in range(1, n)))
        case Cycle(p=p):
            if p < 3:
                raise InvalidSpec("cycle needs p >= 3")
            return Graph(p, tuple(_cycle_edges(p)))
        case Tree():
            return tree_from_pruefer(spec.pruefer, spec.n)
        case EvenCycleOneTree(p=p, tree=t, attach=a):
            _require_even(p)
            return attach_tree(p, build_family(t), a)
        case SaturatedCycle(p=p):
            _require_even(p)
            return Graph(2 * p, tuple(_cycle_edges(p) + [(i, p + i) for i in range(p)]))
        case CyclePendants(p=p, s=s):
            _require_even(p)
            if s < 1:
                raise InvalidSpec("pendant count s must be >= 1")
            edges = _cycle_edges(p)
            edges += [(i, p + i * s + r) for i in range(p) for r in range(s)]
            return Graph(p + p * s, tuple(edges))
        case OppositePendants(k=k):
            if k < 2:
                raise InvalidSpec("opposite pendants need k >= 2")
            edges = _cycle_edges(2 * k) + [(0, 2 * k), (k, 2 * k + 1)]
            return Graph(2 * k + 2, tuple(edges))
        case TriangleOneTree(tree=t, attach=a):
            return attach_tree(3, build_family(t), a)
    raise InvalidSpec(f"unknown family spec {spec!r}")


def _require_even(p: int) -> None:
    if p < 4 or p % 2:
        raise InvalidSpec(f"cycle length must be even and >= 4, got {p}")


_TREE_TOKEN = re.compile(r"^(k1|k2|\d+(,\d+)*)?$")


def _parse_tree(text: str) -> tuple[Tree, int]:
    attach = 0
    if "@" in text:
        text, at = text.split("@", 1)
        attach = int(at)
    text = text.strip()
    if not _TREE_TOKEN.match(text):
        raise InvalidSpec(f"bad tree token {text!r}")
    if text == "k1":
        return Tree((), 1), attach
    if text in ("", "k2"):
        return Tree(()), attach
    return Tree(tuple(int(a) for a in text.split(","))), attach


def parse_family(text: str) -> FamilySpec:
    """Parse CLI family strings such as ``cycle:6`` or ``evencycle-tree:6+0,0@1``.

    Tree tokens are comma-separated Prüfer sequences; ``k1`` is the single
    vertex, ``k2`` (or empty) the single edge, and ``@a`` picks the tree
    vertex joined to the cycle.
    """
    kind, _, arg = text.strip().partition(":")
    try:
        match kind:
            case "path":
                return Path(int(arg))
            case "star":
                return Star(int(arg))
            case "cycle":
                return Cycle(int(arg))
            case "saturated":
                return SaturatedCycle(int(arg))
            case "pendants":
                p, s = arg.split("x")
                return CyclePendants(int(p), int(s))
            case "opposite":
                return OppositePendants(int(arg))
            case "tree":
                return _parse_tree(arg)[0]
            case "evencycle-tree":
                p, _, rest = arg.partition("+")
                tree, attach = _parse_tree(rest)
                return EvenCycleOneTree(int(p), tree, attach)
            case "triangle-tree":
                tree, attach = _parse_tree(arg)
                return TriangleOneTree(tree, attach)
    except ValueError as exc:
        if isinstance(exc, InvalidSpec):
            raise
        raise InvalidSpec(f"cannot parse family {text!r}: {exc}") from exc
    raise InvalidSpec(f"unknown family kind {kind!r}")


def _format_tree(t: Tree) -> str:
    if t.size == 1:
        return "k1"
    if t.size == 2:
        return "k2"
    return ",".join(map(str, t.pruefer))


def format_family(spec: FamilySpec) -> str:
    """Inverse of :func:`parse_family`."""
    match spec:
        case Path(n=n):
            return f"path:{n}"
        case Star(n=n):
            return f"star:{n}"
        case Cycle(p=p):
            return f"cycle:{p}"
        case SaturatedCycle(p=p):
            return f"saturated:{p}"
        case CyclePendants(p=p, s=s):
            return f"pendants:{p}x{s}"
        case OppositePendants(k=k):
            return f"opposite:{k}"
        case Tree():
            return f"tree:{_format_tree(spec)}"
        case EvenCycleOneTree(p=p, tree=t, attach=a):
            return f"evencycle-tree:{p}+{_format_tree(t)}@{a}"
        case TriangleOneTree(tree=t, attach=a):
            return f"triangle-tree:{_format_tree(t)}@{a}"
    raise InvalidSpec(f"unknown family spec {spec!r}")


# ---------------------------------------------------------------------------
# distances

@dataclass(frozen=True)
class IntSymMatrix:
    """Symmetric integer matrix with zero diagonal (the distance-squared matrix)."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_json(self) -> dict:
        return {"n": self.n, "data": self.tolist()}


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_pairs_distance_squared(g: Graph) -> IntSymMatrix:
    rows = []
    for s in range(g.n):
        dist = bfs_distances(g, s)
        if min(dist) < 0:
            raise Disconnected(f"vertex {dist.index(-1)} unreachable from {s}")
        rows.append(tuple(d * d for d in dist))
    return IntSymMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# structure

def cycle_q(p: int) -> int:
    """Number of negative eigenvalues of the distance-squared matrix of a p-cycle."""
    if p % 2 == 0:
        return p // 2
    if p % 4 == 1:
        return (p - 1) // 2
    return (p - 1) // 2 + 1


def two_core(g: Graph) -> set[int]:
    """Vertices left after repeatedly deleting vertices of degree <= 1."""
    deg = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    stack = [v for v in range(g.n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return alive


def find_cycle(g: Graph) -> Optional[list[int]]:
    """The unique cycle of a unicyclic graph in cycle order, or None for a tree.

    The walk starts at the smallest cycle vertex and heads to its smaller
    cycle neighbor.
    """
    if not g.is_connected():
        raise Disconnected("graph is not connected")
    rank = g.m - g.n + 1
    if rank == 0:
        return None
    if rank != 1:
        raise UnsupportedGraph(f"cyclomatic number {rank}; only trees and unicyclic graphs are supported")
    core = two_core(g)
    start = min(core)
    order = [start]
    prev, cur = start, min(w for w in g.adj[start] if w in core)
    while cur != start:
        order.append(cur)
        nxt = [w for w in g.adj[cur] if w in core and w != prev]
        prev, cur = cur, nxt[0]
    return order


def is_deg2_cut(g: Graph, v: int) -> bool:
    if g.degree(v) != 2:
        return False
    a, b = g.adj[v]
    return b not in _reach(g, a, banned=v)


@dataclass(frozen=True)
class GraphStats:
    n: int
    leaves: int
    deg2_cut: int
    cycle_length: Optional[int] = None
    q: Optional[int] = None

    def to_json(self) -> dict:
        return {"n": self.n, "leaves": self.leaves, "deg2_cut": self.deg2_cut,
                "cycle_length": self.cycle_length, "q": self.q}


def graph_stats(g: Graph) -> GraphStats:
    cycle = find_cycle(g)
    leaves = sum(1 for v in range(g.n) if g.degree(v) == 1)
    t = sum(1 for v in range(g.n) if is_deg2_cut(g, v))
    if cycle is None:
        return GraphStats(g.n, leaves, t)
    p = len(cycle)
    return GraphStats(g.n, leaves, t, p, cycle_q(p))


# ---------------------------------------------------------------------------
# enumeration

def tree_centers(g: Graph) -> list[int]:
    if g.n <= 2:
        return list(range(g.n))
    deg = [g.degree(v) for v in range(g.n)]
    layer = [v for v in range(g.n) if deg[v] == 1]
    remaining = g.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in g.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _ahu(g: Graph, root: int) -> str:
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in g.adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    codes: dict[int, list[str]] = {v: [] for v in order}
    enc = {}
    for v in reversed(order):
        enc[v] = "(" + "".join(sorted(codes[v])) + ")"
        if parent[v] >= 0:
            codes[parent[v]].append(enc[v])
    return enc[root]


def canonical_form(tree: Graph) -> str:
    """AHU string of a free tree: the minimum over encodings rooted at its centers."""
    if tree.m != tree.n - 1 or not tree.is_connected():
        raise InvalidSpec("canonical_form expects a tree")
    return min(_ahu(tree, c) for c in tree_centers(tree))


def tree_from_canonical(code: str) -> Graph:
    """Build the tree of an AHU string, labeling vertices in preorder."""
    edges = []
    stack: list[int] = []
    count = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], count))
            stack.append(count)
            count += 1
        else:
            stack.pop()
    return Graph(count, tuple(edges))


def enumerate_trees(n: int) -> list[Graph]:
    """One representative per isomorphism class of free trees on n vertices.

    Trees are grown leaf by leaf from smaller classes and deduplicated by
    :func:`canonical_form`. Representatives are labeled by preorder of their
    canonical string and returned sorted by it.
    """
    if n < 1:
        raise InvalidSpec("n must be >= 1")
    if n > MAX_ENUMERATION_N:
        raise SizeLimit(f"tree enumeration capped at n={MAX_ENUMERATION_N}")
    codes = {"()"}
    for size in range(1, n):
        grown = set()
        for code in codes:
            t = tree_from_canonical(code)
            for v in range(size):
                bigger = Graph(size + 1, t.edges + ((v, size),))
                grown.add(canonical_form(bigger))
        codes = grown
    return [tree_from_canonical(c) for c in sorted(codes)]


def random_unicyclic(n: int, seed: int) -> Graph:
    """Random unicyclic graph: a uniform cycle length, then uniform attachments.

    The cycle length p is uniform on 3..n; each later vertex v = p..n-1 is
    joined to a uniform vertex among 0..v-1.
    """
    if n < 3:
        raise InvalidSpec("unicyclic graphs need n >= 3")
    rng = SplitMix64(seed)
    p = rng.randint(3, n)
    edges = _cycle_edges(p)
    for v in range(p, n):
        edges.append((rng.randint(0, v - 1), v))
    return Graph(n, tuple(edges))
