"""Simple undirected graphs: bipartition, perfect matchings, canonical edge order.

Vertices are 0-based internally and 1-based in all text I/O.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    name: str = ""
    # filled by analyze()
    m: int | None = field(default=None, compare=False)
    gamma: int | None = field(default=None, compare=False)
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u + 1}, {v + 1}) uses a vertex outside 1..{self.n}")
            if u == v:
                raise GraphError(f"loop at vertex {u + 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"parallel edge {key[0] + 1}-{key[1] + 1}")
            seen.add(key)
        isolated = [v + 1 for v in range(self.n) if self.degrees[v] == 0]
        if isolated:
            raise GraphError(f"isolated vertices: {isolated}")

    @property
    def s(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [sorted(a) for a in adj]

    @property
    def is_bipartite(self) -> bool:
        return analyze(self).gamma == 0


def analyze(graph: Graph) -> Graph:
    """Fill in component count, non-bipartite component count and bipartition.

    Each component is 2-coloured by BFS from its lowest vertex, which goes to U.
    """
    adj = graph.neighbors()
    color = [-1] * graph.n
    m = gamma = 0
    for root in range(graph.n):
        if color[root] >= 0:
            continue
        m += 1
        color[root] = 0
        odd = False
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    odd = True
        gamma += odd
    bip = None
    if gamma == 0:
        bip = (
            tuple(v for v in range(graph.n) if color[v] == 0),
            tuple(v for v in range(graph.n) if color[v] == 1),
        )
    return Graph(graph.n, graph.edges, graph.name, m, gamma, bip)


def is_perfect_matching(graph: Graph, matching) -> bool:
    covered: set[int] = set()
    edge_set = {frozenset(e) for e in graph.edges}
    for u, v in matching:
        if frozenset((u, v)) not in edge_set or u in covered or v in covered:
            return False
        covered.update((u, v))
    return len(covered) == graph.n


def _max_matching(adj: list[list[int]], left: list[int], banned: set[int]) -> dict[int, int]:
    """Augmenting-path bipartite matching; returns the right->left partner map."""
    match_right: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in adj[u]:
            if w in banned or w in seen:
                continue
            seen.add(w)
            if w not in match_right or augment(match_right[w], seen):
                match_right[w] = u
                return True
        return False

    for u in left:
        if u not in banned:
            augment(u, set())
    return match_right


def maximum_matching(graph: Graph) -> list[tuple[int, int]]:
    """A maximum matching of a bipartite graph as (u, w) pairs with u in U."""
    g = graph if graph.gamma is not None else analyze(graph)
    if g.bipartition is None:
        raise GraphError(f"graph is not bipartite (gamma={g.gamma})")
    partner = _max_matching(g.neighbors(), list(g.bipartition[0]), set())
    return sorted((u, w) for w, u in partner.items())


def perfect_matching(graph: Graph) -> list[tuple[int, int]] | None:
    """The lexicographically first perfect matching, or ``None``.

    Edges are returned as sorted pairs in increasing order.  The smallest
    uncovered vertex is paired with its smallest neighbour for which the rest
    of the graph still has a perfect matching.
    """
    g = graph if graph.gamma is not None else analyze(graph)
    if g.bipartition is None:
        raise GraphError(f"graph is not bipartite (gamma={g.gamma})")
    if g.n % 2:
        return None
    adj = g.neighbors()
    U = list(g.bipartition[0])
    if len(U) * 2 != g.n:
        return None

    def has_perfect(banned: set[int]) -> bool:
        left = [u for u in U if u not in banned]
        return len(_max_matching(adj, left, banned)) == len(left) == (g.n - len(banned)) // 2

    if not has_perfect(set()):
        return None
    banned: set[int] = set()
    result = []
    for v in range(g.n):
        if v in banned:
            continue
        for w in adj[v]:
            if w in banned:
                continue
            trial = banned | {v, w}
            if has_perfect(trial):
                banned = trial
                result.append((min(v, w), max(v, w)))
                break
        else:  # pragma: no cover - excluded by the feasibility check above
            raise GraphError("matching extension failed")
    return sorted(result)


@dataclass(frozen=True)
class CanonicalOrdering:
    """Relabelling and edge order placing matching edge i at the head of block i.

    ``relabel[old] = new``; matching edge i becomes ``{2i, 2i+1}`` (0-based)
    with the even label on the U side.  ``edge_order[j]`` is the index into
    ``graph.edges`` of the edge at canonical position j.
    """

    relabel: tuple[int, ...]
    edge_order: tuple[int, ...]
    block_degrees: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # canonical edges, (U-end, W-end), new labels

    @property
    def k(self) -> int:
        return len(self.block_degrees)

    def block_starts(self) -> list[int]:
        starts, pos = [], 0
        for b in self.block_degrees:
            starts.append(pos)
            pos += b
        return starts

    def block_of(self) -> list[int]:
        """Block index of every canonical edge position."""
        return [i for i, b in enumerate(self.block_degrees) for _ in range(b)]


def canonical_order(graph: Graph, matching=None) -> CanonicalOrdering:
    g = graph if graph.gamma is not None else analyze(graph)
    if g.bipartition is None:
        raise GraphError(f"graph is not bipartite (gamma={g.gamma})")
    if matching is None:
        matching = perfect_matching(g)
        if matching is None:
            raise GraphError("graph has no perfect matching")
    if not is_perfect_matching(g, matching):
        raise GraphError(f"not a perfect matching: {matching}")
    U = set(g.bipartition[0])
    pairs = sorted((u, w) if u in U else (w, u) for u, w in matching)
    relabel = [0] * g.n
    for i, (u, w) in enumerate(pairs):
        relabel[u], relabel[w] = 2 * i, 2 * i + 1

    keyed = []
    for idx, (a, b) in enumerate(g.edges):
        u, w = (a, b) if a in U else (b, a)
        nu, nw = relabel[u], relabel[w]
        lead = nw != nu + 1  # matching edge sorts first in its block
        keyed.append(((nu, lead, nw), idx, (nu, nw)))
    keyed.sort()
    order = tuple(idx for _, idx, _ in keyed)
    edges = tuple(e for _, _, e in keyed)
    blocks = tuple(sum(1 for e in edges if e[0] == 2 * i) for i in range(len(pairs)))
    return CanonicalOrdering(tuple(relabel), order, blocks, edges)


def canonicalize(graph: Graph, matching=None) -> tuple[Graph, CanonicalOrdering]:
    """Return the relabelled graph whose edge list is in canonical order."""
    co = canonical_order(graph, matching)
    g = Graph(graph.n, co.edges, graph.name)
    return analyze(g), co


# -- generators -------------------------------------------------------------


def make_path(n: int) -> Graph:
    if n < 2:
        raise GraphError("path needs at least 2 vertices")
    return analyze(Graph(n, tuple((i, i + 1) for i in range(n - 1)), f"path:{n}"))


def make_even_cycle(length: int) -> Graph:
    if length < 4 or length % 2:
        raise GraphError(f"even cycle length must be an even number >= 4, got {length}")
    return make_cycle(length)


def make_cycle(length: int) -> Graph:
    if length < 3:
        raise GraphError(f"cycle length must be >= 3, got {length}")
    edges = tuple((i, (i + 1) % length) for i in range(length))
    return analyze(Graph(length, edges, f"cycle:{length}"))


def make_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("parts must be non-empty")
    edges = tuple((i, a + j) for i in range(a) for j in range(b))
    name = f"kmm:{a}" if a == b else f"kab:{a},{b}"
    return analyze(Graph(a + b, edges, name))


def make_disjoint_union(graphs: list[Graph]) -> Graph:
    if not graphs:
        raise GraphError("empty union")
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return analyze(Graph(offset, tuple(edges), "union:" + "+".join(g.name for g in graphs)))


def parse_edge_list(text: str, name: str = "edges") -> Graph:
    """Parse ``u v`` lines (1-based, ``#`` comments)."""
    edges = []
    n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u < 1 or v < 1:
            raise GraphError(f"line {lineno}: vertices are 1-based")
        edges.append((u - 1, v - 1))
        n = max(n, u, v)
    if not edges:
        raise GraphError("no edges found")
    try:
        return analyze(Graph(n, tuple(edges), name))
    except GraphError as exc:
        raise GraphError(f"{name}: {exc}") from None


def format_edge_list(graph: Graph) -> str:
    return "".join(f"{u + 1} {v + 1}\n" for u, v in graph.edges)


def from_dsl(spec: str) -> Graph:
    """Graph from the CLI mini-language.

    ``cycle:8``, ``path:4``, ``kmm:3``, ``kab:2,3``, ``edge``,
    ``union:cycle:4+cycle:4``, ``file:path/to/edges.txt``.
    """
    spec = spec.strip()
    kind, _, arg = spec.partition(":")
    try:
        if kind == "union":
            return make_disjoint_union([from_dsl(part) for part in arg.split("+")])
        if kind == "file":
            return parse_edge_list(Path(arg).read_text(), name=spec)
        if kind == "cycle":
            return make_cycle(int(arg))
        if kind == "path":
            return make_path(int(arg))
        if kind == "kmm":
            return make_complete_bipartite(int(arg), int(arg))
        if kind == "kab":
            a, b = arg.split(",")
            return make_complete_bipartite(int(a), int(b))
        if kind == "edge" and not arg:
            return make_complete_bipartite(1, 1)
    except GraphError:
        raise
    except (ValueError, OSError) as exc:
        raise GraphError(f"bad graph spec {spec!r}: {exc}") from None
    raise GraphError(f"unknown graph spec {spec!r}")
