"""Finite simple graphs on dense integer vertices, plus the structural
predicates the representation constructions rely on.

A :class:`Graph` is immutable once built. Vertices are ``0..n-1``; deleting
vertices always relabels the survivors in increasing order, and the helpers
that do so return the list of surviving original ids so callers can map
representations back.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ParseError, PreconditionError


class Graph:
    """Undirected simple graph with vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise PreconditionError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            norm.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges: frozenset[tuple[int, int]] = frozenset(norm)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self.masks: tuple[int, ...] = tuple(sum(1 << w for w in a) for a in adj)

    # -- basic queries ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adj[v]) == 1]

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def components(self, within: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components (sorted lists, ordered by least vertex).

        With ``within`` the components of the induced subgraph on that vertex
        set are returned instead.
        """
        allowed = set(range(self.n)) if within is None else set(within)
        seen: set[int] = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if w in allowed and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def bipartition(self) -> Bipartition | OddCycle:
        """Two-colouring, or an odd cycle proving none exists."""
        colour = [-1] * self.n
        parent = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in sorted(self.adj[u]):
                    if colour[w] < 0:
                        colour[w] = 1 - colour[u]
                        parent[w] = u
                        queue.append(w)
                    elif colour[w] == colour[u]:
                        return OddCycle(tuple(_tree_cycle(parent, u, w)))
        left = tuple(v for v in range(self.n) if colour[v] == 0)
        right = tuple(v for v in range(self.n) if colour[v] == 1)
        return Bipartition(left, right)

    def is_bipartite(self) -> bool:
        return isinstance(self.bipartition(), Bipartition)

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for u, v in sorted(self.edges):
            for w in sorted(self.adj[u] & self.adj[v]):
                if w > v:
                    out.append((u, v, w))
        return out

    def is_triangle_free(self) -> bool:
        return all(not (self.adj[u] & self.adj[v]) for u, v in self.edges)

    # -- derived graphs --------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Subgraph induced by ``vertices``; returns it with the kept ids in order."""
        kept = sorted(set(vertices))
        index = {v: i for i, v in enumerate(kept)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(kept), edges), kept

    def delete_vertices(self, removed: Iterable[int]) -> tuple[Graph, list[int]]:
        gone = set(removed)
        return self.induced_subgraph(v for v in range(self.n) if v not in gone)

    def delete_edges(self, removed: Iterable[tuple[int, int]]) -> Graph:
        gone = {(min(e), max(e)) for e in removed}
        return Graph(self.n, self.edges - gone)

    def add_vertex(self, neighbors: Iterable[int]) -> Graph:
        """Graph with a new vertex ``n`` joined to ``neighbors``."""
        return Graph(self.n + 1, list(self.edges) + [(v, self.n) for v in neighbors])

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def complement(self) -> Graph:
        return Graph(self.n, [e for e in combinations(range(self.n), 2) if e not in self.edges])

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        return Graph(self.n + other.n, list(self.edges) + [(u + shift, v + shift) for u, v in other.edges])

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class Bipartition:
    left: tuple[int, ...]
    right: tuple[int, ...]


@dataclass(frozen=True)
class OddCycle:
    cycle: tuple[int, ...]


def _tree_cycle(parent: list[int], u: int, w: int) -> list[int]:
    # u and w are adjacent and share a BFS colour; join their tree paths.
    path_u = [u]
    while parent[path_u[-1]] >= 0:
        path_u.append(parent[path_u[-1]])
    path_w = [w]
    while parent[path_w[-1]] >= 0:
        path_w.append(parent[path_w[-1]])
    on_u = {x: i for i, x in enumerate(path_u)}
    for j, x in enumerate(path_w):
        if x in on_u:
            return path_u[: on_u[x] + 1] + list(reversed(path_w[:j]))
    raise AssertionError("BFS tree paths do not meet")


# ---------------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------------


def degeneracy(G: Graph) -> tuple[int, list[int]]:
    """Degeneracy and the elimination order (repeatedly drop a min-degree vertex,
    lowest id first)."""
    deg = G.degrees()
    alive = set(range(G.n))
    order = []
    k = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        k = max(k, deg[v])
        order.append(v)
        alive.remove(v)
        for w in G.adj[v]:
            if w in alive:
                deg[w] -= 1
    return k, order


@dataclass(frozen=True)
class StarCutset:
    center: int
    members: frozenset[int]


class _NotApplicable:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOT_CONNECTED"

    def __bool__(self) -> bool:
        return False


#: Returned by :func:`find_star_cutset` for disconnected inputs.
NOT_CONNECTED = _NotApplicable()


def find_star_cutset(G: Graph) -> StarCutset | None | _NotApplicable:
    """A separating set ``{x} | A`` with ``A`` inside ``N(x)``, or ``None``.

    Uses the components of ``G - N[x]``: with two or more of them ``N[x]``
    separates; with exactly one, ``{x} | (N(x) - {y})`` separates iff some
    neighbour ``y`` sees nothing of it; with none, two nonadjacent neighbours
    can be cut apart. This covers every choice of ``A`` without enumerating
    subsets.
    """
    if not G.is_connected():
        return NOT_CONNECTED
    for x in range(G.n):
        nbrs = G.adj[x]
        rest = [v for v in range(G.n) if v != x and v not in nbrs]
        comps = G.components(rest)
        if len(comps) >= 2:
            return StarCutset(x, frozenset(nbrs | {x}))
        if len(comps) == 1:
            outside = set(comps[0])
            for y in sorted(nbrs):
                if not (G.adj[y] & outside):
                    return StarCutset(x, frozenset((nbrs - {y}) | {x}))
        else:
            for y, z in combinations(sorted(nbrs), 2):
                if z not in G.adj[y]:
                    return StarCutset(x, frozenset((nbrs - {y, z}) | {x}))
    return None


def separates(G: Graph, S: Iterable[int]) -> bool:
    """True when deleting ``S`` leaves at least two components."""
    S = set(S)
    return len(G.components(v for v in range(G.n) if v not in S)) >= 2


def duplicate_neighborhoods(G: Graph) -> list[tuple[int, int]]:
    """Pairs ``(v, w)`` with ``v > w`` and ``N(v) == N(w)``."""
    return [(v, w) for w, v in combinations(range(G.n), 2) if G.adj[v] == G.adj[w]]


def isolated_vertices(G: Graph) -> list[int]:
    return [v for v in range(G.n) if not G.adj[v]]


def is_book(G: Graph) -> bool:
    """``n - 2`` triangles sharing one edge (``K_3`` counts)."""
    if G.n < 3 or G.m != 2 * G.n - 3:
        return False
    for u, v in G.edges:
        if len(G.adj[u]) == G.n - 1 and len(G.adj[v]) == G.n - 1:
            return all(len(G.adj[w]) == 2 for w in range(G.n) if w not in (u, v))
    return False


def tree_longest_path(T: Graph) -> list[int]:
    """A longest path in a tree via two sweeps, ties to the smallest id."""
    if not T.is_tree():
        raise PreconditionError("not a tree")

    def sweep(s: int) -> tuple[int, list[int]]:
        parent = {s: -1}
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(T.adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
        far = min(dist, key=lambda v: (-dist[v], v))
        path = [far]
        while parent[path[-1]] >= 0:
            path.append(parent[path[-1]])
        return far, path

    a, _ = sweep(0)
    _, path = sweep(a)
    return path


def is_caterpillar(T: Graph) -> bool:
    if not T.is_tree():
        return False
    inner, _ = T.delete_vertices(T.leaves())
    return inner.n == 0 or (inner.is_tree() and inner.max_degree() <= 2)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def format_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines += [f"{u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_edge_list(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty edge list")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}; expected 'n m'") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"header announces {m} edges, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"bad edge line {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"bad edge line {line!r}") from exc
    if len({(min(e), max(e)) for e in edges}) != len(edges):
        raise ParseError("repeated edge")
    try:
        return Graph(n, edges)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc


def parse_graph6(text: str) -> Graph:
    import networkx as nx

    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(s.encode("ascii"))
    except Exception as exc:  # networkx raises several types here
        raise ParseError(f"bad graph6 string {s!r}") from exc
    return Graph(nxg.number_of_nodes(), nxg.edges())


def format_graph6(G: Graph) -> str:
    import networkx as nx

    nxg = nx.Graph()
    nxg.add_nodes_from(range(G.n))
    nxg.add_edges_from(G.edges)
    return nx.to_graph6_bytes(nxg, header=False).decode("ascii").strip()
