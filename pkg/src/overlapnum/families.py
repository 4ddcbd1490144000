"""Named graphs, the extremal families, and exhaustive small-graph enumerators.

Every generator re-checks the defining predicates of its family on the graph
it built instead of trusting the construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from .canon import canonical_form
from .errors import PreconditionError, VerificationError
from .graph import Graph, find_star_cutset, is_book, is_caterpillar, tree_longest_path
from .planar import PlaneGraph, is_quadrangulation

# ---------------------------------------------------------------------------
# Named graphs
# ---------------------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycles need at least three vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def star(m: int) -> Graph:
    """``K_{1,m}`` with centre 0."""
    return Graph(m + 1, [(0, i) for i in range(1, m + 1)])


def complete_multipartite(*sizes: int) -> Graph:
    part = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(part)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]])


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def paw() -> Graph:
    """``K_{1,3}`` plus one edge (a triangle with a pendant)."""
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])


def wheel(k: int) -> PlaneGraph:
    """Hub ``k`` joined to the rim cycle ``0..k-1``."""
    if k < 3:
        raise PreconditionError("wheel rim needs at least three vertices")
    rot = [[(i - 1) % k, k, (i + 1) % k] for i in range(k)] + [list(range(k))[::-1]]
    G = Graph(k + 1, [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)])
    return PlaneGraph(G, rot)


def cylinder(p: int) -> PlaneGraph:
    """``P_p`` times ``C_4``: ``p`` nested squares with spokes between consecutive ones."""
    if p < 1:
        raise PreconditionError("need at least one square")
    edges = []
    for r in range(p):
        edges += [(4 * r + i, 4 * r + (i + 1) % 4) for i in range(4)]
        if r + 1 < p:
            edges += [(4 * r + i, 4 * (r + 1) + i) for i in range(4)]
    return _embed_or_fail(Graph(4 * p, edges))


def cube() -> PlaneGraph:
    return cylinder(2)


# ---------------------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------------------


def planar_embedding(G: Graph) -> PlaneGraph | None:
    """A rotation system for ``G``, or ``None`` if ``G`` is not planar."""
    nxg = nx.Graph()
    nxg.add_nodes_from(range(G.n))
    nxg.add_edges_from(G.edges)
    ok, emb = nx.check_planarity(nxg)
    if not ok:
        return None
    rot = [list(emb.neighbors_cw_order(v)) if G.adj[v] else [] for v in range(G.n)]
    return PlaneGraph(G, rot)


def _embed_or_fail(G: Graph) -> PlaneGraph:
    PG = planar_embedding(G)
    if PG is None:
        raise VerificationError("generated graph is not planar")
    return PG


# ---------------------------------------------------------------------------
# Extremal families
# ---------------------------------------------------------------------------


def family_predicates(G: Graph) -> dict[str, bool]:
    return {
        "connected": G.is_connected(),
        "triangle-free": G.is_triangle_free(),
        "star-cutset-free": G.is_connected() and find_star_cutset(G) is None,
    }


def _require(G: Graph, names: list[str]) -> None:
    preds = family_predicates(G)
    failed = [name for name in names if not preds[name]]
    if failed:
        raise VerificationError(f"generated graph fails {', '.join(failed)}")


def gen_biclique_minus_matching(n: int, check: bool = True) -> Graph:
    """``K_{n//2, n - n//2}`` minus a matching of size ``n//2``; for odd ``n`` also
    minus one edge at the unmatched vertex.

    With ``check`` the graph must be connected, triangle-free and
    star-cutset-free. For odd ``n`` the unmatched vertex always ends up with
    the same neighbourhood as a matched one, so the check fails there.
    """
    if n < 6:
        raise PreconditionError("needs n >= 6")
    h = n // 2
    A, B = range(h), range(h, n)
    removed = {(i, h + i) for i in range(h)}
    if n % 2:
        removed.add((0, n - 1))
    G = Graph(n, [(a, b) for a in A for b in B if (a, b) not in removed])
    expected = (n * n - 2 * n) // 4
    if G.m != expected:
        raise VerificationError(f"expected {expected} edges, built {G.m}")
    if check:
        _require(G, ["connected", "triangle-free", "star-cutset-free"])
    return G


def _apex_quadrangulation(n: int) -> PlaneGraph:
    k = n - 2
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(i, k) for i in range(0, k, 2)] + [(i, k + 1) for i in range(1, k, 2)]
    return _embed_or_fail(Graph(n, edges))


def _split_vertex(PG: PlaneGraph, x: int, j: int, flip: bool) -> PlaneGraph:
    """Replace ``x`` by ``x'`` (arc ``r0..rj``) and ``x''`` (arc ``rj..r0``)."""
    r = list(PG.rotation[x])
    d = len(r)
    arc1, arc2 = r[: j + 1], r[j:] + r[:1]
    n = PG.n
    x2 = n  # x keeps its id as x'
    rot = [list(rr) for rr in PG.rotation] + [[]]
    rot[x] = arc1
    rot[x2] = arc2
    u, v = r[0], r[j]
    for w in r:
        rr = rot[w]
        i = rr.index(x)
        if w in (u, v):
            pair = [x, x2] if (w == u) != flip else [x2, x]
            rr[i : i + 1] = pair
        elif w in arc2:
            rr[i] = x2
    edges = [e for e in PG.graph.edges if x not in e]
    edges += [(x, w) for w in arc1] + [(x2, w) for w in arc2]
    G = Graph(n + 1, edges)
    return PlaneGraph(G, rot)


def gen_quadrangulation(n: int) -> PlaneGraph:
    """Star-cutset-free plane graph with every face a 4-cycle (``n`` = 4, 8 or >= 10)."""
    if n not in (4, 8) and n < 10:
        raise PreconditionError("quadrangulations here exist for n = 4, 8 and n >= 10")
    if n % 4 == 0:
        PG = cylinder(n // 4)
    elif n % 2 == 0:
        PG = _apex_quadrangulation(n)
    else:
        PG = _odd_quadrangulation(n)
    G = PG.graph
    if not is_quadrangulation(PG) or G.m != 2 * n - 4:
        raise VerificationError("generated graph is not a quadrangulation")
    if n > 4:
        _require(G, ["connected", "triangle-free", "star-cutset-free"])
    return PG


def _odd_quadrangulation(n: int) -> PlaneGraph:
    base = gen_quadrangulation(n - 1)
    deg = base.graph.degrees()
    for x in [v for v in range(base.n) if deg[v] >= 4]:
        d = deg[x]
        for j in range(2, d - 1):
            for flip in (False, True):
                try:
                    PG = _split_vertex(base, x, j, flip)
                except PreconditionError:
                    continue
                G = PG.graph
                if is_quadrangulation(PG) and G.is_triangle_free() and find_star_cutset(G) is None:
                    return PG
    raise VerificationError(f"no vertex split of the {n - 1}-vertex instance works")


def gen_book(n: int) -> Graph:
    """``n - 2`` triangles on the common edge ``01``."""
    if n < 3:
        raise PreconditionError("books need n >= 3")
    G = Graph(n, [(0, 1)] + [(i, j) for i in (0, 1) for j in range(2, n)])
    if not is_book(G):
        raise VerificationError("generated graph is not a book")
    return G


def gen_caterpillar(spine: int, legs: list[int] | None = None) -> Graph:
    """Spine ``0..spine-1`` with ``legs[i]`` extra leaves on spine vertex ``i``."""
    if spine < 1:
        raise PreconditionError("spine needs a vertex")
    legs = legs or [0] * spine
    if len(legs) != spine or min(legs) < 0:
        raise PreconditionError("one nonnegative leg count per spine vertex")
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i, k in enumerate(legs):
        for _ in range(k):
            edges.append((i, nxt))
            nxt += 1
    G = Graph(nxt, edges)
    if not is_caterpillar(G):
        raise VerificationError("generated graph is not a caterpillar")
    return G


def gen_spider(legs: list[int]) -> Graph:
    """Paths of the given lengths glued at a centre vertex 0."""
    if not legs or min(legs) < 1:
        raise PreconditionError("spider legs must be positive")
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    G = Graph(nxt, edges)
    if not G.is_tree():
        raise VerificationError("generated graph is not a tree")
    return G


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int = 0
    params: tuple[int, ...] = field(default_factory=tuple)


FAMILIES = ("biclique-minus-matching", "quadrangulation", "book", "caterpillar", "spider", "wheel", "cycle", "path")


def generate(spec: FamilySpec) -> Graph | PlaneGraph:
    f = spec.family
    if f == "biclique-minus-matching":
        return gen_biclique_minus_matching(spec.n)
    if f == "quadrangulation":
        return gen_quadrangulation(spec.n)
    if f == "book":
        return gen_book(spec.n)
    if f == "caterpillar":
        return gen_caterpillar(spec.n, list(spec.params) or None)
    if f == "spider":
        return gen_spider(list(spec.params))
    if f == "wheel":
        return wheel(spec.n)
    if f == "cycle":
        return cycle(spec.n)
    if f == "path":
        return path(spec.n)
    raise PreconditionError(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _ahu(T: Graph, root: int, parent: int = -1) -> str:
    return "(" + "".join(sorted(_ahu(T, c, root) for c in T.adj[root] if c != parent)) + ")"


def tree_canonical_form(T: Graph) -> str:
    """Isomorphism-invariant string of a tree, rooted at its centre (or the
    smaller encoding of its two centres)."""
    if T.n <= 2:
        return "(" * T.n + ")" * T.n
    p = tree_longest_path(T)
    L = len(p)
    centres = [p[(L - 1) // 2]] if L % 2 else [p[L // 2 - 1], p[L // 2]]
    return min(_ahu(T, c) for c in centres)


MAX_TREE_ORDER = 10
MAX_GRAPH_ORDER = 6


def enum_trees(n: int) -> list[Graph]:
    """All non-isomorphic trees on ``n`` vertices, by leaf augmentation."""
    if not 1 <= n <= MAX_TREE_ORDER:
        raise PreconditionError(f"tree enumeration supports 1 <= n <= {MAX_TREE_ORDER}")
    level = {tree_canonical_form(Graph(1)): Graph(1)}
    for k in range(2, n + 1):
        nxt: dict[str, Graph] = {}
        for key in sorted(level):
            T = level[key]
            for v in range(T.n):
                U = T.add_vertex([v])
                c = tree_canonical_form(U)
                nxt.setdefault(c, U)
        level = nxt
    return [level[k] for k in sorted(level)]


def enum_graphs(n: int) -> list[Graph]:
    """All non-isomorphic graphs on ``n`` vertices, by vertex augmentation."""
    if not 0 <= n <= MAX_GRAPH_ORDER:
        raise PreconditionError(f"graph enumeration supports n <= {MAX_GRAPH_ORDER}")
    level = {canonical_form(Graph(0)): Graph(0)}
    for k in range(1, n + 1):
        nxt: dict = {}
        for key in sorted(level):
            G = level[key]
            for r in range(G.n + 1):
                for nbrs in combinations(range(G.n), r):
                    H = G.add_vertex(nbrs)
                    nxt.setdefault(canonical_form(H), H)
        level = nxt
    return [level[k] for k in sorted(level)]


def enum_connected_graphs(n: int) -> list[Graph]:
    return [G for G in enum_graphs(n) if G.is_connected()]
