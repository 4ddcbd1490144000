"""Representation constructions for general graphs and certified bounds.

Every construction returns an :class:`OverlapRep` that the caller can check
with :func:`verify`; the orchestration helpers (:func:`best_upper`,
:func:`lower_bound`) package results as :class:`BoundCertificate` objects
whose evidence is re-checkable on the input graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .canon import find_isomorphism
from .errors import ParseError, PreconditionError, VerificationError
from .graph import (
    Graph,
    degeneracy,
    duplicate_neighborhoods,
    find_star_cutset,
    is_book,
    isolated_vertices,
)
from .model import OverlapRep, RepKind, format_rep, overlap_graph, parse_rep, verify
from .trees import skeleton, tree_overlap_rep

# ---------------------------------------------------------------------------
# Clique decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CliqueDecomposition:
    parts: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, parts: Iterable[Iterable[int]]) -> CliqueDecomposition:
        return cls(tuple(frozenset(p) for p in parts))

    @classmethod
    def edges(cls, G: Graph) -> CliqueDecomposition:
        return cls.of(G.sorted_edges())

    @property
    def max_order(self) -> int:
        return max((len(p) for p in self.parts), default=0)

    def __len__(self) -> int:
        return len(self.parts)

    def incidence(self, n: int) -> list[int]:
        count = [0] * n
        for p in self.parts:
            for v in p:
                count[v] += 1
        return count

    def validate(self, G: Graph) -> None:
        seen: set[tuple[int, int]] = set()
        for p in self.parts:
            if len(p) < 2:
                raise PreconditionError(f"part {sorted(p)} has fewer than two vertices")
            for u, v in combinations(sorted(p), 2):
                if not G.has_edge(u, v):
                    raise PreconditionError(f"part {sorted(p)} is not complete")
                if (u, v) in seen:
                    raise PreconditionError(f"edge {(u, v)} covered twice")
                seen.add((u, v))
        if seen != set(G.edges):
            missing = sorted(set(G.edges) - seen)
            raise PreconditionError(f"edges not covered: {missing[:5]}")


def decomposition_rep(G: Graph, F: CliqueDecomposition, require: str = "degree") -> OverlapRep:
    """Pure representation ``f(v) = {parts containing v}``, of size ``|F|``.

    ``require="degree"`` insists on ``min degree >= max part order``.
    ``require="incidence"`` only asks that every vertex lie in two parts,
    which is what purity actually needs and lets a triangle sit next to
    vertices of degree two.
    """
    F.validate(G)
    if require == "degree":
        if G.n and G.min_degree() < F.max_order:
            raise PreconditionError(
                f"minimum degree {G.min_degree()} is below the largest part order {F.max_order}"
            )
    elif require == "incidence":
        low = [v for v, c in enumerate(F.incidence(G.n)) if c < 2]
        if low:
            raise PreconditionError(f"vertices {low} lie in fewer than two parts")
    else:
        raise PreconditionError(f"unknown requirement {require!r}")
    sets = [[i for i, p in enumerate(F.parts) if v in p] for v in range(G.n)]
    return OverlapRep(sets)


def greedy_triangle_decomposition(G: Graph) -> CliqueDecomposition:
    """Triangles in lexicographic order while every vertex keeps two parts, then edges."""
    uncovered = set(G.edges)
    count = G.degrees()  # parts that will contain v if everything left became edges
    tris = []
    for a, b, c in G.triangles():
        es = {(a, b), (a, c), (b, c)}
        if es <= uncovered and all(count[x] - 1 >= 2 for x in (a, b, c)):
            uncovered -= es
            for x in (a, b, c):
                count[x] -= 1
            tris.append((a, b, c))
    return CliqueDecomposition.of(tris + sorted(uncovered))


# ---------------------------------------------------------------------------
# Edge Bound and books
# ---------------------------------------------------------------------------


def default_edge(G: Graph) -> tuple[int, int]:
    """Edge with the largest degree sum, lexicographically first on ties."""
    if not G.m:
        raise PreconditionError("graph has no edges")
    deg = G.degrees()
    return min(G.sorted_edges(), key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))


def edge_bound_rep(G: Graph, u: int | None = None, v: int | None = None) -> OverlapRep:
    """One label per edge other than ``uv``; size ``|E| - 1``.

    ``w`` outside ``{u, v}`` gets its incident edges, ``u`` and ``v`` get
    the edges they miss. Needs minimum degree two and ``G`` not a book.
    """
    if G.n == 0 or G.min_degree() < 2:
        raise PreconditionError("edge bound needs minimum degree at least 2")
    if is_book(G):
        raise PreconditionError("edge bound does not apply to books; use book_rep")
    if u is None or v is None:
        u, v = default_edge(G)
    if not G.has_edge(u, v):
        raise PreconditionError(f"({u}, {v}) is not an edge")
    uv = (min(u, v), max(u, v))
    labels = [e for e in G.sorted_edges() if e != uv]
    sets = []
    for w in range(G.n):
        if w in (u, v):
            sets.append([e for e in labels if w not in e])
        else:
            sets.append([e for e in labels if w in e])
    rep = OverlapRep(sets)
    for w in (u, v):
        if any(rep[w] < rep[x] for x in range(G.n)):
            raise VerificationError(f"set of {w} is properly contained in another set")
    return rep


def book_rep(G: Graph) -> OverlapRep:
    """Three labels for ``n - 2`` triangles on a common edge."""
    if not is_book(G):
        raise PreconditionError("not a book")
    deg = G.degrees()
    spine = [x for x in range(G.n) if deg[x] == G.n - 1][:2]
    if G.n == 3:
        spine = [0, 1]
    sets = [{1, 3} for _ in range(G.n)]
    sets[spine[0]] = {1, 2}
    sets[spine[1]] = {2, 3}
    return OverlapRep(sets)


def clique_rep(n: int) -> OverlapRep:
    """The first ``n`` ``k``-subsets of ``{1..2k-1}`` for the least feasible ``k``."""
    if n < 1:
        raise PreconditionError("clique needs at least one vertex")
    k = 1
    while comb(2 * k - 1, k) < n:
        k += 1
    subsets = list(combinations(range(1, 2 * k), k))[:n]
    return OverlapRep(subsets)


# ---------------------------------------------------------------------------
# Extensions by one vertex or one triangle
# ---------------------------------------------------------------------------


def _lift(rep: OverlapRep, kept: Sequence[int], n: int) -> list[set[int] | None]:
    sets: list[set[int] | None] = [None] * n
    for i, v in enumerate(kept):
        sets[v] = set(rep[i])
    return sets


def _check_sub(rep: OverlapRep, H: Graph, kind: RepKind) -> None:
    if rep.n != H.n:
        raise PreconditionError(f"representation has {rep.n} sets, subgraph has {H.n} vertices")
    if not verify(H, rep, kind).ok:
        raise PreconditionError(f"representation does not verify ({kind.value}) on the subgraph")


def extend_deg_le2(rep: OverlapRep, G: Graph, v: int) -> OverlapRep:
    """Pure rep of ``G`` from a pure rep of ``G - v`` when ``d(v) <= 2``."""
    if G.n < 3:
        raise PreconditionError("needs at least three vertices")
    d = G.degree(v)
    if d > 2:
        raise PreconditionError(f"vertex {v} has degree {d} > 2")
    H, kept = G.delete_vertices([v])
    _check_sub(rep, H, RepKind.PURE)
    sets = _lift(rep, kept, G.n)
    top = rep.t
    if d == 0:
        sets[v] = {top + 1}
    else:
        a, b = top + 1, top + 2
        sets[v] = {a, b}
        for lab, x in zip((a, b), sorted(G.adj[v])):
            sets[x].add(lab)
    return OverlapRep(sets)


def _private_labels(rep_sets: list[set[int] | None], x: int) -> set[int]:
    others: set[int] = set()
    for y, s in enumerate(rep_sets):
        if y != x and s is not None:
            others |= s
    return rep_sets[x] - others


def extend_low_degree_pure(rep: OverlapRep, G: Graph, v: int) -> OverlapRep:
    """Like :func:`extend_deg_le2` but spends one new label when it can.

    If a neighbour ``u`` of ``v`` has a label nobody else uses and at least
    one more label, ``v`` reuses it. If the two neighbours are adjacent and
    share a label nobody else uses, ``v`` reuses that one.
    """
    d = G.degree(v)
    if d == 0 or d > 2 or G.n < 3:
        return extend_deg_le2(rep, G, v)
    H, kept = G.delete_vertices([v])
    _check_sub(rep, H, RepKind.PURE)
    sets = _lift(rep, kept, G.n)
    nbrs = sorted(G.adj[v])
    new = rep.t + 1
    for u in nbrs:
        priv = _private_labels(sets, u)
        if priv and len(sets[u]) >= 2:
            p = min(priv)
            sets[v] = {p, new}
            for w in nbrs:
                if w != u:
                    sets[w].add(new)
            return OverlapRep(sets)
    if d == 2 and G.has_edge(*nbrs):
        u, w = nbrs
        shared = sets[u] & sets[w]
        others: set[int] = set()
        for y, s in enumerate(sets):
            if y not in (u, w) and s is not None:
                others |= s
        q = sorted(shared - others)
        if q:
            sets[v] = {q[0], new}
            return OverlapRep(sets)
    return extend_deg_le2(rep, G, v)


def extend_leaf(rep: OverlapRep, G: Graph, v: int) -> OverlapRep:
    """Overlap rep of ``G`` from one of ``G - v``, for a leaf ``v``, adding two labels."""
    if G.degree(v) != 1:
        raise PreconditionError(f"vertex {v} is not a leaf")
    H, kept = G.delete_vertices([v])
    if H.m == 0:
        raise PreconditionError("G - v must have an edge")
    _check_sub(rep, H, RepKind.OVERLAP)
    sets = _lift(rep, kept, G.n)
    (u,) = G.adj[v]
    a, b = rep.t + 1, rep.t + 2
    if G.degree(u) == 1:
        # isolated edge: both ends take everything else plus a private label
        R: set[int] = set()
        for x in range(G.n):
            if x not in (u, v):
                R |= sets[x]
        sets[u] = R | {a}
        sets[v] = R | {b}
        return OverlapRep(sets)
    fu = frozenset(sets[u])
    for x in range(G.n):
        if x not in (u, v) and sets[x] >= fu:
            sets[x] |= {a, b}
    sets[u] = set(fu) | {b}
    sets[v] = {a, b}
    return OverlapRep(sets)


@dataclass(frozen=True)
class TriangleExtension:
    rep: OverlapRep
    bound: int  # old size + n - n'
    n_prime: int


def extend_triangle(rep: OverlapRep, G: Graph, T: Sequence[int]) -> TriangleExtension:
    """Pure rep of ``G`` from a pure rep of ``G - T`` for a triangle ``T``.

    Leaves of ``G - T`` lend their private label to their neighbours in
    ``T``; every other vertex adjacent to ``T`` gets a fresh label shared
    with those neighbours.
    """
    T = sorted(set(T))
    if len(T) != 3 or not all(G.has_edge(x, y) for x, y in combinations(T, 2)):
        raise PreconditionError(f"{T} is not a triangle")
    H, kept = G.delete_vertices(T)
    _check_sub(rep, H, RepKind.PURE)
    sets = _lift(rep, kept, G.n)
    top = rep.t
    a, b, c = top + 1, top + 2, top + 3
    sets[T[0]], sets[T[1]], sets[T[2]] = {a, b}, {a, c}, {b, c}
    nxt = top + 4
    pos = {x: i for i, x in enumerate(kept)}
    n_prime = 0
    for x in kept:
        if H.degree(pos[x]) == 1:
            n_prime += 1
    for x in kept:
        nt = [t for t in T if G.has_edge(x, t)]
        if not nt:
            continue
        if H.degree(pos[x]) == 1:
            sub = [sets[y] for y in kept]
            priv = _private_labels(sub, kept.index(x))
            lab = min(priv)
        else:
            lab = nxt
            nxt += 1
            sets[x].add(lab)
        for t in nt:
            sets[t].add(lab)
    out = OverlapRep(sets)
    return TriangleExtension(out, rep.t + G.n - n_prime, n_prime)


def disjoint_union_rep(reps: Sequence[OverlapRep], parts: Sequence[Sequence[int]], n: int) -> OverlapRep:
    """Combine reps of vertex-disjoint pieces with disjoint label ranges."""
    sets: list[set | None] = [None] * n
    for i, (rep, vs) in enumerate(zip(reps, parts)):
        for j, v in enumerate(vs):
            sets[v] = {(i, lab) for lab in rep[j]}
    return OverlapRep(sets)


# ---------------------------------------------------------------------------
# Free vertices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Removal:
    kind: str  # "isolated" or "duplicate"
    vertex: int
    twin: int | None = None


@dataclass(frozen=True)
class ReductionTrace:
    n: int
    removals: tuple[Removal, ...]
    kept: tuple[int, ...]

    def __bool__(self) -> bool:
        return bool(self.removals)


def reduce(G: Graph) -> tuple[Graph, ReductionTrace]:
    """Strip isolated vertices and one vertex of each twin pair until none remain.

    At least one vertex is always kept. Ids in the trace refer to ``G``.
    """
    H = G
    ids = list(range(G.n))
    removals: list[Removal] = []
    while H.n > 1:
        iso = isolated_vertices(H)
        if iso:
            x = iso[-1]
            removals.append(Removal("isolated", ids[x]))
        else:
            dups = duplicate_neighborhoods(H)
            if not dups:
                break
            x, w = min(dups, key=lambda p: (p[1], p[0]))
            removals.append(Removal("duplicate", ids[x], ids[w]))
        H, kept = H.delete_vertices([x])
        ids = [ids[i] for i in kept]
    return H, ReductionTrace(G.n, tuple(removals), tuple(ids))


def unreduce(rep: OverlapRep, trace: ReductionTrace) -> OverlapRep:
    """Put the removed vertices back: isolated ones get everything, twins copy."""
    if rep.n != len(trace.kept):
        raise PreconditionError(f"trace keeps {len(trace.kept)} vertices, rep has {rep.n}")
    sets: dict[int, frozenset[int]] = {v: rep[i] for i, v in enumerate(trace.kept)}
    for r in reversed(trace.removals):
        if r.kind == "isolated":
            sets[r.vertex] = frozenset().union(*sets.values())
        elif r.twin in sets:
            sets[r.vertex] = sets[r.twin]
        else:
            raise PreconditionError(f"twin {r.twin} of {r.vertex} missing from trace")
    return OverlapRep(sets[v] for v in range(trace.n))


# ---------------------------------------------------------------------------
# Small graphs
# ---------------------------------------------------------------------------


def _sets(text: str) -> OverlapRep:
    return OverlapRep([list(tok) for tok in text.split()])


def _co(n: int, missing: list[tuple[int, int]]) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if e not in missing])


@dataclass(frozen=True)
class TableEntry:
    graph: Graph  # the graph the entry is meant to represent
    rep: OverlapRep  # the published sets, labels are single characters

    @property
    def ok(self) -> bool:
        """Whether the sets really represent the named graph (up to isomorphism)."""
        return find_isomorphism(overlap_graph(self.rep), self.graph) is not None


#: Explicit representations for the 4- and 5-vertex graphs that resist the
#: general constructions, keyed by the graph's name.
SMALL_TABLE: dict[str, TableEntry] = {
    "K4": TableEntry(_co(4, []), _sets("123 41 42 43")),
    "K1,3+": TableEntry(Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)]), _sets("123 124 13 23")),
    "K4+pendant": TableEntry(_co(4, []).add_vertex([3]), _sets("145 245 345 1234 45")),
    "K3+two-pendants": TableEntry(Graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)]), _sets("12 23 34 45 1245")),
    "K3+pendant-P3": TableEntry(Graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4)]), _sets("12 23 34 45 1235")),
    "K5": TableEntry(_co(5, []), _sets("123 234 345 451 512")),
    "co(P2+3K1)": TableEntry(_co(5, [(0, 1)]), _sets("123 234 345 14 25")),
    "co(P3+2K1)": TableEntry(_co(5, [(0, 1), (1, 2)]), _sets("123 345 14 25 1245")),
    "K2,2,1": TableEntry(_co(5, [(0, 1), (2, 3)]), _sets("12 34 14 23 13")),
    "K3,1,1": TableEntry(_co(5, [(0, 1), (0, 2), (1, 2)]), _sets("12 34 1234 513 524")),
    "co(P4+K1)": TableEntry(_co(5, [(0, 1), (1, 2), (2, 3)]), _sets("12 23 34 45 135")),
}

#: Graphs on four vertices whose overlap number is 4 rather than 3.
SMALL_EXCEPTIONS = ("P4", "K4", "K1,3+")


def match_table(G: Graph) -> tuple[str, OverlapRep] | None:
    """Table entry isomorphic to ``G``, with its sets moved onto ``G``'s vertices.

    Entries whose sets do not represent their named graph are skipped.
    """
    if G.n not in (4, 5):
        return None
    for name, entry in SMALL_TABLE.items():
        if not entry.ok:
            continue
        phi = find_isomorphism(overlap_graph(entry.rep), G)
        if phi is not None:
            sets: list = [None] * G.n
            for i, s in enumerate(entry.rep):
                sets[phi[i]] = s
            return name, OverlapRep(sets)
    return None


def small_bound(G: Graph) -> int:
    """Claimed bound for 4- and 5-vertex graphs: ``2n - 5``, or 4 for the exceptions."""
    if G.n not in (4, 5):
        raise PreconditionError("bound stated for four or five vertices")
    if G.n == 4:
        exceptions = [Graph(4, [(0, 1), (1, 2), (2, 3)]), _co(4, []), SMALL_TABLE["K1,3+"].graph]
        if any(find_isomorphism(G, H) is not None for H in exceptions):
            return 4
    return 2 * G.n - 5


def _exhaustive_rep(G: Graph) -> OverlapRep:
    from .exact import exact_phi

    return exact_phi(G).witness


def small_graph_rep(G: Graph) -> OverlapRep:
    """Table representation if ``G`` is a table graph, else the best construction.

    If no construction meets the small-graph bound, a witness from the
    exhaustive search is returned instead (it is verified like any other).
    """
    if G.n > 5:
        raise PreconditionError("small_graph_rep handles at most five vertices")
    hit = match_table(G)
    if hit is not None:
        return hit[1]
    return _best_phi(G, False)[0]


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundCertificate:
    quantity: str  # "phi" or "pol"
    direction: str  # "upper" or "lower"
    value: int
    rule: str
    witness: OverlapRep | None = None
    subset: tuple[int, ...] | None = None

    def check(self, G: Graph) -> bool:
        if self.direction == "upper":
            if self.witness is None:
                return False
            kind = RepKind.PURE if self.quantity == "pol" else RepKind.OVERLAP
            return self.witness.t == self.value and verify(G, self.witness, kind).ok
        S = tuple(range(G.n)) if self.subset is None else self.subset
        if any(not 0 <= v < G.n for v in S):
            return False
        H, _ = G.induced_subgraph(S)
        rule = LOWER_RULES.get(self.rule)
        if rule is None or (self.quantity == "phi" and rule[0] == "pol"):
            return False
        return rule[1](H) == self.value


def _trivial(H: Graph) -> int | None:
    if H.n == 0:
        return 0
    return 3 if H.m else 1


def _tree_rule(H: Graph) -> int | None:
    if H.n >= 3 and H.is_tree():
        return skeleton(H).size
    return None


def _edge_rule(H: Graph) -> int | None:
    if H.n >= 2 and H.is_connected() and H.is_triangle_free() and find_star_cutset(H) is None:
        return H.m - 1
    return None


def _pure_edge_rule(H: Graph) -> int | None:
    return H.m if H.is_triangle_free() else None


def _exhaustive(H: Graph) -> int | None:
    from .exact import exact_phi

    return exact_phi(H).value


def _exhaustive_pol(H: Graph) -> int | None:
    from .exact import exact_pol

    return exact_pol(H).value


#: rule name -> (quantity it bounds, value on a graph or None if inapplicable).
#: Bounds on phi also bound pol from below.
LOWER_RULES = {
    "trivial": ("phi", _trivial),
    "tree-skeleton": ("phi", _tree_rule),
    "triangle-free-no-star-cutset": ("phi", _edge_rule),
    "triangle-free-pure": ("pol", _pure_edge_rule),
    "exhaustive-search": ("phi", _exhaustive),
    "exhaustive-search-pure": ("pol", _exhaustive_pol),
}


def _lower_subsets(G: Graph) -> list[tuple[int, ...]]:
    H, trace = reduce(G)
    subsets = [tuple(range(G.n)), tuple(trace.kept)]
    subsets += [tuple(c) for c in G.components()]
    subsets += [tuple(trace.kept[i] for i in c) for c in H.components()]
    out = []
    for s in subsets:
        s = tuple(sorted(s))
        if s not in out:
            out.append(s)
    return out


def lower_bound(G: Graph, quantity: str = "phi") -> list[BoundCertificate]:
    """Every applicable certified lower bound, largest first.

    Bounds for the overlap number are applied to induced subgraphs (the
    overlap number never increases on passing to one): the whole graph,
    its reduction, and components of both.
    """
    certs: list[BoundCertificate] = []
    seen = set()
    for S in _lower_subsets(G):
        H, _ = G.induced_subgraph(S)
        for name in ("trivial", "tree-skeleton", "triangle-free-no-star-cutset"):
            val = LOWER_RULES[name][1](H)
            if val is not None and (name, val) not in seen:
                seen.add((name, val))
                certs.append(BoundCertificate(quantity, "lower", val, name, subset=S))
    if quantity == "pol":
        val = _pure_edge_rule(G)
        if val is not None:
            certs.append(BoundCertificate("pol", "lower", val, "triangle-free-pure", subset=tuple(range(G.n))))
    certs.sort(key=lambda c: (-c.value, c.rule))
    return certs


def best_lower(G: Graph, quantity: str = "phi") -> BoundCertificate:
    return lower_bound(G, quantity)[0]


# ---------------------------------------------------------------------------
# Upper bound orchestration
# ---------------------------------------------------------------------------


def _pick(cands: list[tuple[OverlapRep, str]]) -> tuple[OverlapRep, str]:
    return min(cands, key=lambda c: c[0].t)


@lru_cache(maxsize=8192)
def _best_pol(G: Graph) -> tuple[OverlapRep, str]:
    if G.n == 0:
        return OverlapRep([]), "empty"
    if G.is_complete():
        return clique_rep(G.n), "clique"
    comps = G.components()
    if len(comps) > 1:
        reps = [_best_pol(G.induced_subgraph(c)[0])[0] for c in comps]
        return disjoint_union_rep(reps, comps, G.n), "union"
    cands: list[tuple[OverlapRep, str]] = []
    delta = G.min_degree()
    if delta >= 2:
        cands.append((decomposition_rep(G, CliqueDecomposition.edges(G)), "decomposition"))
        F = greedy_triangle_decomposition(G)
        if min(F.incidence(G.n)) >= 2:
            cands.append((decomposition_rep(G, F, require="incidence"), "decomposition"))
    if delta <= 2:
        _, order = degeneracy(G)
        v = order[0]
        H, _ = G.delete_vertices([v])
        cands.append((extend_low_degree_pure(_best_pol(H)[0], G, v), "deletion"))
    else:
        tris = G.triangles()
        if tris:
            H, _ = G.delete_vertices(tris[0])
            cands.append((extend_triangle(_best_pol(H)[0], G, tris[0]).rep, "triangle"))
    return _pick(cands)


def _planar_candidate(G: Graph) -> tuple[OverlapRep, str] | None:
    from .families import planar_embedding
    from .planar import planar_phi_upper

    PG = planar_embedding(G)
    if PG is None:
        return None
    cert = planar_phi_upper(PG)
    return cert.witness, cert.rule


@lru_cache(maxsize=8192)
def _best_phi(G: Graph, planar: bool = True) -> tuple[OverlapRep, str]:
    H, trace = reduce(G)
    rep, rule = _best_phi_reduced(H, planar)
    if trace:
        return unreduce(rep, trace), "reduce+" + rule
    return rep, rule


def _best_phi_reduced(H: Graph, planar: bool) -> tuple[OverlapRep, str]:
    if H.n <= 1:
        return OverlapRep([[1]] * H.n), "single-vertex"
    cands: list[tuple[OverlapRep, str]] = []
    hit = match_table(H)
    if hit is not None:
        cands.append((hit[1], "small-table"))
    if H.is_tree():
        cands.append((tree_overlap_rep(H), "tree"))
    if H.is_complete():
        cands.append((clique_rep(H.n), "clique"))
    if H.min_degree() >= 2 and not is_book(H):
        cands.append((edge_bound_rep(H), "edge-bound"))
    pure, prule = _best_pol(H)
    cands.append((pure, "pure-" + prule))
    comps = H.components()
    if len(comps) > 1:
        reps = [_best_phi(H.induced_subgraph(c)[0], planar)[0] for c in comps]
        cands.append((disjoint_union_rep(reps, comps, H.n), "union"))
    leaves = H.leaves()
    if leaves:
        v = leaves[0]
        rest, _ = H.delete_vertices([v])
        if rest.m:
            cands.append((extend_leaf(_best_phi(rest, planar)[0], H, v), "leaf"))
    if planar and H.n >= 6:
        got = _planar_candidate(H)
        if got is not None:
            cands.append(got)
    best = _pick(cands)
    if H.n in (4, 5) and best[0].t > small_bound(H):
        cands.append((_exhaustive_rep(H), "exhaustive-search"))
        best = _pick(cands)
    return best


def best_upper(G: Graph, planar: bool = True) -> BoundCertificate:
    """Smallest verified overlap representation among all constructions."""
    rep, rule = _best_phi(G, planar)
    cert = BoundCertificate("phi", "upper", rep.t, rule, witness=rep)
    if not cert.check(G):
        raise VerificationError(f"construction {rule} produced an invalid representation")
    return cert


def best_pure_upper(G: Graph) -> BoundCertificate:
    """Smallest verified pure overlap representation among the pure constructions."""
    rep, rule = _best_pol(G)
    cert = BoundCertificate("pol", "upper", rep.t, rule, witness=rep)
    if not cert.check(G):
        raise VerificationError(f"construction {rule} produced an invalid pure representation")
    return cert


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def format_certificate(cert: BoundCertificate) -> str:
    head = f"{cert.quantity} {cert.direction} {cert.value} {cert.rule}\n"
    if cert.direction == "upper":
        return head + format_rep(cert.witness)
    subset = cert.subset or ()
    return head + "subset: " + " ".join(map(str, subset)) + "\n"


def parse_certificate(text: str) -> BoundCertificate:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty certificate")
    parts = lines[0].split()
    if len(parts) != 4 or parts[0] not in ("phi", "pol") or parts[1] not in ("upper", "lower"):
        raise ParseError(f"bad certificate header {lines[0]!r}")
    try:
        value = int(parts[2])
    except ValueError as exc:
        raise ParseError(f"bad value {parts[2]!r}") from exc
    if parts[1] == "upper":
        rep = parse_rep("\n".join(lines[1:]))
        return BoundCertificate(parts[0], "upper", value, parts[3], witness=rep)
    if len(lines) < 2 or not lines[1].startswith("subset:"):
        raise ParseError("lower certificate needs a 'subset:' line")
    try:
        subset = tuple(int(tok) for tok in lines[1][len("subset:") :].split())
    except ValueError as exc:
        raise ParseError(f"bad subset line {lines[1]!r}") from exc
    return BoundCertificate(parts[0], "lower", value, parts[3], subset=subset)
