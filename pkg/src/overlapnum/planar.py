"""Plane graphs as rotation systems and the planar upper-bound pipeline.

Conventions: ``rotation[v]`` lists the neighbours of ``v`` in cyclic order.
Faces are traced by the rule "arrive at ``v`` from ``u``, leave towards the
neighbour just before ``u`` in ``rotation[v]``". A face ``(a, b, c)`` is
therefore bounded by the darts ``a->b``, ``b->c``, ``c->a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .constructions import (
    BoundCertificate,
    CliqueDecomposition,
    book_rep,
    decomposition_rep,
    edge_bound_rep,
    extend_leaf,
    extend_low_degree_pure,
    reduce,
    small_graph_rep,
    unreduce,
)
from .errors import ParseError, PreconditionError, VerificationError
from .graph import Graph, degeneracy, is_book
from .model import OverlapRep, RepKind, verify


class PlaneGraph:
    """A graph with a rotation system; validated to be planar by Euler's formula."""

    __slots__ = ("graph", "rotation", "__dict__")

    def __init__(self, G: Graph, rotation: Sequence[Sequence[int]], check_euler: bool = True):
        if len(rotation) != G.n:
            raise PreconditionError(f"rotation has {len(rotation)} entries for {G.n} vertices")
        rot = tuple(tuple(r) for r in rotation)
        for v, r in enumerate(rot):
            if len(set(r)) != len(r) or set(r) != G.adj[v]:
                raise PreconditionError(f"rotation at {v} is not a cyclic order of its neighbours")
        self.graph = G
        self.rotation = rot
        if check_euler:
            bad = self.euler_defects()
            if bad:
                raise PreconditionError(f"rotation is not planar on components {bad}")

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def _pos(self) -> list[dict[int, int]]:
        return [{u: i for i, u in enumerate(r)} for r in self.rotation]

    def next_dart(self, u: int, v: int) -> tuple[int, int]:
        r = self.rotation[v]
        return v, r[(self._pos[v][u] - 1) % len(r)]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Facial walks as vertex sequences, each dart used exactly once."""
        seen: set[tuple[int, int]] = set()
        out = []
        for u in range(self.n):
            for v in sorted(self.rotation[u]):
                if (u, v) in seen:
                    continue
                walk = []
                d = (u, v)
                while d not in seen:
                    seen.add(d)
                    walk.append(d[0])
                    d = self.next_dart(*d)
                out.append(tuple(walk))
        return tuple(out)

    def euler_defects(self) -> list[int]:
        """Components (by least vertex) where ``V - E + F != 2``."""
        comp_of = {}
        comps = self.graph.components()
        for i, c in enumerate(comps):
            for v in c:
                comp_of[v] = i
        fcount = [0] * len(comps)
        for f in self.faces:
            fcount[comp_of[f[0]]] += 1
        bad = []
        for i, c in enumerate(comps):
            m = sum(len(self.graph.adj[v]) for v in c) // 2
            if m and len(c) - m + fcount[i] != 2:
                bad.append(min(c))
        return bad

    def face_lengths(self) -> list[int]:
        return [len(f) for f in self.faces]

    def facial_triangles(self) -> list[tuple[int, int, int]]:
        """Triangular faces in face order, sorted by their vertex sets; one per vertex set."""
        seen = {}
        for f in self.faces:
            if len(f) == 3 and len(set(f)) == 3:
                key = tuple(sorted(f))
                seen.setdefault(key, f)
        return [seen[k] for k in sorted(seen)]

    def delete_vertices(self, removed: Iterable[int]) -> tuple[PlaneGraph, list[int]]:
        gone = set(removed)
        H, kept = self.graph.delete_vertices(gone)
        idx = {v: i for i, v in enumerate(kept)}
        rot = [[idx[u] for u in self.rotation[v] if u not in gone] for v in kept]
        return PlaneGraph(H, rot, check_euler=False), kept

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneGraph) and self.graph == other.graph and self.rotation == other.rotation

    def __hash__(self) -> int:
        return hash((self.graph, self.rotation))

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.graph.m}, faces={len(self.faces)})"


def trace_faces(PG: PlaneGraph) -> list[tuple[int, ...]]:
    return list(PG.faces)


def is_quadrangulation(PG: PlaneGraph) -> bool:
    """Connected with every facial walk of length four."""
    G = PG.graph
    return G.n >= 3 and G.is_connected() and all(len(f) == 4 for f in PG.faces)


def subdivide_face(PG: PlaneGraph, face: tuple[int, int, int]) -> PlaneGraph:
    """Delete the triangle's edges and put a new vertex ``n`` inside, joined to its corners."""
    a, b, c = face
    v = PG.n
    rot = [list(r) for r in PG.rotation]
    # the corner of the face at x lies between the face's predecessor and successor of x
    for x, before, after in ((a, b, c), (b, c, a), (c, a, b)):
        r = rot[x]
        i = r.index(before)
        r.insert(i + 1, v)
        r.remove(before)
        r.remove(after)
    rot.append([a, b, c])
    edges = [e for e in PG.graph.edges if set(e) - {a, b, c}] + [(a, v), (b, v), (c, v)]
    return PlaneGraph(Graph(v + 1, edges), rot)


# ---------------------------------------------------------------------------
# Decomposition into edges and facial triangles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Part:
    vertices: frozenset[int]
    kind: str  # "edge" or "triangle"


@dataclass(frozen=True)
class PlanarDecomposition:
    parts: tuple[Part, ...]

    @property
    def n_edges(self) -> int:
        return sum(p.kind == "edge" for p in self.parts)

    @property
    def n_triangles(self) -> int:
        return sum(p.kind == "triangle" for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def as_clique_decomposition(self) -> CliqueDecomposition:
        return CliqueDecomposition(tuple(p.vertices for p in self.parts))

    def validate(self, PG: PlaneGraph) -> None:
        self.as_clique_decomposition().validate(PG.graph)
        faces = {frozenset(f) for f in PG.faces if len(f) == 3}
        for p in self.parts:
            if p.kind == "triangle" and p.vertices not in faces:
                raise VerificationError(f"triangle {sorted(p.vertices)} is not a face")


def _edge(u: int, v: int) -> Part:
    return Part(frozenset((u, v)), "edge")


def _tri(*vs: int) -> Part:
    return Part(frozenset(vs), "triangle")


def _face_at(PG: PlaneGraph, u: int, v: int) -> tuple[int, ...]:
    """The facial walk that uses the dart ``u -> v``, starting there."""
    walk = []
    d = (u, v)
    while True:
        walk.append(d[0])
        d = PG.next_dart(*d)
        if d == (u, v):
            return tuple(walk)


def _decompose(PG: PlaneGraph, avoid: frozenset[int] | None = None) -> list[Part]:
    G = PG.graph
    tris = PG.facial_triangles()
    if not tris:
        return [_edge(u, v) for u, v in G.sorted_edges()]
    if avoid is not None:
        # prefer a triangle that leaves the edge `avoid` to be covered on its own
        tris = [t for t in tris if not avoid <= set(t)] + [t for t in tris if avoid <= set(t)]
    a, b, c = tris[0]
    T = _tri(a, b, c)
    P1 = subdivide_face(PG, (a, b, c))
    v = G.n
    D1 = _decompose(P1, avoid)
    spokes = {_edge(v, a), _edge(v, b), _edge(v, c)}
    if not is_quadrangulation(P1):
        return [p for p in D1 if p not in spokes] + [T]

    # every face of G' is a 4-cycle: look at the three faces around v
    opposite = {}
    for x, y in ((a, b), (b, c), (c, a)):
        # face through v with corners x and y: dart y -> v is followed by v -> x
        f = _face_at(P1, v, x)
        if len(f) != 4 or f[3] not in (a, b, c) or {f[1], f[3]} != {x, y}:
            f = _face_at(P1, v, y)
        if len(f) != 4 or {f[1], f[3]} != {x, y}:
            raise VerificationError(f"face around the new vertex at {x},{y} is not a 4-cycle: {f}")
        opposite[(x, y)] = f[2]
    facial = {frozenset(f) for f in PG.faces if len(f) == 3}
    outer = []
    for (x, y), z in opposite.items():
        tri = frozenset((x, y, z))
        if tri not in facial:
            raise VerificationError(
                f"edge {x}{y} of the chosen triangle is not in a second facial triangle ({sorted(tri)})"
            )
        outer.append(tri)
    xs = set(opposite.values())
    if len(xs) == 1:
        # the component of G containing T is K_4
        (z,) = xs
        comp = {a, b, c, z}
        rest, kept = PG.delete_vertices(comp)
        if rest.n >= 3:
            sub = [Part(frozenset(kept[i] for i in p.vertices), p.kind) for p in _decompose(rest)]
        else:
            sub = [_edge(kept[u], kept[w]) for u, w in rest.graph.sorted_edges()]
        return sub + [T, _edge(a, z), _edge(b, z), _edge(c, z)]
    region = {frozenset(e) for e in ((a, b), (b, c), (c, a))}
    for tri in outer:
        ts = sorted(tri)
        region |= {frozenset((ts[0], ts[1])), frozenset((ts[0], ts[2])), frozenset((ts[1], ts[2]))}
    chosen: list[frozenset[int]] = []
    used: set[frozenset[int]] = set()
    best: list[frozenset[int]] = []
    # lexicographically first largest edge-disjoint subfamily of the outer triangles
    order = sorted(outer, key=sorted)
    for mask in range(1 << len(order)):
        pick = [order[i] for i in range(len(order)) if mask >> i & 1]
        es = [frozenset(p) for t in pick for p in _pairs(t)]
        if len(es) == len(set(es)) and len(pick) > len(best):
            best = pick
    chosen = best
    used = {frozenset(p) for t in chosen for p in _pairs(t)}
    keep = [p for p in D1 if v not in p.vertices and p.vertices not in region]
    extra = [_edge(*sorted(e)) for e in sorted(region - used, key=sorted)]
    return keep + [Part(t, "triangle") for t in chosen] + extra


def _pairs(t: Iterable[int]) -> list[tuple[int, int]]:
    s = sorted(t)
    return [(s[i], s[j]) for i in range(len(s)) for j in range(i + 1, len(s))]


def _trichotomy(PG: PlaneGraph, D: PlanarDecomposition) -> str | None:
    n = PG.n
    if len(D) <= 2 * n - 5:
        return "general"
    if is_quadrangulation(PG) and D.n_triangles == 0 and len(D) == 2 * n - 4:
        return "quadrangulation"
    if n == 4 and PG.graph.is_complete() and D.n_triangles == 1 and D.n_edges == 3:
        return "K4"
    return None


def plan_decompose(PG: PlaneGraph, avoid: tuple[int, int] | None = None) -> PlanarDecomposition:
    """Edges and facial triangles covering every edge once.

    At most ``2n - 5`` parts, except ``2n - 4`` edges when every face is a
    4-cycle and three edges plus a triangle for ``K_4``. With ``avoid``,
    facial triangles through that edge are chosen last.
    """
    if PG.n < 3:
        raise PreconditionError("needs at least three vertices")
    hint = frozenset(avoid) if avoid is not None else None
    D = PlanarDecomposition(tuple(sorted(_decompose(PG, hint), key=lambda p: (p.kind, sorted(p.vertices)))))
    D.validate(PG)
    if _trichotomy(PG, D) is None:
        raise VerificationError(f"decomposition with {len(D)} parts breaks the size bound for n={PG.n}")
    return D


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------


def planar_pure_rep(PG: PlaneGraph, avoid: tuple[int, int] | None = None) -> OverlapRep:
    """Pure representation following the minimum-degree recursion.

    Minimum degree three: decompose into edges and facial triangles. Otherwise
    remove a vertex of least degree, represent the rest, and extend. When
    that vertex has two adjacent neighbours, the rest is decomposed so their
    edge gets a label of its own, which the removed vertex can then share.
    """
    G = PG.graph
    if G.n == 0:
        return OverlapRep([])
    if G.n == 1:
        return OverlapRep([[1]])
    if G.n == 2:
        return OverlapRep([[1, 2], [2, 3]] if G.m else [[1], [2]])
    if G.min_degree() >= 3:
        D = plan_decompose(PG, avoid)
        return decomposition_rep(G, D.as_clique_decomposition())
    _, order = degeneracy(G)
    v = order[0]
    sub, kept = PG.delete_vertices([v])
    nbrs = sorted(G.adj[v])
    hint = None
    if len(nbrs) == 2 and G.has_edge(*nbrs):
        hint = (kept.index(nbrs[0]), kept.index(nbrs[1]))
    return extend_low_degree_pure(planar_pure_rep(sub, hint), G, v)


def _with_triangle(G: Graph) -> OverlapRep | None:
    """Decomposition bound with one triangle whose corners all see outside it."""
    for t in G.triangles():
        if all(G.degree(x) >= 3 for x in t):
            rest = [e for e in G.sorted_edges() if not set(e) <= set(t)]
            F = CliqueDecomposition.of([t] + rest)
            return decomposition_rep(G, F, require="incidence")
    return None


def _planar_phi(PG: PlaneGraph) -> tuple[OverlapRep, str]:
    G = PG.graph
    H, trace = reduce(G)
    if trace:
        kept = trace.kept
        gone = set(range(G.n)) - set(kept)
        sub, _ = PG.delete_vertices(gone)
        rep, rule = _planar_phi(sub)
        return unreduce(rep, trace), "reduce+" + rule
    if G.n <= 5:
        return small_graph_rep(G), "small-table"
    cands: list[tuple[OverlapRep, str]] = []
    leaves = G.leaves()
    if leaves:
        v = leaves[0]
        sub, _ = PG.delete_vertices([v])
        rep, rule = _planar_phi(sub)
        return extend_leaf(rep, G, v), "leaf+" + rule
    k, _ = degeneracy(G)
    if is_book(G):
        cands.append((book_rep(G), "book"))
    elif G.min_degree() >= 2:
        cands.append((edge_bound_rep(G), "edge-bound"))
    if k <= 2 and G.m == 2 * G.n - 3:
        rep = _with_triangle(G)
        if rep is not None:
            cands.append((rep, "decomposition"))
    cands.append((planar_pure_rep(PG), "planar-pure"))
    return min(cands, key=lambda c: c[0].t)


def planar_phi_upper(PG: PlaneGraph) -> BoundCertificate:
    """Verified overlap representation of size at most ``2n - 5`` (``n >= 5``)."""
    G = PG.graph
    rep, rule = _planar_phi(PG)
    if not verify(G, rep, RepKind.OVERLAP).ok:
        raise VerificationError(f"planar route {rule} produced an invalid representation")
    if G.n >= 5 and rep.t > 2 * G.n - 5:
        raise VerificationError(f"planar route {rule} used {rep.t} labels, above {2 * G.n - 5}")
    return BoundCertificate("phi", "upper", rep.t, "planar:" + rule, witness=rep)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def format_rotation(PG: PlaneGraph) -> str:
    lines = [str(PG.n)]
    lines += [f"{v}:" + "".join(f" {u}" for u in r) for v, r in enumerate(PG.rotation)]
    return "\n".join(lines) + "\n"


def parse_rotation(text: str) -> PlaneGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty rotation system")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}; expected vertex count") from exc
    rot: dict[int, list[int]] = {}
    for line in lines[1:]:
        head, sep, body = line.partition(":")
        if not sep:
            raise ParseError(f"bad line {line!r}; expected 'v: neighbours'")
        try:
            v = int(head)
            nbrs = [int(tok) for tok in body.split()]
        except ValueError as exc:
            raise ParseError(f"bad line {line!r}") from exc
        if v in rot or not 0 <= v < n:
            raise ParseError(f"vertex {v} repeated or out of range")
        rot[v] = nbrs
    if len(rot) != n:
        raise ParseError(f"expected {n} rotation lines, found {len(rot)}")
    edges = set()
    for v, nbrs in rot.items():
        for u in nbrs:
            if not 0 <= u < n or u == v:
                raise ParseError(f"bad neighbour {u} of {v}")
            edges.add((min(u, v), max(u, v)))
    for u, v in edges:
        if u not in rot[v] or v not in rot[u]:
            raise ParseError(f"edge {u}-{v} listed at one end only")
    try:
        return PlaneGraph(Graph(n, edges), [rot[v] for v in range(n)])
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc
