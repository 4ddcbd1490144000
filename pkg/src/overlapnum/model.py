"""Set assignments and the checks every construction is certified against."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import ParseError, PreconditionError
from .graph import Graph


class PairRelation(enum.Enum):
    OVERLAP = "overlap"
    DISJOINT = "disjoint"
    SUBSET = "proper-subset"
    SUPERSET = "proper-superset"
    EQUAL = "equal"


class RepKind(enum.Enum):
    OVERLAP = "overlap"
    PURE = "pure"
    INTERSECTION = "intersection"

    @classmethod
    def parse(cls, name: str) -> RepKind:
        aliases = {"pure-overlap": cls.PURE, "pol": cls.PURE, "phi": cls.OVERLAP}
        if name in aliases:
            return aliases[name]
        return cls(name)


class OverlapRep:
    """Nonempty label sets, one per vertex, over labels ``1..t``.

    Labels are renumbered on construction in order of first appearance
    (vertices in order, labels sorted within a set), so two assignments that
    differ only by a renaming of labels that preserves that order compare
    equal and print identically.
    """

    __slots__ = ("sets", "t")

    def __init__(self, sets: Iterable[Iterable[Hashable]]):
        raw = [list(s) for s in sets]
        rename: dict = {}
        out = []
        for v, s in enumerate(raw):
            if not s:
                raise PreconditionError(f"vertex {v} is assigned the empty set")
            for lab in sorted(set(s)):
                if lab not in rename:
                    rename[lab] = len(rename) + 1
            out.append(frozenset(rename[lab] for lab in s))
        self.sets: tuple[frozenset[int], ...] = tuple(out)
        self.t: int = len(rename)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> OverlapRep:
        return cls([[i + 1 for i in range(m.bit_length()) if m >> i & 1] for m in masks])

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def size(self) -> int:
        return self.t

    def masks(self) -> list[int]:
        return [sum(1 << (lab - 1) for lab in s) for s in self.sets]

    def union(self, vertices: Iterable[int] | None = None) -> frozenset[int]:
        vs = range(self.n) if vertices is None else vertices
        out: set[int] = set()
        for v in vs:
            out |= self.sets[v]
        return frozenset(out)

    def restrict(self, vertices: Iterable[int]) -> OverlapRep:
        """Representation of the induced subgraph on ``vertices`` (kept in order)."""
        return OverlapRep(self.sets[v] for v in sorted(set(vertices)))

    def subtract(self, labels: Iterable[int]) -> OverlapRep:
        """``f - S``; raises if some set would become empty."""
        S = frozenset(labels)
        return OverlapRep(s - S for s in self.sets)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.sets[v]

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OverlapRep) and self.sets == other.sets

    def __hash__(self) -> int:
        return hash(self.sets)

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, sorted(s))) + "}" for s in self.sets)
        return f"OverlapRep(t={self.t}, [{body}])"


# ---------------------------------------------------------------------------
# Pairwise relations and verification
# ---------------------------------------------------------------------------


def pair_relation(A: Iterable[Hashable], B: Iterable[Hashable]) -> PairRelation:
    A, B = frozenset(A), frozenset(B)
    if not A or not B:
        raise PreconditionError("relations are defined on nonempty sets only")
    if not (A & B):
        return PairRelation.DISJOINT
    if A == B:
        return PairRelation.EQUAL
    if A < B:
        return PairRelation.SUBSET
    if A > B:
        return PairRelation.SUPERSET
    return PairRelation.OVERLAP


def mask_relation(a: int, b: int) -> PairRelation:
    if not a & b:
        return PairRelation.DISJOINT
    if a == b:
        return PairRelation.EQUAL
    if not a & ~b:
        return PairRelation.SUBSET
    if not b & ~a:
        return PairRelation.SUPERSET
    return PairRelation.OVERLAP


@dataclass(frozen=True)
class Violation:
    u: int
    v: int
    adjacent: bool
    relation: PairRelation

    def __str__(self) -> str:
        edge = "adjacent" if self.adjacent else "nonadjacent"
        return f"({self.u}, {self.v}) {edge} but sets are {self.relation.value}"


@dataclass
class Verification:
    kind: RepKind
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _pair_ok(kind: RepKind, adjacent: bool, rel: PairRelation) -> bool:
    if kind is RepKind.OVERLAP:
        return adjacent == (rel is PairRelation.OVERLAP)
    if kind is RepKind.INTERSECTION:
        return adjacent == (rel is not PairRelation.DISJOINT)
    # pure: adjacency is overlap, and nonadjacent sets must be disjoint
    return rel is (PairRelation.OVERLAP if adjacent else PairRelation.DISJOINT)


def verify(G: Graph, rep: OverlapRep, kind: RepKind | str = RepKind.OVERLAP) -> Verification:
    """Check every vertex pair of ``G`` against the assigned sets."""
    kind = RepKind.parse(kind) if isinstance(kind, str) else kind
    if rep.n != G.n:
        raise PreconditionError(f"representation has {rep.n} sets for {G.n} vertices")
    masks = rep.masks()
    result = Verification(kind)
    for u in range(G.n):
        for v in range(u + 1, G.n):
            adjacent = v in G.adj[u]
            rel = mask_relation(masks[u], masks[v])
            if not _pair_ok(kind, adjacent, rel):
                result.violations.append(Violation(u, v, adjacent, rel))
    return result


def overlap_graph(rep: OverlapRep) -> Graph:
    """The graph a family of sets represents under the overlap rule."""
    masks = rep.masks()
    edges = [
        (u, v)
        for u in range(rep.n)
        for v in range(u + 1, rep.n)
        if mask_relation(masks[u], masks[v]) is PairRelation.OVERLAP
    ]
    return Graph(rep.n, edges)


# ---------------------------------------------------------------------------
# Deletion, uniformity, minimality
# ---------------------------------------------------------------------------


def deletable(G: Graph, rep: OverlapRep, labels: Iterable[int]) -> bool:
    """Whether subtracting ``labels`` from every set keeps all edges.

    True iff no edge has its intersection, or either one-sided difference,
    inside the deleted set. Nonedges survive any deletion, so this is exactly
    when ``rep - labels`` still represents ``G`` (provided no set empties; see
    :func:`emptied_by`).
    """
    S = frozenset(labels)
    for u, v in G.edges:
        A, B = rep.sets[u], rep.sets[v]
        if (A & B) <= S or (A - B) <= S or (B - A) <= S:
            return False
    return True


def emptied_by(rep: OverlapRep, labels: Iterable[int]) -> list[int]:
    """Vertices whose sets would be emptied by deleting ``labels``."""
    S = frozenset(labels)
    return [v for v, s in enumerate(rep.sets) if s <= S]


def is_uniform(rep: OverlapRep, labels: Iterable[int], vertices: Iterable[int] | None = None) -> bool:
    """Every considered set contains all of ``labels`` or none of them."""
    S = frozenset(labels)
    vs = range(rep.n) if vertices is None else vertices
    return all(S <= rep.sets[v] or not (S & rep.sets[v]) for v in vs)


def minimal_vertices(rep: OverlapRep, vertices: Iterable[int] | None = None) -> list[int]:
    """Vertices whose set has no proper subset among the considered sets."""
    vs = list(range(rep.n) if vertices is None else vertices)
    return [v for v in vs if not any(rep.sets[w] < rep.sets[v] for w in vs)]


def is_a_minimal(rep: OverlapRep, v: int, label: int) -> bool:
    """``f(v)`` is minimal among the assigned sets that contain ``label``."""
    A = rep.sets[v]
    if label not in A:
        raise PreconditionError(f"label {label} is not in the set of vertex {v}")
    return not any(label in s and s < A for s in rep.sets)


@dataclass(frozen=True)
class ContainmentCounterexample:
    vertex: int
    component: tuple[int, ...]


def containment_property_check(G: Graph, rep: OverlapRep) -> ContainmentCounterexample | None:
    """For each ``v`` and each nontrivial component ``H`` of ``G - N[v]``,
    ``f(v)`` must properly contain every set of ``H`` or miss all of them."""
    for v in range(G.n):
        A = rep.sets[v]
        rest = [w for w in range(G.n) if w not in G.adj[v] and w != v]
        for comp in G.components(rest):
            if len(comp) < 2:
                continue
            inside = all(rep.sets[w] < A for w in comp)
            apart = all(not (rep.sets[w] & A) for w in comp)
            if not (inside or apart):
                return ContainmentCounterexample(v, tuple(comp))
    return None


def inclusion_propagation_check(G: Graph, rep: OverlapRep) -> ContainmentCounterexample | None:
    """For each ``v`` and each nontrivial component ``H`` of ``G - N[v]``: if
    ``f(v)`` contains the set of one vertex of ``H``, it properly contains all
    of them.

    This is the part of the containment dichotomy that survives in general;
    ``f(v)`` may also sit inside some sets of ``H`` while missing the others
    (a path on four vertices already shows it).
    """
    for v in range(G.n):
        A = rep.sets[v]
        rest = [w for w in range(G.n) if w not in G.adj[v] and w != v]
        for comp in G.components(rest):
            if len(comp) < 2:
                continue
            if any(rep.sets[w] <= A for w in comp) and not all(rep.sets[w] < A for w in comp):
                return ContainmentCounterexample(v, tuple(comp))
    return None


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def format_rep(rep: OverlapRep) -> str:
    lines = [str(rep.t)]
    lines += [f"{v}: " + " ".join(map(str, sorted(s))) for v, s in enumerate(rep.sets)]
    return "\n".join(lines) + "\n"


def parse_rep(text: str) -> OverlapRep:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty representation")
    try:
        t = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}; expected label count") from exc
    sets: dict[int, list[int]] = {}
    for line in lines[1:]:
        head, sep, body = line.partition(":")
        if not sep:
            raise ParseError(f"bad line {line!r}; expected 'v: labels'")
        try:
            v = int(head)
            labels = [int(tok) for tok in body.split()]
        except ValueError as exc:
            raise ParseError(f"bad line {line!r}") from exc
        if v in sets:
            raise ParseError(f"vertex {v} listed twice")
        if not labels:
            raise ParseError(f"vertex {v} has an empty set")
        sets[v] = labels
    if sorted(sets) != list(range(len(sets))):
        raise ParseError("vertices must be exactly 0..n-1")
    labels_seen = {lab for s in sets.values() for lab in s}
    if len(labels_seen) != t:
        raise ParseError(f"header says {t} labels, found {len(labels_seen)}")
    return OverlapRep(sets[v] for v in range(len(sets)))
