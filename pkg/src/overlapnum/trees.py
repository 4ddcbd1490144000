"""Skeletons of trees and optimal overlap representations of trees.

The skeleton of a tree is what is left after deleting every leaf and then
giving each leaf of the remainder back one of its original leaves. The
representation is grown one caterpillar at a time along a path decomposition
of the skeleton; its size is the number of skeleton vertices.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import PreconditionError
from .graph import Graph, is_caterpillar, tree_longest_path
from .model import OverlapRep, is_a_minimal


@dataclass(frozen=True)
class CaterpillarStep:
    """One caterpillar of the decomposition.

    For the first caterpillar ``attachment`` is ``None`` and ``spine`` is the
    whole longest path. Otherwise ``spine[0]`` is the already-built attachment
    vertex and ``spine[1:]`` are new. ``legs`` maps each extra leaf to the
    internal spine vertex it hangs from.
    """

    spine: tuple[int, ...]
    attachment: int | None = None
    legs: dict[int, int] = field(default_factory=dict)

    def new_vertices(self) -> list[int]:
        spine = self.spine if self.attachment is None else self.spine[1:]
        return list(spine) + sorted(self.legs)

    def graft(self, H: Graph) -> Graph:
        """``H`` plus this caterpillar; new vertices must be ``H.n, H.n+1, ...``."""
        new = self.new_vertices()
        if sorted(new) != list(range(H.n, H.n + len(new))):
            raise PreconditionError("new caterpillar vertices must continue H's numbering")
        edges = list(H.edges)
        edges += list(zip(self.spine, self.spine[1:]))
        edges += [(x, p) for x, p in self.legs.items()]
        return Graph(H.n + len(new), edges)


@dataclass(frozen=True)
class SkeletonResult:
    vertices: frozenset[int]
    steps: tuple[CaterpillarStep, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)


def _skeleton_vertices(T: Graph) -> set[int]:
    leaves = set(T.leaves())
    inner = [v for v in range(T.n) if v not in leaves]
    if len(inner) == 1:
        # derived tree is one vertex: keep the two lowest leaves, giving P_3
        return {inner[0], *sorted(leaves)[:2]}
    inner_set = set(inner)
    skel = set(inner)
    for v in inner:
        if len(T.adj[v] & inner_set) == 1:
            skel.add(min(T.adj[v] & leaves))
    return skel


def skeleton(T: Graph) -> SkeletonResult:
    """Skeleton of a tree with at least three vertices and its caterpillar steps."""
    if not T.is_tree():
        raise PreconditionError("skeleton needs a tree")
    if T.n < 3:
        raise PreconditionError("skeleton needs at least three vertices")
    skel = _skeleton_vertices(T)
    S, kept = T.induced_subgraph(skel)
    far = tree_longest_path(S)
    root = kept[far[0]]

    # heights in the skeleton rooted at `root`
    order = [root]
    parent = {root: -1}
    for u in order:
        for w in sorted(T.adj[u] & skel):
            if w not in parent:
                parent[w] = u
                order.append(w)
    children: dict[int, list[int]] = {v: [] for v in skel}
    for v in order[1:]:
        children[parent[v]].append(v)
    height = {}
    for v in reversed(order):
        height[v] = 1 + max((height[c] for c in children[v]), default=-1)
    for v in children:
        children[v].sort(key=lambda c: (-height[c], c))

    spines: list[tuple[tuple[int, ...], int | None]] = []
    pending: list[tuple[int | None, int]] = [(None, root)]
    while pending:
        attach, start = pending.pop()
        path = [start] if attach is None else [attach, start]
        v = start
        branches = []
        while children[v]:
            first, *rest = children[v]
            branches += [(v, c) for c in rest]
            path.append(first)
            v = first
        spines.append((tuple(path), attach))
        pending.extend(reversed(branches))

    # every non-skeleton vertex is a leaf of T hanging off an internal spine vertex
    owner: dict[int, int] = {}
    for i, (path, attach) in enumerate(spines):
        for v in path[1:-1]:
            owner[v] = i
    legs: list[dict[int, int]] = [{} for _ in spines]
    for x in range(T.n):
        if x in skel:
            continue
        (p,) = T.adj[x]
        legs[owner[p]][x] = p
    steps = tuple(
        CaterpillarStep(spine=path, attachment=attach, legs=legs[i])
        for i, (path, attach) in enumerate(spines)
    )
    return SkeletonResult(frozenset(skel), steps)


def caterpillar_rep(T: Graph) -> OverlapRep:
    """Representation of a caterpillar using as many labels as its longest path.

    With spine ``v_1..v_l`` the spine vertex ``v_i`` (``i < l``) gets
    ``{i, i+1}`` and every leaf hanging from ``v_i`` (including ``v_l``)
    gets ``{1..i}``; ``v_i`` is then ``i``-minimal.
    """
    if not is_caterpillar(T):
        raise PreconditionError("not a caterpillar")
    spine = tree_longest_path(T)
    l = len(spine)
    if l < 3:
        raise PreconditionError("longest path must have at least three vertices")
    pos = {v: i + 1 for i, v in enumerate(spine)}
    sets: list[set[int]] = [set() for _ in range(T.n)]
    for v, i in pos.items():
        if i < l:
            sets[v] = {i, i + 1}
    for x in range(T.n):
        if x in pos and pos[x] < l:
            continue
        (p,) = T.adj[x]
        sets[x] = set(range(1, pos[p] + 1))
    return OverlapRep(sets)


def extend_caterpillar(repH: OverlapRep, H: Graph, step: CaterpillarStep, a: int) -> OverlapRep:
    """Attach a caterpillar at an ``a``-minimal vertex of ``H`` using ``l`` new labels.

    The returned representation is for ``step.graft(H)``. Spine vertex
    ``w_i`` gets ``{b_{i-1}, b_i}`` with ``b_0 = a``, a leg at ``w_i`` gets
    ``{b_i..b_l}``, and every old set other than ``f(w_0)`` that contains
    ``a`` absorbs all the new labels.
    """
    if step.attachment is None or step.spine[0] != step.attachment:
        raise PreconditionError("step must start at its attachment vertex")
    v = step.attachment
    if not (0 <= v < H.n):
        raise PreconditionError("attachment vertex must belong to H")
    if not H.adj[v]:
        raise PreconditionError("attachment vertex is isolated in H")
    if a not in repH[v] or not is_a_minimal(repH, v, a):
        raise PreconditionError(f"vertex {v} is not {a}-minimal")
    G = step.graft(H)
    l = len(step.spine) - 1
    if l < 1:
        raise PreconditionError("spine must add at least one vertex")
    top = max(repH.union(), default=0)
    b = [a] + [top + i for i in range(1, l + 1)]
    B = set(b[1:])
    sets: list[set[int]] = [set(s) for s in repH.sets] + [set() for _ in range(G.n - H.n)]
    for u in range(H.n):
        if u != v and a in sets[u]:
            sets[u] |= B
    pos = {w: i for i, w in enumerate(step.spine)}
    for i, w in enumerate(step.spine[1:], start=1):
        sets[w] = {b[i - 1], b[i]}
    for x, p in step.legs.items():
        i = pos.get(p)
        if i is None or not 1 <= i <= l - 1:
            raise PreconditionError(f"leg {x} must hang from an internal spine vertex")
        sets[x] = set(b[i : l + 1])
    return OverlapRep(sets)


def _build_sets(T: Graph, steps: tuple[CaterpillarStep, ...], naive: bool) -> list[set[int]]:
    sets: list[set[int] | None] = [None] * T.n
    born = [0] * T.n
    minimal_label: dict[int, int] = {}
    # events[label] -> (step index, excluded vertex, labels added)
    events: dict[int, list[tuple[int, int, tuple[int, ...]]]] = defaultdict(list)
    next_label = 0

    for k, step in enumerate(steps):
        if step.attachment is None:
            spine = step.spine
            l = len(spine)
            a = list(range(next_label, next_label + l))
            next_label += l
            pos = {w: i for i, w in enumerate(spine)}
            for i, w in enumerate(spine[:-1]):
                sets[w] = {a[i], a[i + 1]}
                minimal_label[w] = a[i]
            sets[spine[-1]] = set(a[:-1])
            for x, p in step.legs.items():
                sets[x] = set(a[: pos[p] + 1])
            for w in step.new_vertices():
                born[w] = k
            continue

        v = step.attachment
        attach_label = minimal_label[v]
        l = len(step.spine) - 1
        b = [attach_label] + list(range(next_label, next_label + l))
        next_label += l
        B = tuple(b[1:])
        if naive:
            for u, s in enumerate(sets):
                if s is not None and u != v and attach_label in s:
                    s.update(B)
        else:
            events[attach_label].append((k, v, B))
        pos = {w: i for i, w in enumerate(step.spine)}
        for i, w in enumerate(step.spine[1:], start=1):
            sets[w] = {b[i - 1], b[i]}
            minimal_label[w] = b[i]
        for x, p in step.legs.items():
            sets[x] = set(b[pos[p] : l + 1])
        for w in step.new_vertices():
            born[w] = k

    if naive:
        return sets  # type: ignore[return-value]

    # Resolve the deferred "add B to every set holding a" steps. A vertex
    # born at step t gains B from each event on one of its labels that
    # happened after t; labels gained that way carry the event's time.
    times = {lab: [e[0] for e in evs] for lab, evs in events.items()}
    final = []
    for x in range(T.n):
        base = sets[x]
        out = set(base)
        stack = [(lab, born[x]) for lab in base]
        while stack:
            lab, after = stack.pop()
            evs = events.get(lab)
            if not evs:
                continue
            for k, excluded, B in evs[bisect_right(times[lab], after):]:
                if excluded == x:
                    continue
                out.update(B)
                stack.extend((b, k) for b in B)
        final.append(out)
    return final


def tree_overlap_rep(T: Graph, naive: bool = False) -> OverlapRep:
    """Optimal overlap representation of a tree.

    Its size equals the skeleton size for ``n >= 3``; ``K_1`` gets ``{1}``
    and ``K_2`` gets ``{1,2}, {2,3}``. The default path defers the
    superset updates and resolves them at the end, so the work is linear in
    the size of the output; ``naive=True`` applies each update eagerly and
    must give the identical representation.
    """
    if not T.is_tree():
        raise PreconditionError("not a tree")
    if T.n == 1:
        return OverlapRep([[1]])
    if T.n == 2:
        return OverlapRep([[1, 2], [2, 3]])
    res = skeleton(T)
    return OverlapRep(_build_sets(T, res.steps, naive))
