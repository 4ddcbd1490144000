"""Exhaustive computation of the overlap number and pure overlap number.

Iterative deepening on the label budget ``t``; for each budget a depth-first
search assigns label masks to vertices in a fixed order with forward
checking. Labels may only be introduced in increasing order (a set may use
new labels only as the next consecutive block), which removes the ``t!``
relabelings of every solution without losing any.

:func:`naive_exact` is a deliberately separate, unoptimized enumerator used
to cross-check the optimized search.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np

from .errors import BudgetExceeded, PreconditionError
from .graph import Graph, degeneracy
from .model import OverlapRep, RepKind, _pair_ok, pair_relation, verify

MAX_LABELS = 16


@dataclass(frozen=True)
class SearchConfig:
    t_min: int | None = None
    t_max: int = MAX_LABELS
    order: str = "degeneracy"
    node_limit: int | None = None
    parallel: bool = False
    symmetry_breaking: bool = True
    workers: int | None = None

    def __post_init__(self):
        if self.t_max > MAX_LABELS:
            raise PreconditionError(f"label budget above {MAX_LABELS} is not supported")
        if self.order not in ("degeneracy", "index"):
            raise PreconditionError(f"unknown vertex order {self.order!r}")


@dataclass
class ExactResult:
    quantity: str
    value: int | None
    witness: OverlapRep | None
    nodes: int
    status: str
    exhaustive: bool

    @property
    def is_exact(self) -> bool:
        return self.status == "exact"


def trivial_lower_bound(G: Graph) -> int:
    if G.n == 0:
        return 0
    return 3 if G.m else 1


def vertex_order(G: Graph, policy: str = "degeneracy") -> list[int]:
    if policy == "index":
        return list(range(G.n))
    _, order = degeneracy(G)
    return order[::-1]


def _candidates(t: int) -> np.ndarray:
    masks = range(1, 1 << t)
    key = lambda m: (bin(m).count("1"), [i for i in range(t) if m >> i & 1])
    return np.array(sorted(masks, key=key), dtype=np.int64)


_CANDIDATE_CACHE: dict[int, np.ndarray] = {}


def candidates(t: int) -> np.ndarray:
    """All nonempty masks over ``t`` labels, by size then lexicographically."""
    if t not in _CANDIDATE_CACHE:
        _CANDIDATE_CACHE[t] = _candidates(t)
    return _CANDIDATE_CACHE[t]


def _compatible(cands: np.ndarray, a: int, adjacent: bool, pure: bool) -> np.ndarray:
    inter = (cands & a) != 0
    if adjacent:
        return inter & ((cands & ~a) != 0) & ((a & ~cands) != 0)
    if pure:
        return ~inter
    return ~inter | ((cands & ~a) == 0) | ((a & ~cands) == 0)


class _Search:
    def __init__(self, G: Graph, order: list[int], t: int, pure: bool, symmetry: bool, node_limit: int | None):
        self.G = G
        self.order = order
        self.t = t
        self.pure = pure
        self.symmetry = symmetry
        self.node_limit = node_limit
        self.nodes = 0
        self.assigned = [0] * len(order)

    def _allowed_new(self, cands: np.ndarray, used: int) -> np.ndarray:
        if not self.symmetry:
            return cands
        high = cands >> used
        return cands[(high & (high + 1)) == 0]

    def run(self, first_slice: slice | None = None) -> tuple[int, list[int]] | None:
        """First solution as (index of the first vertex's candidate, masks)."""
        k = len(self.order)
        domains = [candidates(self.t)] * k
        if k == 0:
            return 0, []
        return self._dfs(0, domains, 0, first_slice)

    def _dfs(self, depth, domains, used, first_slice=None):
        k = len(self.order)
        G = self.G
        x = self.order[depth]
        options = self._allowed_new(domains[depth], used)
        if first_slice is not None:
            indexed = list(enumerate(options.tolist()))[first_slice]
        else:
            indexed = enumerate(options.tolist())
        for idx, mask in indexed:
            self.nodes += 1
            if self.node_limit is not None and self.nodes > self.node_limit:
                raise BudgetExceeded(f"node limit {self.node_limit} exceeded")
            self.assigned[depth] = mask
            if depth + 1 == k:
                return idx, list(self.assigned)
            new_domains = domains[: depth + 1]
            dead = False
            for j in range(depth + 1, k):
                y = self.order[j]
                dom = domains[j]
                dom = dom[_compatible(dom, mask, y in G.adj[x], self.pure)]
                if dom.size == 0:
                    dead = True
                    break
                new_domains.append(dom)
            if dead:
                continue
            new_used = max(used, mask.bit_length())
            if self._dfs(depth + 1, new_domains, new_used) is not None:
                return idx, list(self.assigned)
        return None


def _solve_slice(args):
    G, order, t, pure, symmetry, node_limit, lo, hi = args
    search = _Search(G, order, t, pure, symmetry, node_limit)
    found = search.run(slice(lo, hi))
    return found, search.nodes


def _search_budget(G, order, t, pure, cfg: SearchConfig, nodes_so_far: int):
    limit = None if cfg.node_limit is None else cfg.node_limit - nodes_so_far
    if not cfg.parallel or G.n == 0:
        search = _Search(G, order, t, pure, cfg.symmetry_breaking, limit)
        found = search.run()
        return (None if found is None else found[1]), search.nodes
    # split on the first vertex's candidate list; keep the lowest-index success
    first = _Search(G, order, t, pure, cfg.symmetry_breaking, None)._allowed_new(candidates(t), 0)
    workers = cfg.workers or os.cpu_count() or 1
    chunk = max(1, -(-first.size // (workers * 4)))
    jobs = [
        (G, order, t, pure, cfg.symmetry_breaking, limit, lo, min(lo + chunk, first.size))
        for lo in range(0, first.size, chunk)
    ]
    nodes = 0
    best = None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for (found, used), job in zip(pool.map(_solve_slice, jobs), jobs):
            nodes += used
            if found is not None and best is None:
                best = found[1]
    return best, nodes


def _exact(G: Graph, cfg: SearchConfig, pure: bool) -> ExactResult:
    quantity = "pol" if pure else "phi"
    floor = trivial_lower_bound(G)
    t_min = floor if cfg.t_min is None else max(cfg.t_min, 0)
    order = vertex_order(G, cfg.order)
    nodes = 0
    if G.n == 0:
        return ExactResult(quantity, 0, OverlapRep([]), 0, "exact", True)
    for t in range(max(t_min, 1), cfg.t_max + 1):
        try:
            masks, used = _search_budget(G, order, t, pure, cfg, nodes)
        except BudgetExceeded:
            return ExactResult(quantity, None, None, cfg.node_limit or 0, "budget-exceeded", False)
        nodes += used
        if masks is None:
            continue
        by_vertex = [0] * G.n
        for pos, v in enumerate(order):
            by_vertex[v] = masks[pos]
        witness = OverlapRep.from_masks(by_vertex)
        kind = RepKind.PURE if pure else RepKind.OVERLAP
        if not verify(G, witness, kind).ok:
            raise AssertionError("search produced an invalid witness")
        exhaustive = t_min <= floor
        return ExactResult(quantity, witness.t, witness, nodes, "exact" if exhaustive else "unproven", exhaustive)
    return ExactResult(quantity, None, None, nodes, "budget-exceeded", False)


def exact_phi(G: Graph, cfg: SearchConfig | None = None) -> ExactResult:
    """Overlap number by exhaustive search."""
    return _exact(G, cfg or SearchConfig(), pure=False)


def exact_pol(G: Graph, cfg: SearchConfig | None = None) -> ExactResult:
    """Pure overlap number by exhaustive search."""
    return _exact(G, cfg or SearchConfig(), pure=True)


def exact_phi_reduced(G: Graph, cfg: SearchConfig | None = None) -> ExactResult:
    """Overlap number after removing isolated and twin vertices, which leave it unchanged."""
    from .constructions import reduce, unreduce

    H, trace = reduce(G)
    res = exact_phi(H, cfg)
    if res.witness is None:
        return res
    return replace(res, witness=unreduce(res.witness, trace))


# ---------------------------------------------------------------------------
# Independent oracle
# ---------------------------------------------------------------------------


def naive_exact(G: Graph, kind: RepKind | str = RepKind.OVERLAP, t_max: int = 8) -> int:
    """Smallest label count admitting a representation, by plain backtracking.

    Vertices in index order, every nonempty subset of ``{1..t}`` tried for
    every vertex, no symmetry reduction. Only the pairwise rule is shared
    with the verifier.
    """
    kind = RepKind.parse(kind) if isinstance(kind, str) else kind
    if G.n == 0:
        return 0
    for t in range(1, t_max + 1):
        subsets = [frozenset(c) for r in range(1, t + 1) for c in combinations(range(1, t + 1), r)]
        chosen: list[frozenset[int]] = []

        def extend(v: int) -> bool:
            if v == G.n:
                return True
            for s in subsets:
                if all(_pair_ok(kind, u in G.adj[v], pair_relation(chosen[u], s)) for u in range(v)):
                    chosen.append(s)
                    if extend(v + 1):
                        return True
                    chosen.pop()
            return False

        if extend(0):
            rep = OverlapRep(chosen)
            assert verify(G, rep, kind).ok
            return rep.t
    raise BudgetExceeded(f"no representation with at most {t_max} labels")


__all__ = [
    "SearchConfig",
    "ExactResult",
    "exact_phi",
    "exact_pol",
    "exact_phi_reduced",
    "naive_exact",
    "trivial_lower_bound",
    "vertex_order",
]
