"""Brute-force canonical forms and isomorphisms for small graphs.

Vertices are first split into classes by (degree, sorted neighbour degrees);
only permutations that respect the class order are tried, which is exact
because the classes are isomorphism invariants.
"""

from __future__ import annotations

from itertools import permutations, product

from .graph import Graph


def _classes(G: Graph) -> list[list[int]]:
    deg = G.degrees()
    key = {v: (deg[v], tuple(sorted(deg[w] for w in G.adj[v]))) for v in range(G.n)}
    groups: dict = {}
    for v in range(G.n):
        groups.setdefault(key[v], []).append(v)
    return [groups[k] for k in sorted(groups)]


def _orderings(G: Graph):
    classes = _classes(G)
    for parts in product(*(permutations(c) for c in classes)):
        yield [v for part in parts for v in part]


def _code(G: Graph, order: list[int]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    code = 0
    for u, v in G.edges:
        a, b = sorted((pos[u], pos[v]))
        code |= 1 << (b * (b - 1) // 2 + a)
    return code


def canonical_form(G: Graph) -> tuple[int, tuple, int]:
    """Hashable key equal for exactly the graphs isomorphic to ``G``."""
    inv = tuple(sorted(G.degrees()))
    return (G.n, inv, max(_code(G, order) for order in _orderings(G)))


def find_isomorphism(G: Graph, H: Graph) -> list[int] | None:
    """A map ``phi`` with ``uv`` an edge of G iff ``phi[u]phi[v]`` is an edge of H."""
    if G.n != H.n or G.m != H.m or sorted(G.degrees()) != sorted(H.degrees()):
        return None
    target = canonical_form(H)
    if canonical_form(G) != target:
        return None
    for perm in permutations(range(H.n)):
        if all(H.has_edge(perm[u], perm[v]) for u, v in G.edges):
            return list(perm)
    return None


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return G.n == H.n and G.m == H.m and canonical_form(G) == canonical_form(H)
