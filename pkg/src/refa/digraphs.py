"""Directed graphs extracted from automata, and their structural measures.

The central measure is the cycle rank (loop complexity): zero for acyclic
digraphs, and one plus the cheapest vertex deletion inside a strongly
connected component otherwise, taking the maximum over components.  For
bideterministic languages the cycle rank of the minimal partial DFA equals
the star height of the language, which is how this module computes star
heights without touching the general (and very hard) star height problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

from .automata import Automaton, is_bideterministic, minimize

__all__ = [
    "Digraph",
    "CycleCount",
    "CycleRankBudgetError",
    "NotBideterministicError",
    "underlying_digraph",
    "sccs",
    "cycle_rank",
    "cycle_rank_upper",
    "undirected_cycle_rank",
    "symmetrize",
    "independent_set",
    "cycles_through",
    "star_height_bideterministic",
]

Vertex = Hashable


class CycleRankBudgetError(ValueError):
    """Exact cycle rank was refused because the digraph exceeds the budget."""


class NotBideterministicError(ValueError):
    pass


@dataclass(frozen=True)
class Digraph:
    vertices: frozenset
    arcs: frozenset  # ordered pairs; parallel arcs are collapsed by the set

    def __post_init__(self):
        for u, v in self.arcs:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"arc ({u!r},{v!r}) leaves the vertex set")

    @staticmethod
    def make(vertices: Iterable, arcs: Iterable[tuple]) -> "Digraph":
        return Digraph(frozenset(vertices), frozenset((u, v) for u, v in arcs))


def underlying_digraph(aut: Automaton) -> Digraph:
    """One arc per ordered state pair with at least one transition."""
    return Digraph(aut.states, frozenset((p, q) for p, _, q in aut.transitions))


def _adjacency(dg: Digraph) -> dict:
    adj = {v: set() for v in dg.vertices}
    for u, v in dg.arcs:
        adj[u].add(v)
    return adj


def _vkey(v):
    """Total order over mixed vertex ids; ints first, then everything else."""
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def _scc_partition(adj: dict, verts: frozenset) -> list[frozenset]:
    """Tarjan, iteratively; components come out in reverse topological order."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[frozenset] = []
    counter = [0]

    for root in sorted(verts, key=_vkey):
        if root in index:
            continue
        work = [(root, iter(sorted((w for w in adj[root] if w in verts), key=_vkey)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted((x for x in adj[w] if x in verts), key=_vkey))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(frozenset(comp))
    return out


def sccs(dg: Digraph) -> list[frozenset]:
    """Strongly connected components, in reverse topological order."""
    return _scc_partition(_adjacency(dg), dg.vertices)


def _nontrivial(comp: frozenset, adj: dict) -> bool:
    if len(comp) > 1:
        return True
    v = next(iter(comp))
    return v in adj[v]


def cycle_rank(dg: Digraph, budget: int = 18) -> int:
    """Exact cycle rank via the memoized deletion recursion.

    Refuses digraphs above `budget` vertices: the recursion is exponential
    in the worst case, so callers beyond that should fall back to
    :func:`cycle_rank_upper`.
    """
    if len(dg.vertices) > budget:
        raise CycleRankBudgetError(
            f"{len(dg.vertices)} vertices exceed the exact-rank budget of {budget}"
        )
    adj = _adjacency(dg)
    memo: dict[frozenset, int] = {}

    def rank(verts: frozenset) -> int:
        cached = memo.get(verts)
        if cached is not None:
            return cached
        best = 0
        for comp in _scc_partition(adj, verts):
            if not _nontrivial(comp, adj):
                continue
            sub_best = None
            for v in sorted(comp, key=_vkey):
                r = rank(comp - {v})
                if sub_best is None or r < sub_best:
                    sub_best = r
                if sub_best == 0:
                    break
            best = max(best, 1 + sub_best)  # type: ignore[operator]
        memo[verts] = best
        return best

    return rank(dg.vertices)


def cycle_rank_upper(dg: Digraph) -> int:
    """Greedy upper bound: always delete the highest-degree vertex of an SCC."""
    adj = _adjacency(dg)
    radj: dict = {v: set() for v in dg.vertices}
    for u, v in dg.arcs:
        radj[v].add(u)

    def bound(verts: frozenset) -> int:
        best = 0
        for comp in _scc_partition(adj, verts):
            if not _nontrivial(comp, adj):
                continue
            victim = min(
                sorted(comp, key=_vkey),
                key=lambda v: (-(len(adj[v] & comp) + len(radj[v] & comp)), repr(v)),
            )
            best = max(best, 1 + bound(comp - {victim}))
        return best

    return bound(dg.vertices)


def symmetrize(dg: Digraph) -> Digraph:
    return Digraph(dg.vertices, dg.arcs | frozenset((v, u) for u, v in dg.arcs))


def undirected_cycle_rank(dg: Digraph, budget: int = 18) -> int:
    """Cycle rank of the digraph with every arc made bidirectional."""
    return cycle_rank(symmetrize(dg), budget)


def independent_set(dg: Digraph, exact: bool = False) -> frozenset:
    """An independent set of the symmetrized graph.

    Greedy minimum-degree by default; exhaustive search on request for up
    to 20 vertices.  Vertices with self-loops are never eligible.
    """
    neigh = {v: set() for v in dg.vertices}
    looped = set()
    for u, v in dg.arcs:
        if u == v:
            looped.add(u)
        else:
            neigh[u].add(v)
            neigh[v].add(u)
    candidates = set(dg.vertices) - looped

    if exact:
        if len(dg.vertices) > 20:
            raise ValueError("exact independent set limited to 20 vertices")
        best: set = set()

        def search(chosen: set, rest: list):
            nonlocal best
            if len(chosen) + len(rest) <= len(best):
                return
            if not rest:
                if len(chosen) > len(best):
                    best = set(chosen)
                return
            v = rest[0]
            search(chosen | {v}, [w for w in rest[1:] if w not in neigh[v]])
            search(chosen, rest[1:])

        search(set(), sorted(candidates, key=_vkey))
        return frozenset(best)

    chosen = set()
    while candidates:
        v = min(candidates, key=lambda x: (len(neigh[x] & candidates), _vkey(x)))
        chosen.add(v)
        candidates -= neigh[v] | {v}
    return frozenset(chosen)


@dataclass(frozen=True)
class CycleCount:
    count: int
    saturated: bool


def cycles_through(dg: Digraph, v: Vertex, cap: int = 10**6) -> CycleCount:
    """Number of simple cycles containing v; enumeration stops at `cap`."""
    if v not in dg.vertices:
        raise ValueError(f"{v!r} is not a vertex")
    adj = _adjacency(dg)
    count = 0
    saturated = False

    def walk(u, visited: set):
        nonlocal count, saturated
        if saturated:
            return
        for w in sorted(adj[u], key=_vkey):
            if w == v:
                count += 1
                if count >= cap:
                    saturated = True
                    return
            elif w not in visited:
                visited.add(w)
                walk(w, visited)
                visited.discard(w)

    walk(v, {v})
    return CycleCount(count, saturated)


def star_height_bideterministic(aut: Automaton, budget: int = 18) -> int:
    """Star height of the accepted language, for bideterministic input only.

    Equals the cycle rank of the digraph underlying the minimal partial DFA;
    refuses automata whose minimal partial DFA is not bideterministic.
    """
    minimal = minimize(aut, "partial")
    if not is_bideterministic(minimal):
        raise NotBideterministicError("language is not given by a bideterministic automaton")
    return cycle_rank(underlying_digraph(minimal), budget)
