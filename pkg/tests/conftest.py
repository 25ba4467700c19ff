"""Shared test oracles, all deliberately independent of the package internals.

`lang` enumerates the bounded-length language straight off the AST;
`naive_cycle_rank` recomputes the deletion recursion without memoization on
a Kosaraju SCC split; `follow_quotient` rebuilds the follow automaton as
the position-automaton quotient that merges states with equal follow sets
and equal finality.
"""

from itertools import product

import pytest

from refa.automata import Automaton
from refa.constructions import construct_position, position_sets
from refa.expressions import (
    Concat,
    Empty,
    Epsilon,
    Option,
    RegEx,
    Sym,
    Union,
    mark,
    nullable,
    random_expr,
    symbols_of,
)


def lang(r: RegEx, maxlen: int) -> frozenset:
    """All words of length <= maxlen denoted by r, as tuples of symbols."""
    if isinstance(r, Empty):
        return frozenset()
    if isinstance(r, Epsilon):
        return frozenset([()])
    if isinstance(r, Sym):
        return frozenset([(r.name,)]) if maxlen >= 1 else frozenset()
    if isinstance(r, Union):
        return lang(r.left, maxlen) | lang(r.right, maxlen)
    if isinstance(r, Option):
        return lang(r.inner, maxlen) | frozenset([()])
    if isinstance(r, Concat):
        out = set()
        for u in lang(r.left, maxlen):
            for v in lang(r.right, maxlen - len(u)):
                out.add(u + v)
        return frozenset(out)
    base = lang(r.inner, maxlen)
    out = {()}
    while True:
        new = out | {u + v for u in out for v in base if len(u + v) <= maxlen}
        if new == out:
            return frozenset(out)
        out = new


def words_upto(alphabet, maxlen):
    for n in range(maxlen + 1):
        yield from product(sorted(alphabet), repeat=n)


def corpus(count, seed, max_awidth=10, alphabets=(("a", "b"), ("a", "b", "c", "d"))):
    """Deterministic random expression corpus."""
    out = []
    for i in range(count):
        alpha = list(alphabets[i % len(alphabets)])
        aw = 1 + (i * 7) % max_awidth
        out.append(random_expr(aw, alpha, seed=seed + i))
    return out


# -- independent cycle rank oracle ------------------------------------------


def _kosaraju(vertices, arcs):
    adj = {v: [] for v in vertices}
    radj = {v: [] for v in vertices}
    for u, v in arcs:
        if u in adj and v in adj:
            adj[u].append(v)
            radj[v].append(u)
    order = []
    seen = set()
    for v in vertices:
        if v in seen:
            continue
        stack = [(v, iter(adj[v]))]
        seen.add(v)
        while stack:
            node, it = stack[-1]
            advanced = False
            for w in it:
                if w not in seen:
                    seen.add(w)
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                order.append(node)
                stack.pop()
    comps = []
    assigned = set()
    for v in reversed(order):
        if v in assigned:
            continue
        comp = {v}
        assigned.add(v)
        stack = [v]
        while stack:
            node = stack.pop()
            for w in radj[node]:
                if w not in assigned:
                    assigned.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def naive_cycle_rank(vertices, arcs) -> int:
    """Unmemoized deletion recursion; only usable on small digraphs."""
    vertices = frozenset(vertices)
    arcs = {(u, v) for u, v in arcs if u in vertices and v in vertices}
    best = 0
    for comp in _kosaraju(vertices, arcs):
        comp_arcs = {(u, v) for u, v in arcs if u in comp and v in comp}
        if len(comp) == 1 and not comp_arcs:
            continue
        sub = min(
            naive_cycle_rank(comp - {v}, comp_arcs) for v in comp
        )
        best = max(best, 1 + sub)
    return best


# -- independent follow-automaton oracle -------------------------------------


def follow_quotient(r: RegEx) -> Automaton:
    """Position automaton quotient merging equal-follow, equal-finality states."""
    marked = mark(r)
    sets = position_sets(marked)
    follow0 = {0: frozenset(sets.first)}
    for i in sets.positions:
        follow0[i] = frozenset(j for (x, j) in sets.follow if x == i)
    final0 = set(sets.last) | ({0} if nullable(r) else set())

    classes: dict[tuple, list[int]] = {}
    for i in sorted(follow0):
        key = (follow0[i], i in final0)
        classes.setdefault(key, []).append(i)
    rep = {}
    for members in classes.values():
        for i in members:
            rep[i] = members[0]

    pos_aut = construct_position(r)
    transitions = {(rep[p], a, rep[q]) for p, a, q in pos_aut.transitions}
    states = {rep[i] for i in follow0}
    finals = {rep[i] for i in final0}
    return Automaton.make(states, symbols_of(r), rep[0], finals, transitions)


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(150, seed=2400, max_awidth=8)
