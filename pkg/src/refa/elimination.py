"""Automaton-to-expression conversion and the shared expression simplifier.

Three classical routes are provided; all maintain regex-labelled data and
lean on the same simplifier:

* state elimination over an extended automaton with a fresh source and
  sink, with pluggable elimination orderings;
* equation solving via the unique-solution lemma for ``X = K·X + L``
  (λ-free K), substituting from the highest-numbered state downward;
* the matrix iteration that updates ``b_jk = a_jk + a_ji (a_ii)* a_ik``
  round by round, with the usual row/column shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automata import Automaton, State, _state_key
from .digraphs import cycles_through, independent_set, underlying_digraph
from .expressions import (
    EMPTY,
    EPSILON,
    Concat,
    Empty,
    Epsilon,
    Option,
    RegEx,
    Star,
    Sym,
    Union,
    measures,
    nullable,
    render,
)

__all__ = [
    "SOURCE",
    "SINK",
    "STRATEGIES",
    "ExtendedAutomaton",
    "simplify",
    "augment",
    "eliminate_state",
    "state_elimination",
    "make_ordering",
    "bridge_states",
    "arden_solve",
    "mcnaughton_yamada",
]


# ---------------------------------------------------------------------------
# Simplifier


def _flatten_union(r: RegEx, out: list):
    if isinstance(r, Union):
        _flatten_union(r.left, out)
        _flatten_union(r.right, out)
    else:
        out.append(r)


def _canon_key(r: RegEx) -> str:
    """Render with union branches sorted; detects commuted duplicates."""
    if isinstance(r, Union):
        branches: list[RegEx] = []
        _flatten_union(r, branches)
        keys = sorted(_canon_key(b) for b in branches)
        return "(+ " + " ".join(keys) + ")"
    if isinstance(r, Concat):
        return "(. " + _canon_key(r.left) + " " + _canon_key(r.right) + ")"
    if isinstance(r, Star):
        return "(* " + _canon_key(r.inner) + ")"
    if isinstance(r, Option):
        return "(? " + _canon_key(r.inner) + ")"
    return render(r)


def _absorbed_star_body(b: RegEx) -> RegEx | None:
    """The x with b = x·x* or b = x*·x, if any."""
    if not isinstance(b, Concat):
        return None
    if isinstance(b.right, Star) and b.right.inner == b.left:
        return b.left
    if isinstance(b.left, Star) and b.left.inner == b.right:
        return b.right
    return None


def simplify(r: RegEx) -> RegEx:
    """Exhaustive obvious simplifications; language-preserving, never larger.

    Rules: ∅ and λ units/annihilators, ∅*→λ, λ*→λ, (r*)*→r*, duplicate
    union branches removed modulo branch order, and λ+x·x* → x* (either
    orientation of the concatenation).
    """
    if isinstance(r, (Empty, Epsilon, Sym)):
        return r
    if isinstance(r, Star):
        inner = simplify(r.inner)
        if isinstance(inner, (Empty, Epsilon)):
            return EPSILON
        if isinstance(inner, Star):
            return inner
        return Star(inner)
    if isinstance(r, Option):
        return Option(simplify(r.inner))
    if isinstance(r, Concat):
        left = simplify(r.left)
        right = simplify(r.right)
        if isinstance(left, Empty) or isinstance(right, Empty):
            return EMPTY
        if isinstance(left, Epsilon):
            return right
        if isinstance(right, Epsilon):
            return left
        return Concat(left, right)

    raw: list[RegEx] = []
    _flatten_union(r, raw)
    flat: list[RegEx] = []
    for b in raw:
        b = simplify(b)
        if isinstance(b, Union):
            _flatten_union(b, flat)
        else:
            flat.append(b)
    pruned: list[RegEx] = []
    seen: set[str] = set()
    for b in flat:
        if isinstance(b, Empty):
            continue
        key = _canon_key(b)
        if key not in seen:
            seen.add(key)
            pruned.append(b)

    # λ + x·x* (or x*·x) collapses to x*; at most one λ survives the dedup
    eps_at = next((i for i, b in enumerate(pruned) if isinstance(b, Epsilon)), None)
    if eps_at is not None:
        for i, b in enumerate(pruned):
            body = _absorbed_star_body(b)
            if body is None:
                continue
            replaced = [Star(body) if j == i else x for j, x in enumerate(pruned) if j != eps_at]
            pruned = []
            seen = set()
            for x in replaced:
                key = _canon_key(x)
                if key not in seen:
                    seen.add(key)
                    pruned.append(x)
            break

    if not pruned:
        return EMPTY
    if len(pruned) == 1:
        return pruned[0]
    out = pruned[0]
    for b in pruned[1:]:
        out = Union(out, b)
    return out


# ---------------------------------------------------------------------------
# Extended automata and state elimination


class _Endpoint:
    __slots__ = ("tag",)

    def __init__(self, tag: str):
        self.tag = tag

    def __repr__(self):
        return self.tag


SOURCE = _Endpoint("s")
SINK = _Endpoint("t")


def _ekey(v):
    if isinstance(v, _Endpoint):
        return (2, 0, v.tag)
    return _state_key(v)


@dataclass(frozen=True)
class ExtendedAutomaton:
    """Automaton whose arcs carry expressions; the carrier of elimination.

    No arc enters the source and none leaves the sink; a missing entry in
    `labels` is the ∅ label.
    """

    states: frozenset
    labels: tuple  # sorted ((p, q), RegEx) pairs; kept hashable

    def label(self, p, q) -> RegEx:
        for (a, b), expr in self.labels:
            if a == p and b == q:
                return expr
        return EMPTY

    def label_map(self) -> dict:
        return {pq: expr for pq, expr in self.labels}


def _make_extended(states, label_map: dict) -> ExtendedAutomaton:
    pairs = tuple(
        sorted(
            ((pq, expr) for pq, expr in label_map.items() if not isinstance(expr, Empty)),
            key=lambda item: (_ekey(item[0][0]), _ekey(item[0][1])),
        )
    )
    return ExtendedAutomaton(frozenset(states), pairs)


def augment(aut: Automaton) -> ExtendedAutomaton:
    """Embed an automaton between a fresh source and sink.

    Parallel transitions fold into unions (λ first, then symbols sorted);
    the source reaches the old initial state and every old final state
    reaches the sink by λ-labels.
    """
    labels: dict = {}

    def add(p, q, expr: RegEx):
        old = labels.get((p, q))
        labels[(p, q)] = expr if old is None else Union(old, expr)

    for p, a, q in sorted(
        aut.transitions, key=lambda t: (_state_key(t[0]), t[1] is not None, t[1] or "", _state_key(t[2]))
    ):
        add(p, q, EPSILON if a is None else Sym(a))
    add(SOURCE, aut.initial, EPSILON)
    for f in sorted(aut.finals, key=_state_key):
        add(f, SINK, EPSILON)
    return _make_extended(set(aut.states) | {SOURCE, SINK}, labels)


def eliminate_state(
    ext: ExtendedAutomaton, q, simplify_labels: bool = True
) -> ExtendedAutomaton:
    """Remove q, routing every path through it into the remaining labels."""
    if isinstance(q, _Endpoint):
        raise ValueError("source and sink cannot be eliminated")
    if q not in ext.states:
        raise ValueError(f"{q!r} is not a state")
    labels = ext.label_map()
    loop = labels.get((q, q))
    ins = sorted(
        ((p, expr) for (p, tgt), expr in labels.items() if tgt == q and p != q),
        key=lambda item: _ekey(item[0]),
    )
    outs = sorted(
        ((k, expr) for (src, k), expr in labels.items() if src == q and k != q),
        key=lambda item: _ekey(item[0]),
    )
    post = simplify if simplify_labels else (lambda e: e)
    new_labels = {pq: expr for pq, expr in labels.items() if q not in pq}
    for p, lin in ins:
        for k, lout in outs:
            path: RegEx = lin
            if loop is not None:
                path = Concat(path, Star(loop))
            path = Concat(path, lout)
            old = new_labels.get((p, k))
            new_labels[(p, k)] = post(path if old is None else Union(old, path))
    return _make_extended(ext.states - {q}, new_labels)


STRATEGIES = ("id", "greedy", "dm", "cycles", "indep", "bridge")


def _in_out(labels: dict, q) -> tuple[list, list]:
    ins = [p for (p, tgt) in labels if tgt == q and p != q]
    outs = [k for (src, k) in labels if src == q and k != q]
    return ins, outs


def _greedy_score(labels: dict, q) -> int:
    ins, outs = _in_out(labels, q)
    return len(ins) * len(outs)


def _dm_score(labels: dict, q) -> int:
    # in/out label widths weighted by the fan-out/fan-in they get copied to
    ins, outs = _in_out(labels, q)
    n_in, n_out = len(ins), len(outs)
    weight = 0
    for p in ins:
        weight += measures(labels[(p, q)]).awidth * (n_out - 1)
    for k in outs:
        weight += measures(labels[(q, k)]).awidth * (n_in - 1)
    loop = labels.get((q, q))
    if loop is not None:
        weight += measures(loop).awidth * (n_in * n_out - 1)
    return weight


def bridge_states(aut: Automaton) -> frozenset[State]:
    """States that every accepting path must cross and that lie on no cycle."""
    ext = augment(aut)
    arcs = {pq for pq, _ in ext.labels}
    verts = ext.states

    def reaches_sink(removed) -> bool:
        seen = {SOURCE}
        stack = [SOURCE]
        while stack:
            p = stack.pop()
            if p is SINK:
                return True
            for u, v in arcs:
                if u == p and v != removed and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return False

    on_cycle = set()
    for q in aut.states:
        seen: set = set()
        stack = [v for u, v in arcs if u == q]
        while stack:
            p = stack.pop()
            if p == q:
                on_cycle.add(q)
                break
            if p in seen:
                continue
            seen.add(p)
            stack.extend(v for u, v in arcs if u == p)

    return frozenset(
        q for q in aut.states if q not in on_cycle and not reaches_sink(q)
    )


def _pick_dynamic(
    aut: Automaton, score, recompute: bool, first=frozenset(), defer=frozenset()
) -> list:
    """Greedy order over the states outside `first` and `defer`.

    `first` states are eliminated up front in the simulation (they precede
    the greedy picks in the caller's order); `defer` states stay in place
    and are appended by the caller afterwards.
    """
    ext = augment(aut)
    remaining = sorted(
        (s for s in aut.states if s not in first and s not in defer), key=_state_key
    )
    if not recompute:
        labels = ext.label_map()
        return sorted(remaining, key=lambda q: (score(labels, q), _state_key(q)))
    for q in sorted(first, key=_state_key):
        ext = eliminate_state(ext, q)
    order = []
    while remaining:
        labels = ext.label_map()
        q = min(remaining, key=lambda s: (score(labels, s), _state_key(s)))
        order.append(q)
        remaining.remove(q)
        ext = eliminate_state(ext, q)
    return order


def make_ordering(aut: Automaton, strategy: str, recompute: bool = True) -> list[State]:
    """An elimination order over all states, per the named heuristic.

    greedy: fewest in·out arcs next, recomputed as elimination proceeds.
    dm: cheapest label-width blow-up next, recomputed likewise.
    cycles: fewest simple cycles through the state, computed once.
    indep: an independent set first, the rest greedily.
    bridge: bridge states last, the rest greedily.
    id: ascending state id.
    """
    if strategy == "id":
        return sorted(aut.states, key=_state_key)
    if strategy == "greedy":
        return _pick_dynamic(aut, _greedy_score, recompute)
    if strategy == "dm":
        return _pick_dynamic(aut, _dm_score, recompute)
    if strategy == "cycles":
        dg = underlying_digraph(aut)
        counts = {q: cycles_through(dg, q, cap=10**5).count for q in aut.states}
        return sorted(aut.states, key=lambda q: (counts[q], _state_key(q)))
    if strategy == "indep":
        chosen = independent_set(underlying_digraph(aut))
        head = sorted(chosen, key=_state_key)
        tail = _pick_dynamic(aut, _greedy_score, True, first=chosen)
        return head + tail
    if strategy == "bridge":
        bridges = bridge_states(aut)
        head = _pick_dynamic(aut, _greedy_score, True, defer=bridges)
        return head + sorted(bridges, key=_state_key)
    raise ValueError(f"unknown strategy {strategy!r}")


def state_elimination(
    aut: Automaton,
    order: str | Sequence[State] = "greedy",
    simplify_steps: bool = True,
) -> RegEx:
    """Convert by eliminating states in the given or computed order.

    `order` is a strategy name from STRATEGIES or an explicit permutation
    of the automaton's states.
    """
    if isinstance(order, str):
        seq = make_ordering(aut, order)
    else:
        seq = list(order)
        if sorted(seq, key=_state_key) != sorted(aut.states, key=_state_key):
            raise ValueError("order must be a permutation of the states")
    ext = augment(aut)
    for q in seq:
        ext = eliminate_state(ext, q, simplify_labels=simplify_steps)
    label = ext.label(SOURCE, SINK)
    return simplify(label) if simplify_steps else label


# ---------------------------------------------------------------------------
# Arden-style equation solving


def arden_solve(aut: Automaton, simplify_steps: bool = True) -> RegEx:
    """Solve the per-state language equations by back-substitution.

    Each unknown is the set of words leading from its state into acceptance;
    self-referential equations are resolved with the unique solution K*L,
    whose side condition (λ-free K) holds because the input is λ-free.
    """
    if not aut.is_lambda_free():
        raise ValueError("arden_solve expects a λ-free automaton (remove λ first)")
    post = simplify if simplify_steps else (lambda e: e)

    coeffs: dict[State, dict[State, RegEx]] = {q: {} for q in aut.states}
    consts: dict[State, RegEx] = {q: EPSILON if q in aut.finals else EMPTY for q in aut.states}
    for p, a, q in sorted(aut.transitions, key=lambda t: (_state_key(t[0]), t[1], _state_key(t[2]))):
        old = coeffs[p].get(q)
        coeffs[p][q] = Sym(a) if old is None else Union(old, Sym(a))

    order = [q for q in sorted(aut.states, key=_state_key, reverse=True) if q != aut.initial]
    order.append(aut.initial)

    for pos, q in enumerate(order):
        eq_c = coeffs[q]
        if q in eq_c:
            k = eq_c.pop(q)
            if nullable(k):
                raise ValueError("self-coefficient contains λ; unique solution lost")
            star = Star(k)
            eq_c = {j: post(Concat(star, expr)) for j, expr in eq_c.items()}
            coeffs[q] = eq_c
            if not isinstance(consts[q], Empty):
                consts[q] = post(Concat(star, consts[q]))
        if q == aut.initial:
            break
        for other in order[pos + 1 :]:
            if q not in coeffs[other]:
                continue
            through = coeffs[other].pop(q)
            for j in sorted(eq_c, key=_state_key):
                add = Concat(through, eq_c[j])
                old = coeffs[other].get(j)
                coeffs[other][j] = post(add if old is None else Union(old, add))
            if not isinstance(consts[q], Empty):
                add = Concat(through, consts[q])
                old = consts[other]
                consts[other] = post(add if isinstance(old, Empty) else Union(old, add))

    if coeffs[aut.initial]:
        raise RuntimeError("unresolved unknowns after substitution")
    return post(consts[aut.initial])


# ---------------------------------------------------------------------------
# McNaughton-Yamada matrix iteration


def _mny_rounds(aut: Automaton, ranking: Sequence[State], post):
    """Yield the expression matrix after each round of the iteration."""
    states = sorted(aut.states, key=_state_key)
    matrix: dict[tuple, RegEx] = {}
    for p, a, q in sorted(aut.transitions, key=lambda t: (_state_key(t[0]), t[1], _state_key(t[2]))):
        old = matrix.get((p, q))
        matrix[(p, q)] = Sym(a) if old is None else Union(old, Sym(a))
    for p in states:
        for q in states:
            matrix.setdefault((p, q), EMPTY)

    for i in ranking:
        star = Star(matrix[(i, i)])
        new: dict[tuple, RegEx] = {}
        for j in states:
            for k in states:
                if j == i and k == i:
                    entry: RegEx = Concat(star, matrix[(i, i)])
                elif j == i:
                    entry = Concat(star, matrix[(i, k)])
                elif k == i:
                    entry = Concat(matrix[(j, i)], star)
                else:
                    entry = Union(
                        matrix[(j, k)],
                        Concat(Concat(matrix[(j, i)], star), matrix[(i, k)]),
                    )
                new[(j, k)] = post(entry)
        matrix = new
        yield matrix


def mcnaughton_yamada(
    aut: Automaton, ranking: Sequence[State] | None = None, simplify_steps: bool = True
) -> RegEx:
    """Matrix rounds over a state ranking; λ is added at the end if accepted.

    The shortcuts ``b_ik = (a_ii)* a_ik``, ``b_ki = a_ki (a_ii)*`` and
    ``b_ii = (a_ii)* a_ii`` are applied in the processed row and column.
    """
    if not aut.is_lambda_free():
        raise ValueError("mcnaughton_yamada expects a λ-free automaton")
    states = sorted(aut.states, key=_state_key)
    if ranking is None:
        ranking = list(reversed(states))
    else:
        ranking = list(ranking)
        if sorted(ranking, key=_state_key) != states:
            raise ValueError("ranking must be a permutation of the states")
    post = simplify if simplify_steps else (lambda e: e)

    matrix = {}
    for rounds in _mny_rounds(aut, ranking, post):
        matrix = rounds

    parts: list[RegEx] = []
    if aut.initial in aut.finals:
        parts.append(EPSILON)
    for f in sorted(aut.finals, key=_state_key):
        entry = matrix[(aut.initial, f)]
        if not isinstance(entry, Empty):
            parts.append(entry)
    if not parts:
        return EMPTY
    out = parts[0]
    for p in parts[1:]:
        out = Union(out, p)
    return out
