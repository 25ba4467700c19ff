"""refa: regular expressions ⇄ finite automata, with size and structure measures."""

from .automata import (
    Automaton,
    FaMeasures,
    accepts,
    distinguishing_word,
    equivalent,
    fa_measures,
    is_bideterministic,
    minimize,
    remove_lambda,
    reverse,
    subset_construction,
)
from .constructions import (
    PositionSets,
    construct,
    construct_brzozowski,
    construct_follow,
    construct_of,
    construct_pd,
    construct_position,
    derivative,
    partial_derivatives,
    position_sets,
)
from .digraphs import (
    Digraph,
    cycle_rank,
    cycle_rank_upper,
    cycles_through,
    independent_set,
    sccs,
    star_height_bideterministic,
    underlying_digraph,
    undirected_cycle_rank,
)
from .elimination import (
    ExtendedAutomaton,
    arden_solve,
    augment,
    eliminate_state,
    make_ordering,
    mcnaughton_yamada,
    simplify,
    state_elimination,
)
from .expressions import (
    EMPTY,
    EPSILON,
    Concat,
    Empty,
    Epsilon,
    MarkedRegEx,
    MeasureReport,
    Option,
    RegEx,
    Star,
    Sym,
    Union,
    mark,
    measures,
    nullable,
    parse,
    random_expr,
    render,
    ssnf,
    tokenize_word,
    unmark,
)
from .families import (
    buffer_dfa,
    buffer_regex,
    gen_family,
    hypercube_dfa,
    options_regex,
    random_dfa,
    table1_row,
    torus_dfa,
)

__version__ = "0.1.0"
