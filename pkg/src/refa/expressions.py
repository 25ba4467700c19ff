"""Regular expression ASTs, concrete syntax, size measures and normal forms.

The concrete syntax is ASCII-safe: `#` is the empty set, `&` the empty
word, `+` union, juxtaposition (or an explicit `·`) concatenation, and
postfix `*` / `?` iteration and option.  Symbols are a letter followed by
optional digits (`a`, `b2`, `a17`), so families over growing alphabets
remain writable without quoting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

__all__ = [
    "RegEx",
    "Empty",
    "Epsilon",
    "Sym",
    "Union",
    "Concat",
    "Star",
    "Option",
    "EMPTY",
    "EPSILON",
    "MarkedRegEx",
    "MeasureReport",
    "RegexSyntaxError",
    "parse",
    "render",
    "tokenize_word",
    "measures",
    "nullable",
    "symbols_of",
    "mark",
    "unmark",
    "ssnf",
    "random_expr",
]


class RegEx:
    """Base class of all regular expression nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Empty(RegEx):
    pass


@dataclass(frozen=True)
class Epsilon(RegEx):
    pass


@dataclass(frozen=True)
class Sym(RegEx):
    name: str
    pos: int | None = None  # position index, set on marked expressions only

    def __post_init__(self):
        if not _valid_symbol(self.name):
            raise ValueError(f"invalid symbol name {self.name!r}")


@dataclass(frozen=True)
class Union(RegEx):
    left: RegEx
    right: RegEx


@dataclass(frozen=True)
class Concat(RegEx):
    left: RegEx
    right: RegEx


@dataclass(frozen=True)
class Star(RegEx):
    inner: RegEx


@dataclass(frozen=True)
class Option(RegEx):
    inner: RegEx


EMPTY = Empty()
EPSILON = Epsilon()


def _valid_symbol(name: str) -> bool:
    if not name or not (name[0].isalpha() and name[0].isascii()):
        return False
    return name[1:] == "" or name[1:].isdigit()


@dataclass(frozen=True)
class MeasureReport:
    """Size measures of a single expression."""

    size: int
    rpn: int
    awidth: int
    height: int


@dataclass(frozen=True)
class MarkedRegEx:
    """An expression whose symbol leaves carry position indices 1..awidth."""

    tree: RegEx
    origin: RegEx


class RegexSyntaxError(ValueError):
    """Raised on malformed concrete syntax; carries the offending offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


# ---------------------------------------------------------------------------
# Parsing and rendering
#
# expr   := term ('+' term)*
# term   := factor+
# factor := base ('*' | '?')*
# base   := '(' expr ')' | '#' | '&' | SYMBOL
# SYMBOL := [A-Za-z][0-9]*


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def parse(self) -> RegEx:
        self._skip_ws()
        if self.i >= len(self.text):
            raise RegexSyntaxError("empty expression", 0)
        node = self._expr()
        self._skip_ws()
        if self.i < len(self.text):
            raise RegexSyntaxError(f"unexpected {self.text[self.i]!r}", self.i)
        return node

    def _skip_ws(self):
        while self.i < len(self.text) and self.text[self.i] == " ":
            self.i += 1

    def _peek(self) -> str | None:
        self._skip_ws()
        return self.text[self.i] if self.i < len(self.text) else None

    def _expr(self) -> RegEx:
        node = self._term()
        while self._peek() == "+":
            self.i += 1
            node = Union(node, self._term())
        return node

    def _term(self) -> RegEx:
        node = self._factor()
        while True:
            c = self._peek()
            if c == "·":
                self.i += 1
                c = self._peek()
                if c is None or c in ")+*?·":
                    raise RegexSyntaxError("dangling '·'", self.i)
                node = Concat(node, self._factor())
            elif c is not None and (c == "(" or c == "#" or c == "&" or c.isalpha()):
                node = Concat(node, self._factor())
            else:
                return node

    def _factor(self) -> RegEx:
        node = self._base()
        while True:
            c = self._peek()
            if c == "*":
                self.i += 1
                node = Star(node)
            elif c == "?":
                self.i += 1
                node = Option(node)
            else:
                return node

    def _base(self) -> RegEx:
        c = self._peek()
        if c is None:
            raise RegexSyntaxError("unexpected end of input", self.i)
        if c == "(":
            open_at = self.i
            self.i += 1
            node = self._expr()
            if self._peek() != ")":
                raise RegexSyntaxError(f"unbalanced '(' opened at offset {open_at}", self.i)
            self.i += 1
            return node
        if c == "#":
            self.i += 1
            return EMPTY
        if c == "&":
            self.i += 1
            return EPSILON
        if c.isalpha() and c.isascii():
            start = self.i
            self.i += 1
            while self.i < len(self.text) and self.text[self.i].isdigit():
                self.i += 1
            return Sym(self.text[start : self.i])
        raise RegexSyntaxError(f"unexpected {c!r}", self.i)


def parse(text: str) -> RegEx:
    """Parse concrete syntax into an AST.

    Star/option bind tighter than concatenation, which binds tighter than
    union; binary operators group to the left.
    """
    return _Parser(text).parse()


def tokenize_word(text: str) -> list[str]:
    """Split a word like ``a1a2b`` into its symbol names."""
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if not (c.isalpha() and c.isascii()):
            raise RegexSyntaxError(f"unexpected {c!r} in word", i)
        j = i + 1
        while j < len(text) and text[j].isdigit():
            j += 1
        out.append(text[i:j])
        i = j
    return out


_LEVEL_UNION, _LEVEL_CONCAT, _LEVEL_UNARY, _LEVEL_ATOM = 0, 1, 2, 3


def _level(r: RegEx) -> int:
    if isinstance(r, Union):
        return _LEVEL_UNION
    if isinstance(r, Concat):
        return _LEVEL_CONCAT
    if isinstance(r, (Star, Option)):
        return _LEVEL_UNARY
    return _LEVEL_ATOM


def render(r: RegEx, unicode: bool = False) -> str:
    """Minimal-parenthesis text for an AST.

    With ``unicode=True`` the empty set and the empty word print as the
    usual glyphs instead of the `#` / `&` input lexemes.
    """
    empty, epsilon = ("∅", "λ") if unicode else ("#", "&")

    def go(node: RegEx, need: int) -> str:
        if _level(node) < need:
            return "(" + go(node, _LEVEL_UNION) + ")"
        if isinstance(node, Empty):
            return empty
        if isinstance(node, Epsilon):
            return epsilon
        if isinstance(node, Sym):
            return node.name
        if isinstance(node, Union):
            # union is associative: no parens on either side for nested unions
            return go(node.left, _LEVEL_UNION) + "+" + go(node.right, _LEVEL_UNION)
        if isinstance(node, Concat):
            return go(node.left, _LEVEL_CONCAT) + go(node.right, _LEVEL_CONCAT)
        if isinstance(node, Star):
            return go(node.inner, _LEVEL_UNARY) + "*"
        if isinstance(node, Option):
            return go(node.inner, _LEVEL_UNARY) + "?"
        raise TypeError(f"not a RegEx: {node!r}")

    return go(r, _LEVEL_UNION)


# ---------------------------------------------------------------------------
# Measures


def measures(r: RegEx) -> MeasureReport:
    """Size (fully bracketed symbol count), rpn, alphabetic width, star height.

    The size convention charges atoms 1, binary nodes 3 (operator plus the
    surrounding parentheses, with concatenation written `·`), and unary
    nodes 3.  Option is transparent for star height.
    """
    if isinstance(r, (Empty, Epsilon, Sym)):
        return MeasureReport(1, 1, 0 if not isinstance(r, Sym) else 1, 0)
    if isinstance(r, (Union, Concat)):
        a = measures(r.left)
        b = measures(r.right)
        return MeasureReport(
            a.size + b.size + 3,
            a.rpn + b.rpn + 1,
            a.awidth + b.awidth,
            max(a.height, b.height),
        )
    inner = measures(r.inner)
    bump = 1 if isinstance(r, Star) else 0
    return MeasureReport(inner.size + 3, inner.rpn + 1, inner.awidth, inner.height + bump)


def nullable(r: RegEx) -> bool:
    """True iff the empty word belongs to the denoted language."""
    if isinstance(r, (Star, Option, Epsilon)):
        return True
    if isinstance(r, Union):
        return nullable(r.left) or nullable(r.right)
    if isinstance(r, Concat):
        return nullable(r.left) and nullable(r.right)
    return False


def symbols_of(r: RegEx) -> frozenset[str]:
    """All symbol names occurring in the expression."""
    acc: set[str] = set()

    def walk(node: RegEx):
        if isinstance(node, Sym):
            acc.add(node.name)
        elif isinstance(node, (Union, Concat)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, (Star, Option)):
            walk(node.inner)

    walk(r)
    return frozenset(acc)


# ---------------------------------------------------------------------------
# Marking


def mark(r: RegEx) -> MarkedRegEx:
    """Attach position indices 1..awidth to the symbol leaves, left to right."""
    counter = [0]

    def walk(node: RegEx) -> RegEx:
        if isinstance(node, Sym):
            counter[0] += 1
            return Sym(node.name, counter[0])
        if isinstance(node, Union):
            return Union(walk(node.left), walk(node.right))
        if isinstance(node, Concat):
            return Concat(walk(node.left), walk(node.right))
        if isinstance(node, Star):
            return Star(walk(node.inner))
        if isinstance(node, Option):
            return Option(walk(node.inner))
        return node

    return MarkedRegEx(walk(r), r)


def unmark(m: MarkedRegEx) -> RegEx:
    """Erase position indices; inverse of :func:`mark`."""

    def walk(node: RegEx) -> RegEx:
        if isinstance(node, Sym):
            return Sym(node.name)
        if isinstance(node, Union):
            return Union(walk(node.left), walk(node.right))
        if isinstance(node, Concat):
            return Concat(walk(node.left), walk(node.right))
        if isinstance(node, Star):
            return Star(walk(node.inner))
        if isinstance(node, Option):
            return Option(walk(node.inner))
        return node

    return walk(m.tree)


# ---------------------------------------------------------------------------
# Strong star normal form


def _purge_units(r: RegEx) -> RegEx:
    """Remove ∅ and λ from inside non-atomic expressions.

    ``s+λ`` and ``λ+s`` become ``s?`` on the way.  The result is either an
    atomic ∅ / λ or an expression containing neither.
    """
    if isinstance(r, (Empty, Epsilon, Sym)):
        return r
    if isinstance(r, Union):
        left = _purge_units(r.left)
        right = _purge_units(r.right)
        if isinstance(left, Empty):
            return right
        if isinstance(right, Empty):
            return left
        if isinstance(left, Epsilon) and isinstance(right, Epsilon):
            return EPSILON
        if isinstance(left, Epsilon):
            return Option(right)
        if isinstance(right, Epsilon):
            return Option(left)
        return Union(left, right)
    if isinstance(r, Concat):
        left = _purge_units(r.left)
        right = _purge_units(r.right)
        if isinstance(left, Empty) or isinstance(right, Empty):
            return EMPTY
        if isinstance(left, Epsilon):
            return right
        if isinstance(right, Epsilon):
            return left
        return Concat(left, right)
    inner = _purge_units(r.inner)
    if isinstance(inner, (Empty, Epsilon)):
        return EPSILON
    return Star(inner) if isinstance(r, Star) else Option(inner)


def _circ(r: RegEx) -> RegEx:
    if isinstance(r, Sym):
        return r
    if isinstance(r, (Empty, Epsilon)):
        return r
    if isinstance(r, Union):
        return Union(_circ(r.left), _circ(r.right))
    if isinstance(r, (Star, Option)):
        return _circ(r.inner)
    # concatenation splits into a union exactly when it is nullable
    if nullable(r):
        return Union(_circ(r.left), _circ(r.right))
    return r


def _bullet(r: RegEx) -> RegEx:
    if isinstance(r, (Sym, Empty, Epsilon)):
        return r
    if isinstance(r, Union):
        return Union(_bullet(r.left), _bullet(r.right))
    if isinstance(r, Concat):
        return Concat(_bullet(r.left), _bullet(r.right))
    if isinstance(r, Star):
        return Star(_circ(_bullet(r.inner)))
    if nullable(r.inner):
        return _bullet(r.inner)
    return Option(_bullet(r.inner))


def ssnf(r: RegEx) -> RegEx:
    """Strong star normal form: language-preserving, never larger, idempotent."""
    return _bullet(_purge_units(r))


# ---------------------------------------------------------------------------
# Random generation


def random_expr(
    awidth: int,
    alphabet: list[str],
    seed: int,
    unary_cap: int = 2,
) -> RegEx:
    """Uniform random syntax tree with exactly `awidth` symbol occurrences.

    At every node the production is drawn uniformly among those applicable;
    chains of consecutive unary operators are capped at `unary_cap` so that
    degenerate star towers do not distort size averages.
    """
    if awidth < 1:
        raise ValueError("awidth must be >= 1")
    if not alphabet:
        raise ValueError("alphabet must be non-empty")
    for name in alphabet:
        if not _valid_symbol(name):
            raise ValueError(f"invalid symbol name {name!r}")
    rng = random.Random(seed)

    def join(cls, left: RegEx, right: RegEx) -> RegEx:
        # same-operator chains stay left-associated, as the parser builds
        # them, so that generated trees survive a render/parse round trip
        parts: list[RegEx] = []

        def flat(node: RegEx):
            if isinstance(node, cls):
                flat(node.left)
                flat(node.right)
            else:
                parts.append(node)

        flat(left)
        flat(right)
        out = parts[0]
        for part in parts[1:]:
            out = cls(out, part)
        return out

    def gen(w: int, unary_left: int) -> RegEx:
        if w == 1:
            prods = ["sym"]
        else:
            prods = ["union", "concat"]
        if unary_left > 0:
            prods += ["star", "option"]
        p = rng.choice(prods)
        if p == "sym":
            return Sym(rng.choice(alphabet))
        if p == "star":
            return Star(gen(w, unary_left - 1))
        if p == "option":
            return Option(gen(w, unary_left - 1))
        k = rng.randint(1, w - 1)
        left = gen(k, unary_cap)
        right = gen(w - k, unary_cap)
        return join(Union if p == "union" else Concat, left, right)

    return gen(awidth, unary_cap)
