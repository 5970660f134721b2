"""Formula AST, concrete syntax and the positive fragment.

Concrete syntax (ASCII)::

    formula := impl
    impl    := disj ("->" impl)?
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "~" unary | "K{" agents "}" unary | "Sb[" agent "]" unary
             | "<Sb>[" agent "]" unary | "B[" agent "]" unary
             | "alive{" agents "}" | "dead{" agents "}"
             | "true" | "false" | ident | "(" formula ")"

With ``experimental=True`` the group forms ``Sb{G} f`` and ``B{G} f`` are
accepted as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from simbelief.errors import FormulaSyntaxError


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    def children(self) -> tuple[Formula, ...]:
        return ()


def _node(cls):
    # frozen dataclass whose hash is cached: formulas are deep and used as dict keys a lot
    cls = dataclass(frozen=True)(cls)
    structural = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = structural(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


@_node
class Atom(Formula):
    name: str


@_node
class Top(Formula):
    pass


@_node
class Bottom(Formula):
    pass


@_node
class Not(Formula):
    operand: Formula

    def children(self):
        return (self.operand,)


@_node
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@_node
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@_node
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@_node
class Know(Formula):
    """Distributed knowledge of a nonempty group."""

    group: frozenset
    operand: Formula

    def children(self):
        return (self.operand,)


@_node
class SafeBelief(Formula):
    agent: str
    operand: Formula

    def children(self):
        return (self.operand,)


@_node
class DualSafeBelief(Formula):
    agent: str
    operand: Formula

    def children(self):
        return (self.operand,)


@_node
class Belief(Formula):
    """Most plausible belief."""

    agent: str
    operand: Formula

    def children(self):
        return (self.operand,)


@_node
class GroupSafeBelief(Formula):
    group: frozenset
    operand: Formula

    def children(self):
        return (self.operand,)


@_node
class GroupBelief(Formula):
    group: frozenset
    operand: Formula

    def children(self):
        return (self.operand,)


TOP = Top()
BOTTOM = Bottom()

MODAL_TYPES = (Know, SafeBelief, DualSafeBelief, Belief, GroupSafeBelief, GroupBelief)
GROUP_TYPES = (Know, GroupSafeBelief, GroupBelief)
AGENT_TYPES = (SafeBelief, DualSafeBelief, Belief)


def K(group, operand: Formula) -> Know:
    if isinstance(group, str):
        group = {group}
    return Know(frozenset(group), operand)


def alive(group) -> Formula:
    return Not(K(group, BOTTOM))


def dead(group) -> Formula:
    return K(group, BOTTOM)


def conj(*parts: Formula) -> Formula:
    """Left-nested conjunction; ``true`` when empty."""
    if not parts:
        return TOP
    result = parts[0]
    for p in parts[1:]:
        result = And(result, p)
    return result


def iff(left: Formula, right: Formula) -> Formula:
    return And(Implies(left, right), Implies(right, left))


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"(->)|(<\s*Sb\s*>)|([A-Za-z_][A-Za-z0-9_]*)|(.)", re.S)
_SPACE = re.compile(r"\s*")
KEYWORDS = {"true", "false"}
_GROUP_OPS = {"K", "alive", "dead"}
_AGENT_OPS = {"Sb", "B"}


@dataclass
class _Tok:
    kind: str  # "ident", "sym", "end"
    text: str
    pos: int


def _tokens(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while True:
        pos = _SPACE.match(text, pos).end()
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        start = pos
        if m.group(1):
            out.append(_Tok("sym", "->", start))
        elif m.group(2):
            out.append(_Tok("sym", "<Sb>", start))
        elif m.group(3):
            out.append(_Tok("ident", m.group(3), start))
        else:
            ch = m.group(4)
            if ch not in "~&|(){}[],":
                raise FormulaSyntaxError(f"unexpected character {ch!r}", text, start)
            out.append(_Tok("sym", ch, start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, experimental: bool):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0
        self.experimental = experimental

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, offset: int = 1) -> _Tok:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def fail(self, message: str, expected=()):
        raise FormulaSyntaxError(message, self.text, self.tok.pos, expected)

    def describe(self, tok: _Tok) -> str:
        return "end of input" if tok.kind == "end" else repr(tok.text)

    def expect(self, sym: str) -> _Tok:
        if self.tok.kind == "sym" and self.tok.text == sym:
            tok = self.tok
            self.i += 1
            return tok
        self.fail(f"unexpected {self.describe(self.tok)}", [repr(sym)])

    def at(self, sym: str) -> bool:
        return self.tok.kind == "sym" and self.tok.text == sym

    def parse(self) -> Formula:
        f = self.impl()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.describe(self.tok)}", ["'&'", "'|'", "'->'", "end of input"])
        return f

    def impl(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.i += 1
            f = And(f, self.unary())
        return f

    def agent(self) -> str:
        if self.tok.kind == "ident" and self.tok.text not in KEYWORDS:
            name = self.tok.text
            self.i += 1
            return name
        self.fail(f"expected agent name, got {self.describe(self.tok)}", ["agent name"])

    def agents(self) -> frozenset:
        if self.at("}"):
            self.fail("empty agent group", ["agent name"])
        names = [self.agent()]
        while self.at(","):
            self.i += 1
            names.append(self.agent())
        self.expect("}")
        return frozenset(names)

    def unary(self) -> Formula:
        tok = self.tok
        if tok.kind == "sym":
            if tok.text == "~":
                self.i += 1
                return Not(self.unary())
            if tok.text == "(":
                self.i += 1
                f = self.impl()
                self.expect(")")
                return f
            if tok.text == "<Sb>":
                self.i += 1
                self.expect("[")
                a = self.agent()
                self.expect("]")
                return DualSafeBelief(a, self.unary())
        elif tok.kind == "ident":
            nxt = self.peek()
            if tok.text in _GROUP_OPS and nxt.kind == "sym" and nxt.text == "{":
                self.i += 2
                group = self.agents()
                if tok.text == "K":
                    return Know(group, self.unary())
                if tok.text == "alive":
                    return alive(group)
                return dead(group)
            if tok.text in _AGENT_OPS and nxt.kind == "sym" and nxt.text == "[":
                self.i += 2
                a = self.agent()
                self.expect("]")
                body = self.unary()
                return SafeBelief(a, body) if tok.text == "Sb" else Belief(a, body)
            if tok.text in _AGENT_OPS and nxt.kind == "sym" and nxt.text == "{":
                if not self.experimental:
                    self.fail(f"group modality {tok.text}{{...}} requires experimental mode")
                self.i += 2
                group = self.agents()
                body = self.unary()
                return GroupSafeBelief(group, body) if tok.text == "Sb" else GroupBelief(group, body)
            self.i += 1
            if tok.text == "true":
                return TOP
            if tok.text == "false":
                return BOTTOM
            return Atom(tok.text)
        self.fail(
            f"unexpected {self.describe(tok)}",
            ["'~'", "'('", "'K{'", "'Sb['", "'<Sb>['", "'B['", "'alive{'", "'dead{'",
             "'true'", "'false'", "identifier"],
        )


def parse(text: str, experimental: bool = False) -> Formula:
    """Parse a formula; raises :class:`FormulaSyntaxError` with position info."""
    return _Parser(text, experimental).parse()


# -- printing ----------------------------------------------------------------

_IMPL, _DISJ, _CONJ, _UNARY = 1, 2, 3, 4


def _group_text(group) -> str:
    from simbelief.model import sorted_names

    return ",".join(sorted_names(group))


def _prec(f: Formula) -> int:
    if isinstance(f, Implies):
        return _IMPL
    if isinstance(f, Or):
        return _DISJ
    if isinstance(f, And):
        return _CONJ
    return _UNARY


def _wrap(f: Formula, level: int) -> str:
    s = to_text(f)
    return f"({s})" if _prec(f) < level else s


def to_text(f: Formula) -> str:
    """Render with minimal parentheses; ``parse(to_text(f)) == f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        if isinstance(f.operand, Know) and isinstance(f.operand.operand, Bottom):
            return f"alive{{{_group_text(f.operand.group)}}}"
        return "~" + _wrap(f.operand, _UNARY)
    if isinstance(f, And):
        return f"{_wrap(f.left, _CONJ)} & {_wrap(f.right, _UNARY)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, _DISJ)} | {_wrap(f.right, _CONJ)}"
    if isinstance(f, Implies):
        return f"{_wrap(f.left, _DISJ)} -> {_wrap(f.right, _IMPL)}"
    if isinstance(f, Know):
        if isinstance(f.operand, Bottom):
            return f"dead{{{_group_text(f.group)}}}"
        return f"K{{{_group_text(f.group)}}} {_wrap(f.operand, _UNARY)}"
    if isinstance(f, SafeBelief):
        return f"Sb[{f.agent}] {_wrap(f.operand, _UNARY)}"
    if isinstance(f, DualSafeBelief):
        return f"<Sb>[{f.agent}] {_wrap(f.operand, _UNARY)}"
    if isinstance(f, Belief):
        return f"B[{f.agent}] {_wrap(f.operand, _UNARY)}"
    if isinstance(f, GroupSafeBelief):
        return f"Sb{{{_group_text(f.group)}}} {_wrap(f.operand, _UNARY)}"
    if isinstance(f, GroupBelief):
        return f"B{{{_group_text(f.group)}}} {_wrap(f.operand, _UNARY)}"
    raise TypeError(f"not a formula: {f!r}")


# -- structure ---------------------------------------------------------------

def _walk(f: Formula) -> Iterator[Formula]:
    for c in f.children():
        yield from _walk(c)
    yield f


def subformulas(f: Formula) -> list[Formula]:
    """Post-order, children first, structural duplicates dropped."""
    seen = set()
    out = []
    for g in _walk(f):
        if g not in seen:
            seen.add(g)
            out.append(g)
    return out


def atoms_of(f: Formula) -> set[str]:
    return {g.name for g in _walk(f) if isinstance(g, Atom)}


def agents_of(f: Formula) -> set[str]:
    out: set[str] = set()
    for g in _walk(f):
        if isinstance(g, GROUP_TYPES):
            out |= g.group
        elif isinstance(g, AGENT_TYPES):
            out.add(g.agent)
    return out


def groups_of(f: Formula) -> set[frozenset]:
    return {g.group for g in _walk(f) if isinstance(g, Know)}


def depth(f: Formula) -> int:
    kids = f.children()
    return 0 if not kids else 1 + max(depth(c) for c in kids)


def is_experimental(f: Formula) -> bool:
    return any(isinstance(g, (GroupSafeBelief, GroupBelief)) for g in _walk(f))


def is_propositional(f: Formula) -> bool:
    """Modality-free formula (the Boolean layer of the positive fragment)."""
    if isinstance(f, (Atom, Top, Bottom)):
        return True
    if isinstance(f, (Not, And, Or, Implies)):
        return all(is_propositional(c) for c in f.children())
    return False


def is_positive(f: Formula) -> bool:
    """Knowledge-only formula with boxes in positive positions.

    Propositional formulas, closed under ``&``, ``|`` and ``K{G}``.
    """
    if is_propositional(f):
        return True
    if isinstance(f, (And, Or)):
        return is_positive(f.left) and is_positive(f.right)
    if isinstance(f, Know):
        return is_positive(f.operand)
    return False


def first_non_positive(f: Formula) -> Formula | None:
    """Smallest offending subformula, for error messages."""
    if is_positive(f):
        return None
    if isinstance(f, (And, Or, Know)):
        for c in f.children():
            bad = first_non_positive(c)
            if bad is not None:
                return bad
    return f
