from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from simbelief.errors import FormulaSyntaxError
from simbelief.syntax import (
    BOTTOM, TOP, And, Atom, Belief, DualSafeBelief, GroupBelief, GroupSafeBelief, Implies, Know,
    Not, Or, SafeBelief, alive, atoms_of, agents_of, dead, depth, first_non_positive,
    is_experimental, is_positive, is_propositional, parse, subformulas, to_text,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")
AGENTS = st.sampled_from(["a", "b", "c"])
GROUPS = st.frozensets(AGENTS, min_size=1)


def formulas(experimental=False):
    leaves = st.one_of(st.sampled_from([TOP, BOTTOM]), st.sampled_from("pqr").map(Atom))

    def extend(inner):
        options = [
            inner.map(Not),
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
            st.builds(Implies, inner, inner),
            st.builds(Know, GROUPS, inner),
            st.builds(SafeBelief, AGENTS, inner),
            st.builds(DualSafeBelief, AGENTS, inner),
            st.builds(Belief, AGENTS, inner),
        ]
        if experimental:
            options += [st.builds(GroupSafeBelief, GROUPS, inner),
                        st.builds(GroupBelief, GROUPS, inner)]
        return st.one_of(options)

    return st.recursive(leaves, extend, max_leaves=12)


class TestParse:
    def test_belief_dead(self):
        assert parse("B[a] dead{c}") == Belief("a", Know(frozenset("c"), BOTTOM))

    def test_know_implies(self):
        assert parse("K{a,b} (p -> ~q)") == Know(frozenset("ab"), Implies(p, Not(q)))

    def test_dual(self):
        assert parse("<Sb>[a] Sb[a] p") == DualSafeBelief("a", SafeBelief("a", p))
        assert parse("< Sb >[a]p") == DualSafeBelief("a", p)

    def test_alive_sugar(self):
        assert parse("alive{a, b}") == Not(Know(frozenset("ab"), BOTTOM)) == alive({"a", "b"})
        assert parse("dead{c}") == dead("c")

    def test_precedence(self):
        assert parse("p & q | r") == Or(And(p, q), r)
        assert parse("p | q & r") == Or(p, And(q, r))
        assert parse("p -> q -> r") == Implies(p, Implies(q, r))
        assert parse("p & q & r") == And(And(p, q), r)
        assert parse("~p & q") == And(Not(p), q)
        assert parse("K{a} p & q") == And(Know(frozenset("a"), p), q)

    def test_constants_and_whitespace(self):
        assert parse("  true\n&\tfalse  ") == And(TOP, BOTTOM)

    @pytest.mark.parametrize("text", [
        "", "p &", "(p", "p)", "K{} p", "K{a p", "Sb[a,b] p", "Sb[] p", "K p", "p $ q",
        "alive{a} p", "true q", "Sb{a} p", "B{a} p", "->",
    ])
    def test_errors(self, text):
        with pytest.raises(FormulaSyntaxError):
            parse(text)

    def test_error_position(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse("p &\n  (q | )")
        err = info.value
        assert (err.line, err.column) == (2, 8)
        assert err.expected

    def test_experimental_gate(self):
        f = parse("Sb{a,b} p & B{a} q", experimental=True)
        assert f == And(GroupSafeBelief(frozenset("ab"), p), GroupBelief(frozenset("a"), q))
        assert is_experimental(f)
        assert not is_experimental(parse("Sb[a] p"))


class TestPrint:
    def test_sugar(self):
        assert to_text(Belief("a", Know(frozenset("c"), BOTTOM))) == "B[a] dead{c}"
        assert to_text(alive({"b", "a"})) == "alive{a,b}"

    def test_minimal_parens(self):
        assert to_text(p) == "p"
        assert to_text(And(p, Or(q, r))) == "p & (q | r)"
        assert to_text(Or(And(p, q), r)) == "p & q | r"
        assert to_text(Implies(Implies(p, q), r)) == "(p -> q) -> r"
        assert to_text(Implies(p, Implies(q, r))) == "p -> q -> r"
        assert to_text(And(p, And(q, r))) == "p & (q & r)"
        assert to_text(Not(And(p, q))) == "~(p & q)"

    @settings(max_examples=300, deadline=None)
    @given(formulas(experimental=True))
    def test_round_trip(self, f):
        assert parse(to_text(f), experimental=True) == f

    @settings(max_examples=100, deadline=None)
    @given(formulas())
    def test_print_is_fixed_point(self, f):
        text = to_text(f)
        assert to_text(parse(text)) == text


class TestPositive:
    @pytest.mark.parametrize("text,expected", [
        ("K{a} (p & ~q)", True),
        ("~K{a} p", False),
        ("Sb[a] p", False),
        ("B[a] p", False),
        ("<Sb>[a] p", False),
        ("p | K{a,b} (q -> p)", True),
        ("K{a} K{b} p & q", True),
        ("K{a} p -> q", False),
        ("~~p", True),
        ("alive{a}", False),
        ("dead{a}", True),
    ])
    def test_examples(self, text, expected):
        assert is_positive(parse(text)) is expected

    def test_offending_subformula(self):
        assert first_non_positive(parse("K{a} p & Sb[b] q")) == SafeBelief("b", q)
        assert first_non_positive(parse("K{a} p")) is None

    @settings(max_examples=200, deadline=None)
    @given(formulas(), formulas(), GROUPS)
    def test_closure(self, f, g, group):
        if is_positive(f) and is_positive(g):
            assert is_positive(And(f, g))
            assert is_positive(Or(f, g))
            assert is_positive(Know(group, f))

    @settings(max_examples=200, deadline=None)
    @given(formulas(), formulas())
    def test_atom_substitution(self, f, g):
        if not is_propositional(g) or not is_positive(f):
            return

        def sub(h):
            if h == p:
                return g
            kids = h.children()
            if not kids:
                return h
            if isinstance(h, (And, Or, Implies)):
                return type(h)(sub(h.left), sub(h.right))
            if isinstance(h, Not):
                return Not(sub(h.operand))
            return replace(h, operand=sub(h.operand))

        assert is_positive(sub(f))


class TestStructure:
    def test_subformulas(self):
        assert subformulas(parse("p & q")) == [p, q, And(p, q)]
        assert subformulas(parse("B[a] p")) == [p, Belief("a", p)]
        assert subformulas(parse("p & p")) == [p, And(p, p)]

    def test_collectors(self):
        f = parse("K{a,b} p | Sb[c] (q & B[a] true)")
        assert atoms_of(f) == {"p", "q"}
        assert agents_of(f) == {"a", "b", "c"}
        assert depth(f) == 4  # counts every connective: |, Sb, &, B
        assert depth(p) == 0

    def test_hash_consistent(self):
        f, g = parse("K{a} (p & q)"), parse("K{a} (p & q)")
        assert f == g and hash(f) == hash(g) and f is not g
        assert len({f, g}) == 1
