import itertools

import pytest

from simbelief import (
    Complex, ModelError, PolychromaticModel, QueryError, Vertex, alive_worlds, downward_closure,
    facets, is_proper, multiplicity, restrict, star_condition, validate,
)
from simbelief.model import is_downward_closed, maximal_faces, sorted_names
from simbelief.testlab import GenParams, gen_models


def fs(*faces):
    return {frozenset(f) for f in faces}


def simple_model(coloring, facet_list, worlds=None, valuation=None, agents=None):
    agents = agents if agents is not None else {c for c in coloring.values() if c}
    return PolychromaticModel.build(agents, coloring, facet_list, worlds, valuation)


class TestClosure:
    def test_triangle(self):
        assert downward_closure([{1, 2, 3}]) == fs({1, 2, 3}, {1, 2}, {1, 3}, {2, 3}, {1}, {2}, {3})

    def test_singleton(self):
        assert downward_closure([{1}]) == fs({1})

    def test_two_generators(self):
        got = downward_closure([{1, 2, 3}, {3, 4}])
        # 7 faces under {1,2,3}, 3 under {3,4}, {3} counted once
        assert len(got) == 9
        assert frozenset({3}) in got and frozenset({3, 4}) in got

    def test_empty_generator_names_index(self):
        with pytest.raises(ModelError, match="#1"):
            downward_closure([{1}, set()])

    def test_idempotent_and_no_empty_face(self):
        once = downward_closure([{1, 2, 3}, {3, 4}])
        assert downward_closure(once) == once
        assert frozenset() not in once
        assert is_downward_closed(once)

    def test_monotone(self):
        small = downward_closure([{1, 2}])
        big = downward_closure([{1, 2}, {2, 3, 4}])
        assert small <= big

    def test_not_closed(self):
        assert not is_downward_closed([{1, 2}])


class TestFacets:
    def test_closure_of_triangle(self):
        cx = Complex([Vertex(v, "a") for v in "123"], downward_closure([{"1", "2", "3"}]))
        assert facets(cx) == fs({"1", "2", "3"})

    def test_example_model(self):
        assert maximal_faces(downward_closure([{1, 2, 3}, {3, 4}])) == fs({1, 2, 3}, {3, 4})

    def test_chain(self):
        closed = downward_closure([{0, 1}, {1, 2}, {2, 3}])
        assert maximal_faces(closed) == fs({0, 1}, {1, 2}, {2, 3})

    def test_against_pairwise_scan(self):
        for m in gen_models(GenParams(), 50):
            faces = m.complex.faces
            brute = {f for f in faces if not any(f < g for g in faces)}
            assert facets(m.complex) == brute
            assert all(any(f <= g for g in brute) for f in faces)


class TestMultiplicity:
    def test_c3(self, c3):
        assert multiplicity(c3, "a", "X") == 2
        assert multiplicity(c3, "a", "Y") == 1
        assert multiplicity(c3, "c", "Y") == 0

    def test_proper_is_zero_or_one(self, c1):
        assert {multiplicity(c1, a, w) for a in c1.agents for w in c1.worlds} <= {0, 1}

    def test_unknown_agent_and_world(self, c3):
        with pytest.raises(QueryError):
            multiplicity(c3, "z", "X")
        with pytest.raises(QueryError):
            multiplicity(c3, "a", "nowhere")

    def test_alive_iff_positive(self):
        for m in gen_models(GenParams(), 100):
            for a in m.agents:
                alive = alive_worlds(m, {a})
                for w in m.worlds:
                    assert (multiplicity(m, a, w) >= 1) == (w in alive)


class TestAlive:
    def test_c1(self, c1):
        assert alive_worlds(c1, {"a", "b", "c"}) == {"X", "Y"}

    def test_c3(self, c3):
        assert alive_worlds(c3, {"c"}) == {"X"}

    def test_empty_group(self, c3):
        assert alive_worlds(c3, set()) == set(c3.worlds)


class TestStar:
    def test_chain_witness(self, chain):
        report = star_condition(chain.worlds, chain.coloring)
        assert not report.ok
        (v,) = report.violations
        assert v.witness["agent"] == "a"
        assert v.witness["faces"] == [["0", "1"], ["1", "2"], ["2", "3"]]

    def test_c5_ok(self, c5):
        assert star_condition(c5.worlds, c5.coloring).ok

    def test_proper_implies_star(self):
        for m in gen_models(GenParams(proper=True), 100):
            assert is_proper(m)
            assert star_condition(m.worlds, m.coloring).ok


class TestValidate:
    def test_fixtures_ok(self, c1, c3, c5, nonproper):
        for m in (c1, c3, c5, nonproper):
            assert validate(m).ok, validate(m).violations

    def test_chain_rejected(self, chain):
        assert validate(chain).rules() == {"star-condition"}

    def test_facet_not_world(self):
        m = simple_model({"1": "a", "2": "b", "3": "a"}, [{"1", "2"}, {"2", "3"}],
                         worlds={"X": {"1", "2"}})
        report = validate(m)
        hit = [v for v in report.violations if v.rule == "facet-not-world"]
        assert hit and hit[0].witness == {"facet": ["2", "3"]}

    def test_world_not_face(self):
        m = simple_model({"1": "a", "2": "b"}, [{"1"}, {"2"}],
                         worlds={"X": {"1"}, "Y": {"2"}, "Z": {"1", "2"}})
        assert "world-not-face" in validate(m).rules()

    def test_duplicate_world_names(self):
        m = simple_model({"1": "a"}, [{"1"}], worlds={"X": {"1"}, "Y": {"1"}})
        assert "duplicate-world" in validate(m).rules()

    def test_coloring_problems(self):
        m = simple_model({"1": "a", "2": None, "3": "z"}, [{"1", "2", "3"}], agents={"a"})
        assert {"uncolored-vertex", "unknown-color"} <= validate(m).rules()

    def test_unknown_vertex_and_valuation_world(self):
        m = simple_model({"1": "a"}, [{"1", "9"}], valuation={"nowhere": ["p"]})
        assert {"unknown-vertex", "valuation-unknown-world"} <= validate(m).rules()

    def test_reports_all_violations(self):
        m = simple_model({"0": "a", "1": "a", "2": "a", "3": "a", "4": None},
                         [{"0", "1"}, {"1", "2"}, {"2", "3"}, {"4"}],
                         worlds={"X": {"0", "1"}, "Y": {"1", "2"}, "Z": {"2", "3"}})
        assert {"uncolored-vertex", "facet-not-world", "star-condition"} <= validate(m).rules()

    def test_report_dict(self, chain):
        d = validate(chain).to_dict()
        assert d["ok"] is False and d["violations"][0]["rule"] == "star-condition"


class TestProper:
    def test_fixtures(self, c1, c3):
        assert is_proper(c1)
        assert not is_proper(c3)

    def test_single_vertex(self):
        assert is_proper(simple_model({"v": "a"}, [{"v"}]))


class TestRestrict:
    def test_chain_pairs_pass(self, chain):
        for pair in itertools.combinations(chain.world_names, 2):
            assert validate(restrict(chain, pair)).ok

    def test_keeps_valuation(self, nonproper):
        sub = restrict(nonproper, ["X"])
        assert sub.world_names == ["X"] and sub.props("X") == nonproper.props("X")


def test_indist_transitive_on_generated_models():
    from simbelief import indist

    for m in gen_models(GenParams(), 200):
        ws = m.world_names
        for a in m.agents:
            rel = {(x, y) for x in ws for y in ws if indist(m, {a}, x, y)}
            for (x, y), (y2, z) in itertools.product(rel, rel):
                if y == y2:
                    assert (x, z) in rel


def test_sorted_names_natural():
    assert sorted_names(["v10", "v2", "v1"]) == ["v1", "v2", "v10"]
