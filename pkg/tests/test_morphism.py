import itertools

import pytest

from simbelief import (
    MapError, PolychromaticModel, PreconditionError, VertexMap, belief_gain_witness,
    check_morphism, check_positive_preservation, evaluate, image_face, load_map, respects_indist,
)
from simbelief.morphism import image_world
from simbelief.syntax import TOP, parse
from simbelief.testlab import GenParams, all_groups, gen_formulas, gen_morphism, get_fixture

TRIPLES = [gen_morphism(GenParams(seed=s)) for s in range(60)]


@pytest.fixture
def gain():
    return get_fixture("belief-gain").load_map()


class TestImage:
    def test_collapse(self, gain):
        _, _, f = gain
        assert image_face(f, {"2", "3"}) == {"2"}

    def test_identity_and_singleton(self, c5):
        ident = VertexMap.identity(c5)
        for w in c5.worlds.values():
            assert image_face(ident, w) == w
        assert image_face(ident, {"v3"}) == {"v3"}

    def test_unmapped(self, gain):
        _, _, f = gain
        with pytest.raises(MapError):
            image_face(f, {"9"})

    def test_monotone(self):
        for src, _, f in TRIPLES:
            for face in src.complex.faces:
                for sub in src.complex.faces:
                    if sub <= face:
                        assert image_face(f, sub) <= image_face(f, face)

    def test_compose(self, gain):
        _, tgt, f = gain
        g = f.compose(VertexMap.identity(tgt))
        assert g.mapping == dict(f.mapping)


class TestCheck:
    def test_fixture(self, gain):
        src, tgt, f = gain
        report = check_morphism(src, tgt, f)
        assert report.is_morphism
        assert report.simplicial_scope == "facets"
        assert image_world(src, tgt, f, "Y") == "Z"

    def test_identity(self, c3, c5):
        for m in (c3, c5):
            assert check_morphism(m, m, VertexMap.identity(m)).is_morphism

    def test_color_change(self, c1):
        mapping = {v: v for v in c1.complex.vertices}
        mapping["c2"] = "b1"
        report = check_morphism(c1, c1, VertexMap("c1", "c1", mapping))
        assert not report.color_preserving
        assert report.witnesses["color_preserving"]["vertex"] == "c2"

    def test_not_simplicial(self):
        src = PolychromaticModel.build({"a", "b"}, {"1": "a", "2": "b"}, [{"1", "2"}])
        tgt = PolychromaticModel.build({"a", "b"}, {"1": "a", "2": "b"}, [{"1"}, {"2"}])
        report = check_morphism(src, tgt, VertexMap.identity(src))
        assert not report.is_simplicial
        assert check_morphism(src, tgt, VertexMap.identity(src), exhaustive=True).simplicial_scope == "all-faces"

    def test_worlds_and_valuation(self, gain):
        src, tgt, _ = gain
        bad = VertexMap(src.name, tgt.name, {"1": "1", "2": "1", "3": "2"})
        report = check_morphism(src, tgt, bad)
        # X = {1,2} collapses onto {1}: a face of the target but not a world
        assert report.is_simplicial and report.color_preserving
        assert not report.worlds_to_worlds
        assert report.witnesses["worlds_to_worlds"] == {"world": "X", "image": ["1"]}

    def test_valuation_mismatch(self, gain):
        src, tgt, f = gain
        flipped = PolychromaticModel(tgt.complex, tgt.agents, tgt.worlds, {"X": ["p"], "Z": ["p"]},
                                     name=tgt.name)
        report = check_morphism(src, flipped, f)
        assert not report.valuation_preserving
        assert report.witnesses["valuation_preserving"]["world"] == "X"

    def test_partial_map(self, gain):
        src, tgt, _ = gain
        report = check_morphism(src, tgt, VertexMap(src.name, tgt.name, {"1": "1"}))
        assert not report.total and report.witnesses["total"]["unmapped"] == ["2", "3"]

    def test_map_file_paths(self, fixtures_path):
        src, tgt, f = load_map(fixtures_path / "identity.map.json")
        assert src.name == tgt.name == "c5" and check_morphism(src, tgt, f).is_morphism

    def test_generated_triples_are_morphisms(self):
        for src, tgt, f in TRIPLES:
            assert src.report.ok and tgt.report.ok
            assert check_morphism(src, tgt, f).is_morphism
            assert check_morphism(src, tgt, f, exhaustive=True).is_morphism


class TestIndistTransfer:
    def test_fixture(self, gain):
        src, tgt, f = gain
        assert respects_indist(src, tgt, f, {"a"}, "X", "Y")
        assert respects_indist(src, tgt, f, {"a"}, "X", "X")

    def test_generated(self):
        for src, tgt, f in TRIPLES:
            for g in all_groups(src.agents):
                for x, y in itertools.product(src.worlds, repeat=2):
                    assert respects_indist(src, tgt, f, g, x, y)


class TestPreservation:
    def test_atom_and_true(self, gain):
        src, tgt, f = gain
        assert check_positive_preservation(src, tgt, f, parse("p")).ok
        rep = check_positive_preservation(src, tgt, f, TOP)
        assert rep.ok and rep.checked == 2

    def test_rejects_non_positive(self, gain):
        src, tgt, f = gain
        with pytest.raises(PreconditionError, match=r"Sb\[a\] p"):
            check_positive_preservation(src, tgt, f, parse("K{a} Sb[a] p"))

    def test_requires_morphism(self, c1):
        mapping = {v: v for v in c1.complex.vertices}
        mapping["c2"] = "b1"
        with pytest.raises(PreconditionError):
            check_positive_preservation(c1, c1, VertexMap("c1", "c1", mapping), TOP)

    def test_safe_belief_not_preserved(self, gain):
        src, tgt, f = gain
        sb = parse("Sb[a] p")
        assert evaluate(tgt, "Z", sb) and not evaluate(src, "Y", sb)

    def test_generated(self):
        for i, (src, tgt, f) in enumerate(TRIPLES):
            for phi in gen_formulas(GenParams(seed=i), ["p", "q"], src.agents, 40, positive=True):
                assert check_positive_preservation(src, tgt, f, phi, assume_morphism=True).ok


class TestBeliefGain:
    def test_fixture(self, gain):
        assert belief_gain_witness(*gain, "p") == ("Y", "a")

    def test_identity(self, c5):
        assert belief_gain_witness(c5, c5, VertexMap.identity(c5), "p") is None

    def test_absent_atom(self, gain):
        assert belief_gain_witness(*gain, "zzz") is None
