import pytest
from hypothesis import given, settings

from src.canonical import canonical_key
from src.chords import (
    FOUR_T_SIGNS,
    REP2,
    ChordDiagram,
    canonical_rotation,
    enumerate_diagrams,
    generate_all_4t,
    generate_chord_4t,
    intersection_graph,
    product,
    product_at,
    sl2_trace_oracle,
    w_at_c38,
)
from src.config import GuardsConfig
from src.dyadic import MINUS_ONE_EIGHTH, THREE_EIGHTHS, ZERO, Dyadic
from src.errors import InvalidChordError, SizeGuardError
from src.graph import complete, empty
from src.invariants import phi_eulerian
from tests.strategies import chord_diagrams

ROTATION_CLASSES = {1: 1, 2: 2, 3: 5, 4: 18, 5: 105}


class TestChordDiagram:
    def test_words(self):
        assert ChordDiagram.from_word("abab").pairing == (2, 3, 0, 1)
        assert ChordDiagram.from_word("baab").to_word() == "abba"
        assert str(ChordDiagram.from_chords([(0, 3), (1, 2)])) == "abba"
        assert ChordDiagram.empty().order == 0

    @pytest.mark.parametrize("word", ["a", "abc", "aaab", "abcab"])
    def test_bad_words(self, word):
        with pytest.raises(InvalidChordError):
            ChordDiagram.from_word(word)

    def test_bad_pairings(self):
        with pytest.raises(InvalidChordError):
            ChordDiagram.from_pairing((1, 0, 2))
        with pytest.raises(InvalidChordError):
            ChordDiagram.from_pairing((1, 2, 0, 3))
        with pytest.raises(InvalidChordError):
            ChordDiagram.from_chords([(0, 1), (1, 2)])

    def test_delete_chord(self):
        assert ChordDiagram.from_word("abab").delete_chord(0).to_word() == "aa"
        assert ChordDiagram.from_word("abcabc").delete_chord(1).to_word() == "abab"
        with pytest.raises(InvalidChordError):
            ChordDiagram.from_word("aa").delete_chord(1)

    @given(chord_diagrams())
    def test_full_rotation_is_identity(self, diagram):
        assert diagram.rotate(len(diagram.pairing)) == diagram

    @given(chord_diagrams(min_order=1))
    def test_rotation_preserves_intersection_graph(self, diagram):
        assert canonical_key(intersection_graph(diagram.rotate(1))) == \
            canonical_key(intersection_graph(diagram))

    def test_canonical_rotation(self):
        assert canonical_rotation(ChordDiagram.from_word("abba")).to_word() == "aabb"


class TestIntersectionGraph:
    def test_small_diagrams(self):
        assert intersection_graph(ChordDiagram.from_word("abab")) == complete(2)
        assert intersection_graph(ChordDiagram.from_word("aabb")) == empty(2)
        assert intersection_graph(ChordDiagram.from_word("abcabc")) == complete(3)

    def test_leaves(self):
        # a crosses b, b crosses c, a and c parallel
        diagram = ChordDiagram.from_word("abacbc")
        assert intersection_graph(diagram).edges() == [(0, 1), (1, 2)]
        assert diagram.leaves() == [0, 2]


class TestEnumeration:
    @pytest.mark.parametrize("n,count", sorted(ROTATION_CLASSES.items()))
    def test_rotation_class_counts(self, n, count):
        assert len(list(enumerate_diagrams(n))) == count

    def test_representatives_are_canonical(self):
        for diagram in enumerate_diagrams(4):
            assert canonical_rotation(diagram) == diagram

    def test_guard(self):
        with pytest.raises(SizeGuardError):
            list(enumerate_diagrams(3, guards=GuardsConfig(diagrams_max_chords=2)))


class TestWeightSystem:
    def test_casimir(self):
        assert REP2.casimir_check()

    def test_small_values(self):
        assert w_at_c38(ChordDiagram.empty()) == Dyadic(1)
        assert sl2_trace_oracle(ChordDiagram.from_word("aa")) == Dyadic(3, -2)
        assert w_at_c38(ChordDiagram.from_word("aa")) == THREE_EIGHTHS
        assert w_at_c38(ChordDiagram.from_word("abab")) == Dyadic(-3, -6)
        assert w_at_c38(ChordDiagram.from_word("aabb")) == Dyadic(9, -6)

    def test_oracle_guard(self):
        with pytest.raises(SizeGuardError):
            w_at_c38(ChordDiagram.from_word("abab"), guards=GuardsConfig(oracle_max_chords=1))

    @settings(max_examples=60, deadline=None)
    @given(chord_diagrams(max_order=5))
    def test_equals_phi_of_intersection_graph(self, diagram):
        assert w_at_c38(diagram) == phi_eulerian(intersection_graph(diagram))

    @settings(max_examples=40, deadline=None)
    @given(chord_diagrams(max_order=3), chord_diagrams(max_order=2))
    def test_product_is_multiplicative(self, d1, d2):
        assert w_at_c38(product(d1, d2)) == w_at_c38(d1) * w_at_c38(d2)

    def test_product_independent_of_break_points(self):
        d1 = ChordDiagram.from_word("abab")
        d2 = ChordDiagram.from_word("abcacb")
        expected = w_at_c38(d1) * w_at_c38(d2)
        for b1 in range(4):
            for b2 in range(6):
                assert w_at_c38(product_at(d1, d2, b1, b2)) == expected

    @pytest.mark.parametrize("order", [1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_leaf_chord_factor(self, order):
        for diagram in enumerate_diagrams(order):
            w = w_at_c38(diagram)
            for leaf in diagram.leaves():
                assert w == MINUS_ONE_EIGHTH * w_at_c38(diagram.delete_chord(leaf))


class TestFourT:
    def test_signs(self):
        assert FOUR_T_SIGNS == (1, -1, 1, -1)

    def test_cannot_slide_past_itself(self):
        with pytest.raises(InvalidChordError):
            generate_chord_4t(ChordDiagram.from_word("aa"), 0, 0)
        with pytest.raises(InvalidChordError):
            generate_chord_4t(ChordDiagram.from_word("abab"), 0, 2)

    def test_quadruple_shape(self):
        terms = generate_chord_4t(ChordDiagram.from_word("abab"), 0, 0)
        assert [sign for sign, _ in terms] == list(FOUR_T_SIGNS)
        assert all(d.order == 2 for _, d in terms)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_weight_and_phi_vanish(self, n):
        for diagram in enumerate_diagrams(n):
            for chord, endpoint, terms in generate_all_4t(diagram):
                w_sum = ZERO
                phi_sum = ZERO
                for sign, term in terms:
                    w_sum = w_sum + sign * w_at_c38(term)
                    phi_sum = phi_sum + sign * phi_eulerian(intersection_graph(term))
                assert w_sum == ZERO, (diagram.to_word(), chord, endpoint)
                assert phi_sum == ZERO, (diagram.to_word(), chord, endpoint)
