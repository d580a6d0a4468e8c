"""PD parsing, Kauffman states, adequacy, mirroring and cabling.

Frozen circle counts below were computed by hand by tracing slot joins:
for the table trefoil the all-A state has 2 circles and the all-B state 3.
"""
import itertools

import pytest

from skeinlab.diagram import (
    LinkDiagram,
    MalformedPDError,
    all_a_state,
    all_b_state,
    apply_state,
    cable,
    circle_count,
    is_a_adequate,
    is_adequate,
    is_alternating,
    is_b_adequate,
    mirror,
    parse_pd,
)

TREFOIL = "X 1 4 2 5 / X 3 6 4 1 / X 5 2 6 3"
HOPF = "X 4 1 3 2 / X 2 3 1 4"
FIG8 = "X 4 2 5 1 / X 8 6 1 5 / X 6 3 7 4 / X 2 7 3 8"


def trefoil():
    return parse_pd(TREFOIL, name="3_1")


class TestParsing:
    def test_parse_round_shape(self):
        d = trefoil()
        assert d.crossing_count == 3
        assert d.arcs == frozenset(range(1, 7))
        assert d.free_loops == 0

    def test_parse_newline_and_comma_forms(self):
        d = parse_pd("X 1,4,2,5\nX 3,6,4,1\nX 5,2,6,3")
        assert d == trefoil()

    def test_parse_loops(self):
        d = parse_pd("O / O")
        assert d.crossing_count == 0
        assert d.free_loops == 2
        assert d.component_count == 2

    def test_empty_input_is_empty_diagram(self):
        d = parse_pd("")
        assert d.crossing_count == 0 and d.free_loops == 0

    def test_arc_must_appear_twice(self):
        with pytest.raises(MalformedPDError):
            parse_pd("X 1 2 3 4")

    def test_malformed_entries(self):
        with pytest.raises(MalformedPDError):
            parse_pd("X 1 2 3")
        with pytest.raises(MalformedPDError):
            parse_pd("Y 1 2 2 1")
        with pytest.raises(MalformedPDError):
            parse_pd("X a b b a")

    def test_crossing_tuple_rotation_by_two_is_same_diagram(self):
        assert parse_pd("X 2 1 1 2") == parse_pd("X 1 2 2 1")


class TestComponents:
    def test_trefoil_is_a_knot(self):
        assert trefoil().component_count == 1

    def test_hopf_link_has_two(self):
        assert parse_pd(HOPF).component_count == 2

    def test_figure_eight_is_a_knot(self):
        assert parse_pd(FIG8).component_count == 1


class TestStates:
    def test_trefoil_extreme_states(self):
        d = trefoil()
        assert circle_count(d, all_a_state(d)) == 2
        assert circle_count(d, all_b_state(d)) == 3

    def test_state_graph_edge_count(self):
        d = trefoil()
        g = apply_state(d, all_a_state(d))
        assert len(g.edges) == d.crossing_count

    def test_one_flip_changes_circles_by_one(self):
        for text in (TREFOIL, HOPF, FIG8):
            d = parse_pd(text)
            k = d.crossing_count
            for state in itertools.product("AB", repeat=k):
                c = circle_count(d, state)
                for i in range(k):
                    flipped = list(state)
                    flipped[i] = "B" if state[i] == "A" else "A"
                    assert abs(circle_count(d, flipped) - c) == 1

    def test_extreme_state_sum_on_reduced_alternating(self):
        # |s_A| + |s_B| = k + 2 on reduced alternating diagrams
        for text in (TREFOIL, HOPF, FIG8):
            d = parse_pd(text)
            total = circle_count(d, all_a_state(d)) + circle_count(d, all_b_state(d))
            assert total == d.crossing_count + 2

    def test_state_validation(self):
        d = trefoil()
        with pytest.raises(ValueError):
            apply_state(d, ("A", "B"))
        with pytest.raises(ValueError):
            apply_state(d, ("A", "B", "X"))

    def test_free_loops_count_as_circles(self):
        d = parse_pd("O / X 1 2 2 1")
        assert circle_count(d, ("A",)) == 3


class TestPredicates:
    def test_fixture_diagrams_alternate(self):
        for text in (TREFOIL, HOPF, FIG8):
            assert is_alternating(parse_pd(text))

    def test_flipping_one_crossing_kills_alternation(self):
        # rotate one tuple by a single position: same shadow, wrong over/under
        d = parse_pd("X 4 2 5 1 / X 3 6 4 1 / X 5 2 6 3")
        assert not is_alternating(d)

    def test_zero_crossing_diagrams_alternate(self):
        assert is_alternating(parse_pd("O"))
        assert is_alternating(parse_pd(""))

    def test_fixtures_adequate(self):
        for text in (TREFOIL, HOPF, FIG8):
            assert is_adequate(parse_pd(text))

    def test_nugatory_kink_fails_exactly_one_adequacy(self):
        curl = parse_pd("X 1 1 2 2")
        assert not is_a_adequate(curl)
        assert is_b_adequate(curl)
        other = parse_pd("X 1 2 2 1")
        assert is_a_adequate(other)
        assert not is_b_adequate(other)

    def test_kink_states(self):
        curl = parse_pd("X 1 1 2 2")
        assert circle_count(curl, ("A",)) == 1
        assert circle_count(curl, ("B",)) == 2


class TestMirror:
    def test_involution(self):
        for text in (TREFOIL, HOPF, FIG8):
            d = parse_pd(text)
            assert mirror(mirror(d)) == d

    def test_mirror_swaps_smoothing_roles(self):
        for text in (TREFOIL, HOPF, FIG8):
            d = parse_pd(text)
            md = mirror(d)
            assert circle_count(md, all_a_state(md)) == circle_count(d, all_b_state(d))
            assert circle_count(md, all_b_state(md)) == circle_count(d, all_a_state(d))

    def test_mirror_swaps_adequacy_sides(self):
        curl = parse_pd("X 1 1 2 2")
        assert is_a_adequate(mirror(curl)) and not is_b_adequate(mirror(curl))

    def test_mirror_preserves_alternation(self):
        for text in (TREFOIL, HOPF, FIG8):
            assert is_alternating(mirror(parse_pd(text)))


class TestCable:
    def test_crossing_and_loop_counts(self):
        d = trefoil()
        c2 = cable(d, 2)
        assert c2.crossing_count == 12
        assert cable(d, 3).crossing_count == 27
        assert cable(parse_pd("O"), 4).free_loops == 4

    def test_cable_component_count(self):
        assert cable(trefoil(), 2).component_count == 2
        assert cable(trefoil(), 3).component_count == 3
        assert cable(parse_pd(HOPF), 2).component_count == 4

    def test_one_cable_preserves_all_state_circles(self):
        d = trefoil()
        c1 = cable(d, 1)
        assert c1.crossing_count == 3
        for state in itertools.product("AB", repeat=3):
            assert circle_count(c1, state) == circle_count(d, state)

    def test_extreme_states_of_cable_are_parallel_copies(self):
        # smoothing every grid crossing the same way cables each circle
        for text in (TREFOIL, HOPF, FIG8):
            d = parse_pd(text)
            for m in (2, 3):
                cm = cable(d, m)
                assert circle_count(cm, all_a_state(cm)) == m * circle_count(d, all_a_state(d))
                assert circle_count(cm, all_b_state(cm)) == m * circle_count(d, all_b_state(d))

    def test_cable_validates(self):
        with pytest.raises(ValueError):
            cable(trefoil(), 0)
