import numpy as np
import pytest

from oddgirth.errors import CapacityExceeded, InvalidParameter
from oddgirth.graph import (
    INFINITE,
    Graph,
    OddGirth,
    connected_components,
    d2_oracle,
    disjoint_union,
    generate_cayley_f2,
    generate_complete,
    generate_cycle,
    generate_folded_cube,
    generate_hypercube,
    is_independent_set,
    odd_girth,
    random_connected_graph,
    random_graph,
    two_coloring,
)

from conftest import brute_force_max_cut, brute_force_odd_girth, exhaustive_is_bipartite


class TestGraph:
    def test_rejects_asymmetric(self):
        with pytest.raises(InvalidParameter):
            Graph([[0, 1], [0, 0]])

    def test_rejects_loops(self):
        with pytest.raises(InvalidParameter):
            Graph([[1]])

    def test_immutable(self):
        g = generate_cycle(4)
        with pytest.raises(ValueError):
            g.adjacency[0, 2] = True

    def test_edge_count_is_half_degree_sum(self, rng):
        for _ in range(20):
            g = random_graph(15, 0.3, rng)
            assert 2 * g.edge_count == g.degrees().sum()
            assert len(g.edges()) == g.edge_count

    def test_equality_and_hash(self):
        assert generate_cycle(5) == Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        assert hash(generate_cycle(5)) == hash(generate_cycle(5))
        assert generate_cycle(5) != generate_cycle(6)


class TestGenerators:
    def test_triangle(self):
        g = generate_cycle(3)
        assert g.edge_count == 3
        assert odd_girth(g) == OddGirth(3)

    @pytest.mark.parametrize("k", range(3, 16))
    def test_cycles(self, k):
        g = generate_cycle(k)
        assert (g.degrees() == 2).all()
        assert odd_girth(g) == (OddGirth(k) if k % 2 else INFINITE)

    def test_cycle_rejects_small(self):
        with pytest.raises(InvalidParameter):
            generate_cycle(2)

    @pytest.mark.parametrize("n, edges", [(1, 0), (4, 6), (10, 45)])
    def test_complete(self, n, edges):
        g = generate_complete(n)
        assert g.edge_count == edges

    def test_k4_odd_girth(self):
        assert odd_girth(generate_complete(4)).value == 3

    def test_cayley_square(self):
        assert generate_cayley_f2(2, [1, 2]) == generate_cycle(4).subgraph([0, 1, 3, 2])

    def test_cayley_rejects_zero(self):
        with pytest.raises(InvalidParameter):
            generate_cayley_f2(3, [0, 1])

    def test_cayley_rejects_out_of_space(self):
        with pytest.raises(InvalidParameter):
            generate_cayley_f2(2, [4])

    def test_q3_bipartite(self):
        g = generate_cayley_f2(3, [1, 2, 4])
        assert g == generate_hypercube(3)
        assert odd_girth(g).is_infinite

    def test_folded_7_cube(self, folded7):
        assert folded7.n == 64
        assert folded7.edge_count == 224
        assert (folded7.degrees() == 7).all()
        assert odd_girth(folded7) == OddGirth(7)

    def test_folded_7_cube_explicit_7_cycle(self, folded7):
        # 0 ~ e1 ~ e1+e2 ~ ... ~ e1+...+e6 ~ 0
        walk = [sum(1 << j for j in range(i)) for i in range(7)]
        for a, b in zip(walk, walk[1:] + walk[:1]):
            assert folded7.adjacency[a, b]
        assert len(set(walk)) == 7

    def test_folded_3_cube_is_k4(self):
        assert generate_folded_cube(3) == generate_complete(4)

    def test_folded_4_cube_is_k44(self):
        g = generate_folded_cube(4)
        assert g.n == 8 and g.edge_count == 16
        colors = two_coloring(g)
        assert colors is not None and sum(colors) == 4
        assert exhaustive_is_bipartite(g)

    def test_folded_cube_rejects_small(self):
        with pytest.raises(InvalidParameter):
            generate_folded_cube(1)


class TestOddGirth:
    def test_infinite_ordering(self):
        assert OddGirth(7) < INFINITE
        assert OddGirth(5) < OddGirth(7)
        assert INFINITE.at_least(101)
        assert not OddGirth(5).at_least(7)

    def test_no_arithmetic(self):
        with pytest.raises(TypeError):
            INFINITE + 1

    @pytest.mark.parametrize("bad", [1, 2, 4])
    def test_rejects_invalid_values(self, bad):
        with pytest.raises(InvalidParameter):
            OddGirth(bad)

    def test_nine_cycle(self):
        assert odd_girth(generate_cycle(9)).value == 9

    def test_empty_graph(self):
        assert odd_girth(Graph(np.zeros((4, 4), bool))).is_infinite

    def test_matches_brute_force(self, rng):
        for _ in range(150):
            n = int(rng.integers(1, 11))
            g = random_graph(n, float(rng.uniform(0.1, 0.6)), rng)
            expected = brute_force_odd_girth(g)
            got = odd_girth(g)
            assert got.value == expected
            assert got.is_infinite == exhaustive_is_bipartite(g)

    def test_disjoint_union_takes_minimum(self):
        g = disjoint_union(generate_cycle(9), generate_cycle(5), generate_cycle(4))
        assert odd_girth(g).value == 5


class TestComponents:
    def test_single_cycle(self):
        assert connected_components(generate_cycle(5)) == [[0, 1, 2, 3, 4]]

    def test_union(self):
        comps = connected_components(disjoint_union(generate_cycle(3), generate_cycle(5)))
        assert sorted(len(c) for c in comps) == [3, 5]

    def test_empty_graph(self):
        assert connected_components(Graph(np.zeros((4, 4), bool))) == [[0], [1], [2], [3]]


class TestIndependentSet:
    def test_c5_alternate(self):
        assert is_independent_set(generate_cycle(5), [0, 2])

    def test_k4_pairs(self):
        g = generate_complete(4)
        assert not any(is_independent_set(g, [u, v]) for u in range(4) for v in range(u + 1, 4))

    def test_neighbourhoods_in_triangle_free(self, folded7):
        assert all(is_independent_set(folded7, folded7.neighbors(u)) for u in range(64))

    def test_out_of_range(self):
        with pytest.raises(InvalidParameter):
            is_independent_set(generate_cycle(5), [7])


class TestD2:
    def test_c5(self):
        assert d2_oracle(generate_cycle(5)) == 1

    def test_k4(self):
        assert d2_oracle(generate_complete(4)) == 2

    def test_bipartite(self, folded7):
        assert d2_oracle(generate_hypercube(4)) == 0
        assert d2_oracle(generate_cycle(10)) == 0

    def test_matches_brute_force(self, rng):
        for _ in range(40):
            g = random_graph(int(rng.integers(2, 10)), 0.5, rng)
            assert d2_oracle(g) == g.edge_count - brute_force_max_cut(g)

    def test_capacity_guard(self):
        with pytest.raises(CapacityExceeded):
            d2_oracle(generate_cycle(25))

    def test_k7(self):
        # max cut of K_7 is 3 * 4 = 12 of 21 edges
        assert d2_oracle(generate_complete(7)) == 9

    def test_connected_random_graph_helper(self, rng):
        for _ in range(20):
            assert len(connected_components(random_connected_graph(12, 0.05, rng))) == 1
