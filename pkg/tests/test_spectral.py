import math

import numpy as np
import pytest

from oddgirth.errors import InvalidParameter
from oddgirth.graph import (
    Graph,
    disjoint_union,
    folded_cube_generators,
    generate_cayley_f2,
    generate_complete,
    generate_cycle,
    generate_folded_cube,
    generate_hypercube,
    generate_path,
    generate_star,
    odd_girth,
    random_connected_graph,
    random_graph,
    unit_vectors,
)
from oddgirth.spectral import (
    HIGMAN_SIMS,
    SrgParams,
    adjacency_spectrum,
    cayley_f2_spectrum,
    cycle_spectrum,
    perron_vector,
    signless_laplacian_spectrum,
    srg_spectrum,
)


class TestAdjacencySpectrum:
    def test_c5(self):
        ev = adjacency_spectrum(generate_cycle(5)).eigenvalues
        expected = sorted([2, *[2 * math.cos(2 * math.pi / 5)] * 2, *[2 * math.cos(4 * math.pi / 5)] * 2], reverse=True)
        assert np.allclose(ev, expected, atol=1e-12)
        assert ev[0] + ev[-1] == pytest.approx(2 * (1 - math.cos(math.pi / 5)), abs=1e-12)

    def test_k4(self):
        assert np.allclose(adjacency_spectrum(generate_complete(4)).eigenvalues, [3, -1, -1, -1])

    def test_k100_ratio(self):
        sp = adjacency_spectrum(generate_complete(100))
        assert (sp.largest + sp.smallest) / 100 == pytest.approx(0.98, abs=1e-12)

    def test_folded_7_cube_extremes(self, folded7):
        sp = adjacency_spectrum(folded7)
        assert sp.largest == pytest.approx(7, abs=1e-9)
        assert sp.smallest == pytest.approx(-5, abs=1e-9)

    def test_empty_rejected(self):
        with pytest.raises(InvalidParameter):
            adjacency_spectrum(Graph(np.zeros((0, 0), bool)))

    def test_trace_identities(self, rng):
        for _ in range(30):
            g = random_graph(int(rng.integers(1, 51)), float(rng.random()), rng)
            ev = adjacency_spectrum(g).eigenvalues
            assert len(ev) == g.n
            assert abs(ev.sum()) <= 1e-8
            assert abs((ev**2).sum() - 2 * g.edge_count) <= 1e-6

    def test_lambda1_at_least_average_degree(self, rng):
        graphs = [random_graph(int(rng.integers(1, 30)), 0.3, rng) for _ in range(30)]
        graphs += [generate_cycle(7), generate_folded_cube(7), generate_star(5)]
        for g in graphs:
            assert adjacency_spectrum(g).largest >= 2 * g.edge_count / g.n - 1e-9

    @pytest.mark.parametrize("k", [7, 9, 11, 13, 15])
    def test_odd_traces_vanish_below_odd_girth(self, k):
        g = generate_cycle(k)
        ev = adjacency_spectrum(g).eigenvalues
        for ell in range((k - 1) // 2):
            p = 2 * ell + 1
            assert abs((ev**p).sum()) <= 1e-5 * g.n * ev[0] ** p
        # at p = k the trace counts the 2k closed walks around the cycle
        assert (ev**k).sum() == pytest.approx(2 * k, rel=1e-9)

    def test_cycle_closed_form(self):
        for k in range(3, 20):
            assert np.allclose(cycle_spectrum(k).eigenvalues, adjacency_spectrum(generate_cycle(k)).eigenvalues, atol=1e-10)

    def test_multiplicities(self, folded7):
        mult = adjacency_spectrum(folded7).multiplicities()
        assert [(round(v), m) for v, m in mult] == [(7, 1), (3, 21), (-1, 35), (-5, 7)]


class TestSignlessLaplacian:
    def test_c4_zero(self):
        assert signless_laplacian_spectrum(generate_cycle(4)).smallest == pytest.approx(0, abs=1e-12)

    def test_k3(self):
        assert np.allclose(signless_laplacian_spectrum(generate_complete(3)).eigenvalues, [4, 1, 1])

    def test_regular_graphs_match_adjacency(self, folded7):
        for g in [generate_cycle(5), generate_cycle(9), folded7, generate_complete(6), generate_hypercube(4)]:
            a = adjacency_spectrum(g)
            assert signless_laplacian_spectrum(g).smallest == pytest.approx(a.largest + a.smallest, abs=1e-8)

    def test_zero_iff_bipartite_component(self, rng):
        for _ in range(40):
            g = random_graph(int(rng.integers(1, 12)), 0.35, rng)
            from oddgirth.graph import connected_components

            has_bip = any(odd_girth(g.subgraph(c)).is_infinite for c in connected_components(g))
            qn = signless_laplacian_spectrum(g).smallest
            assert (abs(qn) < 1e-9) == has_bip
            assert qn > -1e-9


class TestPerron:
    def test_regular_is_constant(self, folded7):
        for g in [folded7, generate_cycle(7), generate_hypercube(3)]:
            nu = perron_vector(g)
            assert np.allclose(nu.entries, 1 / math.sqrt(g.n), atol=1e-10)

    def test_path3(self):
        nu = perron_vector(generate_path(3))
        assert np.allclose(nu.entries, np.array([1, math.sqrt(2), 1]) / 2, atol=1e-10)
        assert nu.eigenvalue == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_star(self):
        nu = perron_vector(generate_star(4))
        assert nu.eigenvalue == pytest.approx(2, abs=1e-12)
        assert nu[0] == pytest.approx(math.sqrt(0.5), abs=1e-10)
        assert np.allclose(nu.entries[1:], math.sqrt(1 / 8), atol=1e-10)

    def test_rejects_disconnected(self):
        with pytest.raises(InvalidParameter):
            perron_vector(disjoint_union(generate_cycle(3), generate_cycle(3)))

    def test_random_graphs(self, rng):
        for _ in range(60):
            g = random_connected_graph(int(rng.integers(1, 25)), float(rng.uniform(0, 0.4)), rng)
            nu = perron_vector(g)
            a = g.adjacency_matrix()
            lam1 = adjacency_spectrum(g).largest
            assert (nu.entries > 0).all()
            assert nu.norm == pytest.approx(1, abs=1e-12)
            assert np.linalg.norm(a @ nu.entries - lam1 * nu.entries) <= 1e-8
            # oracle: LAPACK eigenvector
            w, v = np.linalg.eigh(a)
            ref = np.abs(v[:, -1])
            assert np.allclose(nu.entries, ref, atol=1e-8)

    def test_bipartite_does_not_oscillate(self):
        nu = perron_vector(generate_path(6))
        assert (nu.entries > 0).all()


class TestCayleySpectrum:
    def test_single_edge(self):
        assert list(cayley_f2_spectrum(1, [1]).eigenvalues) == [1, -1]

    def test_folded_7_cube_formula(self, folded7):
        sp = cayley_f2_spectrum(6, folded_cube_generators(7))
        # weight-w character: (6 - 2w) + (-1)^w
        expected = []
        for x in range(64):
            w = bin(x).count("1")
            expected.append((6 - 2 * w) + (-1) ** w)
        assert np.allclose(sp.eigenvalues, sorted(expected, reverse=True))
        assert sp.smallest == -5
        assert sum(1 for v in sp.eigenvalues if v == -5) == 7
        assert np.allclose(sp.eigenvalues, adjacency_spectrum(folded7).eigenvalues, atol=1e-8)

    @pytest.mark.parametrize("d", range(1, 7))
    def test_hypercube(self, d):
        sp = cayley_f2_spectrum(d, unit_vectors(d))
        expected = sorted((d - 2 * w for w in range(d + 1) for _ in range(math.comb(d, w))), reverse=True)
        assert np.allclose(sp.eigenvalues, expected)
        assert np.allclose(sp.eigenvalues, adjacency_spectrum(generate_hypercube(d)).eigenvalues, atol=1e-8)

    def test_random_generating_sets(self, rng):
        for _ in range(25):
            m = int(rng.integers(1, 7))
            gens = sorted(set(int(x) for x in rng.integers(1, 1 << m, size=int(rng.integers(1, 5)))))
            dense = adjacency_spectrum(generate_cayley_f2(m, gens)).eigenvalues
            assert np.allclose(cayley_f2_spectrum(m, gens).eigenvalues, dense, atol=1e-8)

    def test_rejects_zero(self):
        with pytest.raises(InvalidParameter):
            cayley_f2_spectrum(3, [0])


class TestSrg:
    def test_higman_sims(self):
        sp = srg_spectrum(HIGMAN_SIMS)
        assert (sp.k, sp.theta, sp.tau) == (22, 2, -8)
        assert (sp.f, sp.g) == (77, 22)
        assert sp.ratio(100) == pytest.approx(0.14, abs=1e-15)

    def test_c5(self):
        sp = srg_spectrum(SrgParams(5, 2, 0, 1))
        dense = adjacency_spectrum(generate_cycle(5)).multiplicities()
        assert [v for v, _ in dense] == pytest.approx([sp.k, sp.theta, sp.tau], abs=1e-12)
        assert sp.theta == pytest.approx((math.sqrt(5) - 1) / 2)

    def test_petersen(self):
        sp = srg_spectrum(SrgParams(10, 3, 0, 1))
        assert (sp.k, sp.theta, sp.tau, sp.f, sp.g) == (3, 1, -2, 5, 4)

    def test_k4_degenerate(self):
        sp = srg_spectrum(SrgParams(4, 3, 2, 0))
        assert sp.eigenvalues() == [(3, 1), (-1, 3)]
        assert sp.smallest == adjacency_spectrum(generate_complete(4)).smallest

    def test_infeasible(self):
        with pytest.raises(InvalidParameter):
            SrgParams(10, 3, 0, 2)
