"""SIR computation, compatibility graphs, greedy selection, and the clique oracle."""

import math

import numpy as np
import pytest

from nearfield import (
    ConfigError,
    Model,
    NullChannelError,
    SirGraph,
    UserSet,
    build_graph,
    channel_vector,
    exact_max_clique,
    heuristic_select,
    normalized_channel_matrix,
    select_users,
    sir,
    sir_matrix_from_channels,
    z_axis_users,
)


def _fsum_sir(a, b):
    """Extended-precision oracle: |sum ghat_k* ghat_l|**-2 via math.fsum."""
    ah = a / np.linalg.norm(a)
    bh = b / np.linalg.norm(b)
    terms = np.conj(ah) * bh
    re = math.fsum(terms.real)
    im = math.fsum(terms.imag)
    return 1.0 / (re * re + im * im)


class TestSir:
    def test_identical_channels(self, small_array, medium01):
        # co-located users cannot be separated: 0 dB up to norm rounding
        g = channel_vector(small_array, np.array([0.0, 0.0, 0.4]), medium01, Model.NEAR)
        assert sir(g, g) >= 1.0
        assert sir(g, g) == pytest.approx(1.0, rel=1e-12)

    def test_orthogonal_channels(self):
        assert sir(np.array([1.0 + 0j, 0.0]), np.array([0.0, 1.0 + 0j])) == float("inf")

    def test_symmetry_bitwise(self, rng):
        for _ in range(200):
            a = rng.standard_normal(6) + 1j * rng.standard_normal(6)
            b = rng.standard_normal(6) + 1j * rng.standard_normal(6)
            assert sir(a, b) == sir(b, a)

    def test_lower_bound(self, rng):
        for _ in range(200):
            a = rng.standard_normal(8) + 1j * rng.standard_normal(8)
            b = rng.standard_normal(8) + 1j * rng.standard_normal(8)
            assert sir(a, b) >= 1.0

    def test_null_channel_rejected(self):
        with pytest.raises(NullChannelError):
            sir(np.zeros(3, dtype=complex), np.ones(3, dtype=complex))

    def test_length_mismatch(self):
        with pytest.raises(ConfigError):
            sir(np.ones(3, dtype=complex), np.ones(4, dtype=complex))

    def test_paper_scenario_against_fsum_oracle(self, paper_array, paper_medium):
        g1 = channel_vector(paper_array, np.array([0.0, 0.0, 0.1]), paper_medium, Model.NEAR)
        g2 = channel_vector(paper_array, np.array([0.0, 0.0, 10.0]), paper_medium, Model.NEAR)
        value = sir(g1, g2)
        assert value > 1.0
        assert value == pytest.approx(_fsum_sir(g1.entries, g2.entries), rel=1e-10)

    def test_random_channels_against_fsum_oracle(self, rng):
        for _ in range(50):
            a = rng.standard_normal(32) + 1j * rng.standard_normal(32)
            b = rng.standard_normal(32) + 1j * rng.standard_normal(32)
            assert sir(a, b) == pytest.approx(_fsum_sir(a, b), rel=1e-10)


class TestSirMatrix:
    def test_mirrored_and_unit_diagonal(self, rng):
        ghat = rng.standard_normal((6, 10)) + 1j * rng.standard_normal((6, 10))
        ghat /= np.linalg.norm(ghat, axis=1, keepdims=True)
        s = sir_matrix_from_channels(ghat)
        np.testing.assert_array_equal(s, s.T)
        np.testing.assert_array_equal(np.diag(s), np.ones(6))

    def test_matches_pairwise_sir(self, rng):
        ghat = rng.standard_normal((5, 12)) + 1j * rng.standard_normal((5, 12))
        ghat /= np.linalg.norm(ghat, axis=1, keepdims=True)
        s = sir_matrix_from_channels(ghat)
        for i in range(5):
            for j in range(i + 1, 5):
                assert s[i, j] == pytest.approx(sir(ghat[i], ghat[j]), rel=1e-12)


class TestUserSets:
    def test_z_axis_users_inclusive_endpoints(self):
        users = z_axis_users(5, 0.1, 10.0)
        assert users.k == 5
        np.testing.assert_allclose(users.positions[:, 2], [0.1, 2.575, 5.05, 7.525, 10.0])
        np.testing.assert_array_equal(users.positions[:, :2], np.zeros((5, 2)))

    def test_z_axis_users_validation(self):
        with pytest.raises(ConfigError):
            z_axis_users(0, 0.1, 10.0)
        with pytest.raises(ConfigError):
            z_axis_users(5, -1.0, 10.0)
        with pytest.raises(ConfigError):
            z_axis_users(5, 2.0, 2.0)

    def test_single_user_grid(self):
        users = z_axis_users(1, 0.5, 0.5)
        np.testing.assert_array_equal(users.positions, [[0.0, 0.0, 0.5]])

    def test_duplicate_positions_rejected(self):
        with pytest.raises(ConfigError, match="distinct"):
            UserSet(np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]]))


class TestBuildGraph:
    def test_single_user(self, small_array, medium01):
        graph = build_graph(z_axis_users(1, 0.5, 0.5), 18.0, small_array, medium01)
        assert graph.k == 1
        assert not graph.adjacency.any()

    def test_symmetric_false_diagonal(self, small_array, medium01):
        graph = build_graph(z_axis_users(6, 0.1, 5.0), 6.0, small_array, medium01)
        np.testing.assert_array_equal(graph.adjacency, graph.adjacency.T)
        assert not np.diag(graph.adjacency).any()

    def test_near_one_threshold_gives_complete_graph(self, paper_array, paper_medium):
        # distinct positions have SIR strictly above 1, so gamma -> 1+ keeps all edges
        users = z_axis_users(6, 0.1, 5.0)
        graph = build_graph(users, 1e-9, paper_array, paper_medium)
        off_diag = ~np.eye(6, dtype=bool)
        assert graph.adjacency[off_diag].all()

    def test_huge_threshold_gives_empty_graph(self, paper_array, paper_medium):
        graph = build_graph(z_axis_users(6, 0.1, 5.0), 200.0, paper_array, paper_medium)
        assert not graph.adjacency.any()

    def test_edges_match_sir_threshold(self, paper_array, paper_medium):
        users = z_axis_users(8, 0.1, 8.0)
        gamma_db = 15.0
        graph = build_graph(users, gamma_db, paper_array, paper_medium)
        ghat = normalized_channel_matrix(users, paper_array, paper_medium)
        s = sir_matrix_from_channels(ghat)
        gamma = 10 ** (gamma_db / 10)
        for k in range(8):
            for l in range(k + 1, 8):
                assert graph.adjacency[k, l] == (s[k, l] > gamma)


class TestSelection:
    def test_hand_traced_three_users(self):
        # only the closest/farthest pair is compatible: pick u0, drop u1, then pick u2
        s = np.array([[1.0, 10.0, 100.0], [10.0, 1.0, 5.0], [100.0, 5.0, 1.0]])
        assert select_users(s, np.array([1.0, 2.0, 3.0]), gamma=50.0) == [0, 2]

    def test_tie_breaks_by_lowest_index(self):
        s = np.full((3, 3), 100.0)
        np.fill_diagonal(s, 1.0)
        assert select_users(s, np.array([2.0, 2.0, 2.0]), gamma=50.0) == [0, 1, 2]

    def test_sub_unity_threshold_selects_everyone(self):
        s = np.full((4, 4), 1.5)
        np.fill_diagonal(s, 1.0)
        assert select_users(s, np.arange(4.0), gamma=0.5) == [0, 1, 2, 3]

    def test_selection_is_clique(self, paper_array, paper_medium):
        users = z_axis_users(40, 0.1, 10.0)
        gamma_db = 15.0
        result = heuristic_select(users, gamma_db, paper_array, paper_medium)
        gamma = 10 ** (gamma_db / 10)
        sel = result.selected
        assert len(sel) >= 1
        for i, a in enumerate(sel):
            for b in sel[i + 1 :]:
                assert result.sir_matrix[a, b] > gamma

    def test_selection_matches_graph_clique(self, paper_array, paper_medium):
        users = z_axis_users(20, 0.1, 10.0)
        result = heuristic_select(users, 12.0, paper_array, paper_medium)
        graph = build_graph(users, 12.0, paper_array, paper_medium)
        sel = result.selected
        for i, a in enumerate(sel):
            for b in sel[i + 1 :]:
                assert graph.adjacency[a, b]

    def test_monotone_in_gamma(self, paper_array, paper_medium):
        users = z_axis_users(30, 0.1, 10.0)
        sizes = [
            len(heuristic_select(users, gamma_db, paper_array, paper_medium).selected)
            for gamma_db in (0.0, 6.0, 12.0, 18.0, 24.0)
        ]
        assert sizes == sorted(sizes, reverse=True)

    def test_far_model_on_common_ray_selects_one(self, paper_array, paper_medium):
        users = z_axis_users(10, 0.1, 10.0)
        result = heuristic_select(users, 18.0, paper_array, paper_medium, Model.FAR)
        assert result.selected == [0]
        # on a shared ray the far model cannot separate users at all
        off_diag = ~np.eye(10, dtype=bool)
        np.testing.assert_allclose(result.sir_matrix[off_diag], 1.0, rtol=1e-9)

    def test_selection_order_walks_outward(self, paper_array, paper_medium):
        users = z_axis_users(50, 0.1, 10.0)
        result = heuristic_select(users, 18.0, paper_array, paper_medium)
        z = users.positions[result.selected, 2]
        assert np.all(np.diff(z) > 0)


def _random_graph(rng, k, p):
    adjacency = rng.random((k, k)) < p
    adjacency = np.triu(adjacency, 1)
    adjacency = adjacency | adjacency.T
    return SirGraph(k, adjacency, gamma=10.0)


def _graph_sir_matrix(graph):
    """Synthetic SIR values consistent with the graph at its threshold."""
    s = np.where(graph.adjacency, 2 * graph.gamma, 0.5 * graph.gamma)
    np.fill_diagonal(s, 1.0)
    return s


class TestExactMaxClique:
    def test_triangle(self):
        adjacency = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=bool)
        assert exact_max_clique(SirGraph(3, adjacency, 10.0)) == [0, 1, 2]

    def test_edgeless(self):
        assert len(exact_max_clique(SirGraph(5, np.zeros((5, 5), bool), 10.0))) == 1

    def test_known_instance(self):
        # two triangles sharing no vertex plus a pendant 4-clique
        adjacency = np.zeros((7, 7), dtype=bool)
        for a, b in [(0, 1), (1, 2), (0, 2), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]:
            adjacency[a, b] = adjacency[b, a] = True
        clique = exact_max_clique(SirGraph(7, adjacency, 10.0))
        assert clique == [3, 4, 5, 6]

    def test_result_is_clique(self, rng):
        for _ in range(20):
            graph = _random_graph(rng, 12, 0.5)
            clique = exact_max_clique(graph)
            for i, a in enumerate(clique):
                for b in clique[i + 1 :]:
                    assert graph.adjacency[a, b]

    def test_size_cap(self):
        with pytest.raises(ConfigError, match="instance too large"):
            exact_max_clique(SirGraph(26, np.zeros((26, 26), bool), 10.0))

    def test_dominates_heuristic_on_random_graphs(self, rng):
        for _ in range(100):
            k = int(rng.integers(4, 13))
            graph = _random_graph(rng, k, float(rng.uniform(0.2, 0.8)))
            s = _graph_sir_matrix(graph)
            greedy = select_users(s, np.arange(k, dtype=float), graph.gamma)
            exact = exact_max_clique(graph)
            assert len(exact) >= len(greedy)

    def test_dominates_heuristic_on_channel_graph(self, paper_array, paper_medium):
        users = z_axis_users(12, 0.1, 10.0)
        gamma_db = 12.0
        graph = build_graph(users, gamma_db, paper_array, paper_medium)
        greedy = heuristic_select(users, gamma_db, paper_array, paper_medium)
        assert len(exact_max_clique(graph)) >= len(greedy.selected)
