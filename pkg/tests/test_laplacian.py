"""The three Laplacian variants: closed forms, invariants, spectra."""

import numpy as np
import pytest

from conftest import random_hypergraph
from hyperlap import (
    COMBINATORIAL,
    RANDOM_WALK,
    SYMMETRIC,
    VARIANTS,
    combinatorial_laplacian,
    connected_components,
    degrees,
    laplacian,
    random_walk_laplacian,
    symmetric_laplacian,
)


def test_variant_constants():
    assert set(VARIANTS) == {COMBINATORIAL, SYMMETRIC, RANDOM_WALK}


def test_dispatcher_matches_direct_calls(triangle):
    assert np.array_equal(laplacian(triangle, COMBINATORIAL).matrix,
                          combinatorial_laplacian(triangle).matrix)
    assert np.array_equal(laplacian(triangle, SYMMETRIC).matrix,
                          symmetric_laplacian(triangle).matrix)
    assert np.array_equal(laplacian(triangle, RANDOM_WALK).matrix,
                          random_walk_laplacian(triangle).matrix)


def test_dispatcher_rejects_unknown(triangle):
    with pytest.raises(ValueError):
        laplacian(triangle, "graph")


def test_matrix_is_read_only(triangle):
    lap = combinatorial_laplacian(triangle)
    with pytest.raises(ValueError):
        lap.matrix[0, 0] = 99.0


class TestTriangle:
    """One unit edge over three vertices: all variants collapse to I - J/3."""

    def test_closed_form_all_variants(self, triangle):
        expected = np.eye(3) - np.full((3, 3), 1.0 / 3.0)
        for variant in VARIANTS:
            lap = laplacian(triangle, variant)
            assert np.max(np.abs(lap.matrix - expected)) <= 1e-12

    def test_spectrum(self, triangle):
        ev = np.linalg.eigvalsh(combinatorial_laplacian(triangle).matrix)
        assert np.max(np.abs(np.sort(ev) - np.array([0.0, 1.0, 1.0]))) <= 1e-10


class TestDisjointPairs:
    def test_block_structure(self, disjoint_pairs):
        block = np.array([[0.5, -0.5], [-0.5, 0.5]])
        expected = np.zeros((4, 4))
        expected[:2, :2] = block
        expected[2:, 2:] = block
        for variant in VARIANTS:
            lap = laplacian(disjoint_pairs, variant)
            assert np.max(np.abs(lap.matrix - expected)) <= 1e-12

    def test_spectrum_multiplicities(self, disjoint_pairs):
        ev = np.sort(np.linalg.eigvalsh(symmetric_laplacian(disjoint_pairs).matrix))
        assert np.max(np.abs(ev - np.array([0.0, 0.0, 1.0, 1.0]))) <= 1e-10


class TestCombinatorial:
    def test_row_sums_vanish(self, rng):
        for _ in range(30):
            g = random_hypergraph(rng)
            lap = combinatorial_laplacian(g)
            ones = np.ones(g.n_vertices)
            assert np.max(np.abs(lap.matrix @ ones)) <= 1e-8

    def test_symmetric(self, rng):
        for _ in range(30):
            g = random_hypergraph(rng)
            m = combinatorial_laplacian(g).matrix
            assert np.max(np.abs(m - m.T)) <= 1e-10

    def test_positive_semidefinite(self, rng):
        for _ in range(20):
            g = random_hypergraph(rng)
            ev = np.linalg.eigvalsh(combinatorial_laplacian(g).matrix)
            assert ev.min() >= -1e-8

    def test_diagonal_dominance_pattern(self, small_weighted):
        # d=[2,5,3], S = HWDe^-1 H^T with per-edge contribution w(e)/|e| on members
        s = np.array([[1.0, 1.0, 0.0],
                      [1.0, 2.5, 1.5],
                      [0.0, 1.5, 1.5]])
        expected = np.diag([2.0, 5.0, 3.0]) - s
        assert np.max(np.abs(combinatorial_laplacian(small_weighted).matrix - expected)) <= 1e-12

    def test_vertex_degrees_carried(self, small_weighted):
        lap = combinatorial_laplacian(small_weighted)
        assert lap.vertex_degrees.tolist() == [2.0, 5.0, 3.0]


class TestSymmetricNormalized:
    def test_nullvector_is_sqrt_degrees(self, rng):
        for _ in range(30):
            g = random_hypergraph(rng)
            lap = symmetric_laplacian(g)
            x = np.sqrt(degrees(g).vertex_degrees)
            assert np.max(np.abs(lap.matrix @ x)) <= 1e-8

    def test_spectrum_in_unit_interval(self, rng):
        for _ in range(20):
            g = random_hypergraph(rng, n_max=10)
            ev = np.linalg.eigvalsh(symmetric_laplacian(g).matrix)
            assert ev.min() >= -1e-8
            assert ev.max() <= 1.0 + 1e-8

    def test_symmetric(self, rng):
        for _ in range(30):
            g = random_hypergraph(rng)
            m = symmetric_laplacian(g).matrix
            assert np.max(np.abs(m - m.T)) <= 1e-10

    def test_relation_to_combinatorial(self, rng):
        # L_sym = Dv^{-1/2} L Dv^{-1/2}
        for _ in range(10):
            g = random_hypergraph(rng, n_max=20)
            d = degrees(g).vertex_degrees
            scale = 1.0 / np.sqrt(d)
            rebuilt = combinatorial_laplacian(g).matrix * scale[:, None] * scale[None, :]
            assert np.max(np.abs(symmetric_laplacian(g).matrix - rebuilt)) <= 1e-10


class TestRandomWalk:
    def test_row_sums_vanish(self, rng):
        for _ in range(30):
            g = random_hypergraph(rng)
            lap = random_walk_laplacian(g)
            ones = np.ones(g.n_vertices)
            assert np.max(np.abs(lap.matrix @ ones)) <= 1e-8

    def test_transition_rows_sum_to_one(self, rng):
        g = random_hypergraph(rng)
        p = np.eye(g.n_vertices) - random_walk_laplacian(g).matrix
        assert np.max(np.abs(p.sum(axis=1) - 1.0)) <= 1e-10
        assert p.min() >= -1e-12

    def test_similarity_to_symmetric(self, rng):
        # L_rw = Dv^{-1/2} L_sym Dv^{1/2}
        for _ in range(20):
            g = random_hypergraph(rng, n_max=25)
            d = degrees(g).vertex_degrees
            inv_sqrt = 1.0 / np.sqrt(d)
            conj = symmetric_laplacian(g).matrix * inv_sqrt[:, None] * np.sqrt(d)[None, :]
            assert np.max(np.abs(random_walk_laplacian(g).matrix - conj)) <= 1e-10

    def test_spectra_agree_with_symmetric(self, rng):
        for _ in range(20):
            g = random_hypergraph(rng, n_max=25)
            ev_rw = np.sort(np.linalg.eigvals(random_walk_laplacian(g).matrix).real)
            ev_sym = np.sort(np.linalg.eigvalsh(symmetric_laplacian(g).matrix))
            assert np.max(np.abs(ev_rw - ev_sym)) <= 1e-8

    def test_generally_asymmetric(self, small_weighted):
        m = random_walk_laplacian(small_weighted).matrix
        assert np.max(np.abs(m - m.T)) > 1e-6


class TestNullspace:
    def test_dimension_equals_component_count(self, rng):
        for blocks in (1, 1, 2, 2, 3):
            g = random_hypergraph(rng, n_max=30, m_max=40, blocks=blocks)
            c = connected_components(g)
            for variant in (COMBINATORIAL, SYMMETRIC):
                ev = np.linalg.eigvalsh(laplacian(g, variant).matrix)
                assert int(np.sum(np.abs(ev) < 1e-8)) == c
