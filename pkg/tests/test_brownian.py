import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tableaux_lab import brownian
from tableaux_lab.combinat import Word, build_block_structure, rsk_shape
from tableaux_lab.errors import BruteForceTooLarge


def rng(seed=0):
    return np.random.default_rng(seed)


def sigma(p):
    p = np.asarray(p)
    return np.diag(p) - np.outer(p, p)


class TestIncrements:
    def test_single_letter_is_flat(self):
        grid = brownian.sample_increment_grid([1.0], 50, rng())
        assert np.all(grid.increments == 0)

    @pytest.mark.parametrize("probs", [[0.5, 0.5], [0.5, 0.3, 0.2], [0.4, 0.4, 0.2]])
    def test_covariance(self, probs):
        n = 10
        dist = build_block_structure(probs)
        inc = brownian.increment_stack(dist, n, 10**4, rng(1))
        cols = inc.transpose(0, 2, 1).reshape(-1, dist.m)
        emp = np.cov(cols.T, bias=True)
        target = sigma(dist.sorted_array()) / n
        count = cols.shape[0]
        band = 3 * np.sqrt((target**2 + np.outer(np.diag(target), np.diag(target))) / count)
        assert np.all(np.abs(emp - target) <= band + 1e-15)

    def test_rows_sum_to_zero(self):
        inc = brownian.increment_stack([0.5, 0.3, 0.2], 7, 3, rng(2))
        assert np.max(np.abs(inc.sum(axis=1))) < 1e-15


class TestLhat:
    def test_single_letter(self):
        grid = brownian.sample_increment_grid([1.0], 20, rng())
        assert brownian.lhat(grid, 1) == 0
        assert np.array_equal(brownian.lhat_shape_sample([1.0], 20, rng()), [0.0])

    def test_single_row_block_is_plain_sum(self):
        dist = build_block_structure([0.5, 0.3, 0.2])
        grid = brownian.sample_increment_grid(dist, 9, rng(3))
        rows = grid.increments.sum(axis=1)
        assert brownian.lhat(grid, 1) == pytest.approx(rows[0])
        assert brownian.lhat(grid, 2) == pytest.approx(rows[0] + rows[1])

    def test_nine_subdivisions(self):
        grid = brownian.sample_increment_grid([0.5, 0.5], 8, rng(4))
        assert brownian.count_subdivisions(8, 2, 1) == 9
        cum = np.concatenate([[[0.0], [0.0]], np.cumsum(grid.increments, axis=1)], axis=1)
        direct = max(cum[0, t] + cum[1, 8] - cum[1, t] for t in range(9))
        assert brownian.lhat(grid, 1) == pytest.approx(direct, abs=1e-15)
        assert brownian.lhat_bruteforce(grid, 1) == pytest.approx(direct, abs=1e-15)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([[0.5, 0.5], [1 / 3] * 3, [0.4, 0.4, 0.2], [0.5, 0.25, 0.25], [0.3, 0.2, 0.2, 0.2, 0.1]]),
           st.integers(1, 12), st.integers(0, 2**32 - 1))
    def test_dp_equals_bruteforce(self, probs, n, seed):
        dist = build_block_structure(probs)
        grid = brownian.sample_increment_grid(dist, n, rng(seed))
        for l in range(1, dist.m + 1):
            assert abs(brownian.lhat(grid, l) - brownian.lhat_bruteforce(grid, l)) <= 1e-12

    def test_count_matches_enumeration(self):
        for n, d, r in [(4, 3, 2), (5, 4, 2), (3, 4, 3), (6, 3, 1)]:
            assert brownian.count_subdivisions(n, d, r) == sum(1 for _ in brownian._path_families(n, d, r))

    def test_bruteforce_guard(self):
        grid = brownian.sample_increment_grid([0.2] * 5, 60, rng())
        with pytest.raises(BruteForceTooLarge):
            brownian.lhat_bruteforce(grid, 2)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 5).flatmap(lambda m: st.tuples(st.just(m), st.lists(st.integers(1, m), max_size=14))))
    def test_indicator_grid_gives_greene_sums(self, mw):
        m, letters = mw
        dist = build_block_structure([1 / m] * m)
        grid = Word(tuple(letters), m).indicator_matrix().astype(float)
        vals = brownian.lhat_all(grid[None], dist)[0]
        assert np.array_equal(vals, np.cumsum(rsk_shape(letters, m)))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 5), st.integers(1, 30), st.integers(0, 2**32 - 1))
    def test_monotone_in_paths_on_nonnegative_grids(self, m, n, seed):
        dist = build_block_structure([1 / m] * m)
        grid = rng(seed).exponential(size=(4, m, n))
        vals = brownian.lhat_all(grid, dist)
        assert np.all(np.diff(vals, axis=1) >= -1e-12)

    def test_centered_grids_are_not_monotone(self):
        # all letters together sum to zero, while one path is at least the best full row
        dist = build_block_structure([0.5, 0.5])
        vals = brownian.lhat_all(brownian.increment_stack(dist, 20, 50, rng(1)), dist)
        assert np.all(vals[:, 0] >= -1e-15) and np.allclose(vals[:, 1], 0, atol=1e-14)

    def test_shape_vector_telescopes(self):
        dist = build_block_structure([0.4, 0.4, 0.2])
        inc = brownian.increment_stack(dist, 30, 5, rng(6))
        shapes = brownian.lhat_shape_batch(inc, dist)
        assert np.allclose(shapes.sum(axis=1), brownian.lhat_batch(inc, dist, 3), atol=1e-14)
        # all rows together: increments sum to zero across letters
        assert np.allclose(shapes.sum(axis=1), 0, atol=1e-14)

    def test_batch_matches_single(self):
        dist = build_block_structure([0.25] * 4)
        inc = brownian.increment_stack(dist, 15, 6, rng(7))
        for l in range(1, 5):
            batch = brownian.lhat_batch(inc, dist, l)
            single = [brownian.lhat(brownian.IncrementGrid(dist, g), l) for g in inc]
            assert np.allclose(batch, single, atol=1e-14)

    def test_bad_l(self):
        grid = brownian.sample_increment_grid([0.5, 0.5], 4, rng())
        with pytest.raises(ValueError):
            brownian.lhat(grid, 3)
