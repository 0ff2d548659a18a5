import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psrokit.normal_form import NormalFormGame, expected_value_nfg, load_matrix, save_matrix

RPS = NormalFormGame([[0, -1, 1], [1, 0, -1], [-1, 1, 0]], name="rps")


class TestConstruction:
    def test_shape_and_range(self):
        game = NormalFormGame([[1.0, -2.0], [0.5, 3.0]])
        assert game.shape == (2, 2)
        assert game.utility_range() == (-2.0, 3.0)

    def test_rejects_non_2d(self):
        with pytest.raises(ValueError, match="2-D"):
            NormalFormGame([1.0, 2.0])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            NormalFormGame(np.zeros((0, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            NormalFormGame([[np.inf, 0], [0, 0]])
        with pytest.raises(ValueError, match="finite"):
            NormalFormGame([[np.nan]])

    def test_rejects_label_mismatch(self):
        with pytest.raises(ValueError, match="row_labels"):
            NormalFormGame([[0, 1]], row_labels=["a", "b"])
        with pytest.raises(ValueError, match="col_labels"):
            NormalFormGame([[0, 1]], col_labels=["a"])

    def test_one_by_one_allowed(self):
        assert NormalFormGame([[4.0]]).shape == (1, 1)


class TestExpectedValue:
    def test_rock_loses_to_paper(self):
        assert expected_value_nfg(RPS, [1, 0, 0], [0, 1, 0]) == -1.0

    def test_uniform_vs_uniform_is_zero(self):
        u = np.full(3, 1 / 3)
        assert abs(expected_value_nfg(RPS, u, u)) < 1e-15

    def test_uniform_row_vs_pure_col_is_column_mean(self):
        rng = np.random.default_rng(7)
        matrix = rng.random((4, 4))
        game = NormalFormGame(matrix)
        got = expected_value_nfg(game, np.full(4, 0.25), [1, 0, 0, 0])
        # hand-enumerated sum: mean of column 0
        want = (matrix[0, 0] + matrix[1, 0] + matrix[2, 0] + matrix[3, 0]) / 4
        assert abs(got - want) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="row strategy"):
            expected_value_nfg(RPS, [0.5, 0.5], np.full(3, 1 / 3))
        with pytest.raises(ValueError, match="column strategy"):
            expected_value_nfg(RPS, np.full(3, 1 / 3), [1.0])

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10**9))
    def test_zero_sum_role_swap(self, seed):
        rng = np.random.default_rng(seed)
        k, m = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        U = rng.normal(size=(k, m))
        x = rng.random(k)
        x /= x.sum()
        y = rng.random(m)
        y /= y.sum()
        forward = expected_value_nfg(NormalFormGame(U), x, y)
        swapped = expected_value_nfg(NormalFormGame(-U.T), y, x)
        assert abs(forward + swapped) < 1e-12


class TestMatrixFile:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "rps.txt"
        save_matrix(RPS, path)
        back = load_matrix(path)
        assert back.name == "rps"
        np.testing.assert_array_equal(back.row_payoffs, RPS.row_payoffs)

    def test_round_trip_preserves_floats_exactly(self, tmp_path):
        rng = np.random.default_rng(3)
        game = NormalFormGame(rng.normal(size=(5, 7)))
        path = tmp_path / "g.txt"
        save_matrix(game, path)
        np.testing.assert_array_equal(load_matrix(path).row_payoffs, game.row_payoffs)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3\n0 0 0\n")
        with pytest.raises(ValueError, match="bad.txt:1"):
            load_matrix(path)

    def test_wrong_row_count(self, tmp_path):
        path = tmp_path / "short.txt"
        path.write_text("2 2\n0 0\n")
        with pytest.raises(ValueError, match="expected 2 payoff rows"):
            load_matrix(path)

    def test_wrong_entry_count_anchors_line(self, tmp_path):
        path = tmp_path / "ragged.txt"
        path.write_text("2 2\n0 0\n1 2 3\n")
        with pytest.raises(ValueError, match="ragged.txt:3"):
            load_matrix(path)

    def test_non_numeric_entry(self, tmp_path):
        path = tmp_path / "alpha.txt"
        path.write_text("1 2\n0 x\n")
        with pytest.raises(ValueError, match="non-numeric"):
            load_matrix(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("")
        with pytest.raises(ValueError, match="empty"):
            load_matrix(path)
