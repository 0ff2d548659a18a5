"""Matrix games: the row player's payoff matrix fully describes a zero-sum game."""

from __future__ import annotations

import numpy as np


class NormalFormGame:
    """Two-player zero-sum game in normal form.

    ``row_payoffs[i, j]`` is the row player's utility when the row player picks
    pure strategy ``i`` and the column player picks ``j``.  The column player's
    utility is the negation and is never stored separately.
    """

    def __init__(self, row_payoffs, row_labels=None, col_labels=None, name="matrix"):
        payoffs = np.array(row_payoffs, dtype=float)
        if payoffs.ndim != 2:
            raise ValueError(f"payoff matrix must be 2-D, got shape {payoffs.shape}")
        if payoffs.shape[0] < 1 or payoffs.shape[1] < 1:
            raise ValueError("payoff matrix needs at least one row and one column")
        if not np.all(np.isfinite(payoffs)):
            raise ValueError("payoff matrix entries must be finite")
        if row_labels is not None and len(row_labels) != payoffs.shape[0]:
            raise ValueError("row_labels length does not match the number of rows")
        if col_labels is not None and len(col_labels) != payoffs.shape[1]:
            raise ValueError("col_labels length does not match the number of columns")
        self.row_payoffs = payoffs
        self.row_labels = list(row_labels) if row_labels is not None else None
        self.col_labels = list(col_labels) if col_labels is not None else None
        self.name = name

    @property
    def shape(self) -> tuple[int, int]:
        return self.row_payoffs.shape

    def utility_range(self) -> tuple[float, float]:
        """Smallest and largest utility the row player can ever receive."""
        return float(self.row_payoffs.min()), float(self.row_payoffs.max())

    def __repr__(self):
        return f"NormalFormGame({self.name!r}, shape={self.shape})"


def _prob_vector(strategy) -> np.ndarray:
    probs = getattr(strategy, "probs", strategy)
    return np.asarray(probs, dtype=float)


def expected_value_nfg(game: NormalFormGame, row, col) -> float:
    """Row player's expected utility under a mixed profile.

    ``row`` and ``col`` may be plain probability vectors or anything exposing a
    ``probs`` attribute.  The column player's expected utility is the negation.
    """
    p = _prob_vector(row)
    q = _prob_vector(col)
    k, m = game.shape
    if p.shape != (k,):
        raise ValueError(f"row strategy has length {p.shape}, game has {k} rows")
    if q.shape != (m,):
        raise ValueError(f"column strategy has length {q.shape}, game has {m} columns")
    return float(p @ game.row_payoffs @ q)


def load_matrix(path) -> NormalFormGame:
    """Read the plain-text matrix format: a ``k m`` header line, then k rows of m numbers."""
    with open(path) as fh:
        lines = [(i + 1, line.strip()) for i, line in enumerate(fh) if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty matrix file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ValueError(f"{path}:{lineno}: header must be two integers 'rows cols'")
    try:
        k, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"{path}:{lineno}: header must be two integers 'rows cols'") from None
    if k < 1 or m < 1:
        raise ValueError(f"{path}:{lineno}: matrix dimensions must be positive")
    if len(lines) - 1 != k:
        raise ValueError(f"{path}: expected {k} payoff rows, found {len(lines) - 1}")
    rows = []
    for lineno, text in lines[1:]:
        entries = text.split()
        if len(entries) != m:
            raise ValueError(f"{path}:{lineno}: expected {m} entries, found {len(entries)}")
        try:
            rows.append([float(tok) for tok in entries])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-numeric payoff entry") from None
    import os

    return NormalFormGame(rows, name=os.path.splitext(os.path.basename(str(path)))[0])


def save_matrix(game: NormalFormGame, path) -> None:
    """Write a game in the plain-text matrix format accepted by ``load_matrix``."""
    with open(path, "w") as fh:
        k, m = game.shape
        fh.write(f"{k} {m}\n")
        for row in game.row_payoffs:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")
