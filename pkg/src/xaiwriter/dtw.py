"""Dynamic time warping over label sequences.

Standard three-step DTW (diagonal, insert, delete). Path recovery breaks
ties preferring the diagonal step, then (0,1), then (1,0), so alignments
are fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass


def label_mismatch_cost(a, b) -> float:
    return 0.0 if a == b else 1.0


@dataclass(frozen=True)
class DtwResult:
    distance: float
    path: tuple[tuple[int, int], ...]


def dtw_align(a, b, cost=label_mismatch_cost) -> DtwResult:
    """Minimal-cost monotone alignment of two non-empty sequences."""
    m, n = len(a), len(b)
    if m == 0 or n == 0:
        raise ValueError("dtw_align requires non-empty sequences")

    inf = float("inf")
    acc = [[inf] * n for _ in range(m)]
    acc[0][0] = cost(a[0], b[0])
    for j in range(1, n):
        acc[0][j] = acc[0][j - 1] + cost(a[0], b[j])
    for i in range(1, m):
        acc[i][0] = acc[i - 1][0] + cost(a[i], b[0])
        row, prev = acc[i], acc[i - 1]
        for j in range(1, n):
            c = cost(a[i], b[j])
            row[j] = c + min(prev[j - 1], row[j - 1], prev[j])

    # Backtrack from the end; preference order diagonal, (0,1), (1,0).
    path = [(m - 1, n - 1)]
    i, j = m - 1, n - 1
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            diag, left, up = acc[i - 1][j - 1], acc[i][j - 1], acc[i - 1][j]
            best = min(diag, left, up)
            if diag == best:
                i, j = i - 1, j - 1
            elif left == best:
                j -= 1
            else:
                i -= 1
        path.append((i, j))
    path.reverse()
    return DtwResult(distance=acc[m - 1][n - 1], path=tuple(path))
