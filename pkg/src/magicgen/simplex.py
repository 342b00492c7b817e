"""Dense two-phase primal simplex with Bland's rule.

Solves min c.x subject to A x = b, x >= 0 on a full tableau.  Bland's
pivoting (always the smallest eligible index) is slower than steepest-edge
but cannot cycle and is bit-reproducible, which is what the decomposition
solvers need.  Problem sizes here stay within a few hundred rows by a few
thousand columns, well inside dense range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_PIVOT_TOL = 1e-9


class SimplexError(RuntimeError):
    pass


@dataclass
class SimplexResult:
    x: np.ndarray
    objective: float
    iterations: int


def _pivot(tableau: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    basis[row] = col


def _bland_iterate(
    tableau: np.ndarray, basis: np.ndarray, ncols: int, max_iter: int
) -> int:
    """Run Bland-rule pivots until the cost row has no negative entry.

    The last tableau row is the reduced-cost row, the last column the
    right-hand side.  Entering variable: smallest column index with
    reduced cost < -tol.  Leaving variable: minimum ratio, ties broken by
    smallest basis index.  Returns the number of pivots performed.
    """
    m = tableau.shape[0] - 1
    for iteration in range(max_iter):
        costs = tableau[-1, :ncols]
        entering_candidates = np.flatnonzero(costs < -_PIVOT_TOL)
        if entering_candidates.size == 0:
            return iteration
        col = int(entering_candidates[0])
        column = tableau[:m, col]
        rows = np.flatnonzero(column > _PIVOT_TOL)
        if rows.size == 0:
            raise SimplexError("objective unbounded below; malformed problem")
        ratios = tableau[rows, -1] / column[rows]
        best = np.min(ratios)
        tied = rows[ratios <= best + 1e-12]
        row = int(tied[np.argmin(basis[tied])])
        _pivot(tableau, basis, row, col)
    raise SimplexError(f"simplex did not finish within {max_iter} pivots")


def simplex_solve(
    c: np.ndarray, a: np.ndarray, b: np.ndarray, max_iter: int = 200_000
) -> SimplexResult:
    """Two-phase simplex for min c.x, A x = b, x >= 0.

    Raises SimplexError when the constraints are infeasible or the pivot
    budget runs out.  The final basic solution is polished by re-solving
    the basis system against the original data, which removes the drift a
    long tableau accumulation can pick up.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float).copy()
    c = np.asarray(c, dtype=float)
    m, n = a.shape

    # phase 1: flip rows to b >= 0, add artificial identity basis
    a_work = a.copy()
    neg = b < 0
    a_work[neg] *= -1.0
    b[neg] *= -1.0

    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = a_work
    tableau[:m, n : n + m] = np.eye(m)
    tableau[:m, -1] = b
    # phase-1 reduced costs: artificials are basic at cost one each
    tableau[-1, :n] = -a_work.sum(axis=0)
    tableau[-1, -1] = -b.sum()
    basis = np.arange(n, n + m)

    iters = _bland_iterate(tableau, basis, n + m, max_iter)
    if tableau[-1, -1] < -1e-7:
        raise SimplexError(
            f"infeasible constraints (phase-1 objective {-tableau[-1, -1]:.3e})"
        )

    # drive any lingering artificial out of the basis or drop its row
    keep = np.ones(m, dtype=bool)
    for i in range(m):
        if basis[i] < n:
            continue
        pivots = np.flatnonzero(np.abs(tableau[i, :n]) > _PIVOT_TOL)
        if pivots.size:
            _pivot(tableau, basis, i, int(pivots[0]))
        else:
            keep[i] = False  # redundant constraint
    rows = np.flatnonzero(keep)
    tableau = np.vstack([tableau[rows][:, list(range(n)) + [-1]], np.zeros(n + 1)])
    basis = basis[rows]

    # phase 2: rebuild the reduced-cost row for the real objective
    tableau[-1, :n] = c - c[basis] @ tableau[: len(rows), :n]
    tableau[-1, -1] = -float(c[basis] @ tableau[: len(rows), -1])
    iters += _bland_iterate(tableau, basis, n, max_iter)

    x = np.zeros(n)
    x[basis] = tableau[: len(rows), -1]
    # polish: re-solve the basic columns against the original right-hand side
    b_orig = np.where(neg, -b, b)
    solution, *_ = np.linalg.lstsq(a[:, basis], b_orig, rcond=None)
    x[basis] = solution
    x = np.maximum(x, 0.0)
    return SimplexResult(x=x, objective=float(c @ x), iterations=iters)
