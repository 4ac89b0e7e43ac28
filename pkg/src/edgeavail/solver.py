"""Exact steady-state solution of a CTMC and reward extraction.

Two solvers, deliberately different in kind so they can cross-check each
other:

* ``steady_state_gth`` — Grassmann-Taksar-Heyman elimination.  A direct
  method that only ever adds and multiplies nonnegative quantities, so it
  stays accurate even when rates span many orders of magnitude (here:
  1e-6 .. 240 per hour).  Default.
* ``steady_state_iterative`` — Gauss-Seidel sweeps on ``pi Q = 0`` with
  renormalization after every sweep, implemented as one sparse triangular
  solve per sweep.

State spaces in this package stay far below 10^4 states, so the dense
elimination in GTH is the pragmatic choice; the iterative path exists for
validation and for much larger user-supplied models.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve_triangular

from .errors import NotConverged, NotIrreducible
from .statespace import Ctmc

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 1_000_000


@dataclass
class SteadyState:
    distribution: np.ndarray
    method: str          # "gth" | "iterative"
    residual: float      # max |pi Q|

    def __post_init__(self):
        self.distribution = np.asarray(self.distribution, dtype=float)


def _residual(pi, Q) -> float:
    return float(np.max(np.abs(pi @ Q)))


def steady_state_gth(c: Ctmc) -> SteadyState:
    """Stationary distribution by GTH elimination (subtraction-free, exact to roundoff)."""
    n = c.n_states
    if n == 1:
        return SteadyState(np.ones(1), "gth", _residual(np.ones(1), c.Q))

    A = c.Q.toarray().astype(float)
    np.fill_diagonal(A, 0.0)
    # Censor states n-1 .. 1 one at a time.  Only off-diagonal entries are
    # ever read, so the rank-1 update can safely touch the diagonal.
    for k in range(n - 1, 0, -1):
        s = A[k, :k].sum()
        if not (s > 0.0 and np.isfinite(s)):
            raise NotIrreducible(
                f"state {k} cannot reach lower-numbered states during elimination "
                "(chain is reducible)")
        col = A[:k, k] / s
        A[:k, :k] += np.outer(col, A[k, :k])
        A[:k, k] = col
    # Back substitution: expected sojourn weight relative to state 0.
    x = np.empty(n)
    x[0] = 1.0
    for k in range(1, n):
        x[k] = x[:k] @ A[:k, k]
    pi = x / x.sum()
    return SteadyState(pi, "gth", _residual(pi, c.Q))


def steady_state_iterative(c: Ctmc, tol: float = DEFAULT_TOL,
                           max_iter: int = DEFAULT_MAX_ITER) -> SteadyState:
    """Gauss-Seidel on ``pi Q = 0``.

    Converged when the max-norm change between successive normalized iterates
    drops below ``tol``.
    """
    n = c.n_states
    if n == 1:
        return SteadyState(np.ones(1), "iterative", _residual(np.ones(1), c.Q))

    A = c.Q.T.tocsr()
    lower = sp.tril(A, 0).tocsr()          # D + L
    upper = sp.triu(A, 1).tocsr()          # U
    if np.any(lower.diagonal() == 0.0):
        raise NotIrreducible("a state has zero exit rate (absorbing)")

    x = np.full(n, 1.0 / n)
    change = np.inf
    for sweep in range(1, max_iter + 1):
        x_new = spsolve_triangular(lower, -(upper @ x), lower=True)
        total = x_new.sum()
        if total == 0.0 or not np.isfinite(total):
            raise NotConverged(sweep, float("nan"), float("nan"))
        x_new /= total
        change = float(np.max(np.abs(x_new - x)))
        x = x_new
        if change < tol:
            return SteadyState(x, "iterative", _residual(x, c.Q))
    raise NotConverged(max_iter, change, _residual(x, c.Q))


def unavailability(c: Ctmc, s: SteadyState) -> float:
    """1 - expected reward: the steady-state probability of being down."""
    value = 1.0 - float(s.distribution @ c.reward)
    return min(1.0, max(0.0, value))


def availability(c: Ctmc, s: SteadyState) -> float:
    return 1.0 - unavailability(c, s)
