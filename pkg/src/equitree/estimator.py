"""scikit-learn style front end: ``EquitableTreeColoring().fit_predict(adjacency)``."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_array

from .graph import Graph
from .solve import solve


def check_graph(X) -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a Graph or a square symmetric 0/1 adjacency matrix (dense or
    scipy sparse) with an empty diagonal.
    """
    if isinstance(X, Graph):
        return X
    A = check_array(X, accept_sparse=("csr", "csc", "coo"), ensure_min_samples=1,
                    ensure_min_features=1, dtype=None)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {A.shape}")
    A = sp.csr_matrix(A)
    A.eliminate_zeros()
    if A.diagonal().any():
        raise ValueError("adjacency matrix has self-loops")
    if not np.all(A.data == 1):
        raise ValueError("adjacency matrix must be 0/1")
    if (A != A.T).nnz:
        raise ValueError("adjacency matrix must be symmetric")
    rows, cols = A.nonzero()
    upper = rows < cols
    return Graph.from_edges(A.shape[0], zip(rows[upper].tolist(), cols[upper].tolist()))


class EquitableTreeColoring(ClusterMixin, BaseEstimator):
    """Equitable tree-coloring as a transductive clustering estimator.

    Each color class of ``labels_`` induces a forest and holds at most
    ``ceil(n / n_colors)`` vertices.

    Parameters
    ----------
    n_colors : int
        Number of color classes ``k``.
    force_layered : bool
        Use the layered solver even when the single-swap solver applies.
    rebalance : bool
        Afterwards try to bring all class sizes within one of each other.
    debug_checks : bool
        Re-verify forests and bookkeeping after every mutation.
    raise_on_failure : bool
        Raise the solver failure instead of leaving ``labels_`` unset.

    Attributes
    ----------
    labels_ : ndarray of shape (n,)
    plan_ : SolvePlan
    report_ : VerifyReport
    diagnostics_ : DiagnosticsReport or None
    result_ : SolveResult
    """

    def __init__(self, n_colors=8, force_layered=False, rebalance=False,
                 debug_checks=False, raise_on_failure=True):
        self.n_colors = n_colors
        self.force_layered = force_layered
        self.rebalance = rebalance
        self.debug_checks = debug_checks
        self.raise_on_failure = raise_on_failure

    def fit(self, X, y=None):
        if not isinstance(self.n_colors, (int, np.integer)) or self.n_colors < 1:
            raise ValueError(f"n_colors must be a positive integer, got {self.n_colors!r}")
        g = check_graph(X)
        res = solve(g, int(self.n_colors), force_layered=self.force_layered,
                    rebalance=self.rebalance, debug=self.debug_checks)
        self.result_ = res
        self.plan_ = res.plan
        self.diagnostics_ = res.diagnostics
        self.report_ = res.report
        if res.failure is not None:
            if self.raise_on_failure:
                raise res.failure
            self.labels_ = None
            return self
        self.labels_ = np.asarray(res.coloring, dtype=np.intp)
        return self
