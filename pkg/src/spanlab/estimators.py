"""scikit-learn style estimators wrapping the graph sparsifiers.

Each estimator takes hyperparameters in ``__init__``, learns from a graph
in ``fit`` (accepted as a :class:`~spanlab.graph.Graph`, an ``(n, edges)``
pair, a dense adjacency matrix, or a scipy sparse matrix), and exposes the
built structure through trailing-underscore attributes. ``get_params`` /
``set_params`` / ``clone`` behave as for any other scikit-learn estimator,
so the sparsifiers drop into pipelines and grid searches.
"""
from __future__ import annotations

from fractions import Fraction

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .clustering import decompose
from .distortion import additive_distortion, multiplicative_spanner
from .emulator import EmulatorConfig
from .errors import InvalidParamsError
from .graph import Graph
from .preserver import build_preserver, check_consistency
from .schedule import run_recursive
from .spanner import SpannerConfig


def as_graph(X) -> Graph:
    """Validate and convert estimator input into a Graph.

    Accepts a Graph, an ``(n, edges)`` tuple, a square 0/1 (or weight)
    matrix, or a scipy sparse adjacency. Matrices must be symmetric with a
    zero diagonal.
    """
    if isinstance(X, Graph):
        return X
    if isinstance(X, tuple) and len(X) == 2:
        n, edges = X
        return Graph(int(n), list(edges))
    try:
        import numpy as np
    except ImportError:  # pragma: no cover
        np = None
    if hasattr(X, "tocoo"):  # scipy sparse
        coo = X.tocoo()
        if coo.shape[0] != coo.shape[1]:
            raise InvalidParamsError("adjacency must be square")
        edges = {(int(u), int(v)) for u, v, w in zip(coo.row, coo.col, coo.data)
                 if w and u != v}
        sym = {(min(u, v), max(u, v)) for u, v in edges}
        for u, v in sym:
            if (u, v) not in edges or (v, u) not in edges:
                raise InvalidParamsError("adjacency must be symmetric")
        return Graph(coo.shape[0], sym)
    if np is not None and hasattr(X, "ndim"):
        arr = np.asarray(X)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidParamsError("adjacency must be a square matrix")
        if not (arr == arr.T).all():
            raise InvalidParamsError("adjacency must be symmetric")
        if arr.diagonal().any():
            raise InvalidParamsError("adjacency must have a zero diagonal")
        n = arr.shape[0]
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if arr[i, j]]
        return Graph(n, edges)
    raise InvalidParamsError(f"cannot interpret {type(X).__name__} as a graph")


class _GraphEstimator(BaseEstimator):
    def _check_fitted(self, attr: str):
        if not hasattr(self, attr):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet")


class MultiplicativeSpanner(_GraphEstimator):
    """Greedy multiplicative spanner with stretch 2k-1.

    ``k=None`` uses ceil(log2 n). After ``fit``: ``spanner_`` (Graph),
    ``n_edges_``, ``stretch_bound_``.
    """

    def __init__(self, k: int | None = None):
        self.k = k

    def fit(self, X, y=None):
        g = as_graph(X)
        self.spanner_ = multiplicative_spanner(g, self.k)
        self.n_edges_ = self.spanner_.m
        from .distortion import default_stretch_parameter
        k = self.k if self.k is not None else default_stretch_parameter(g.n)
        self.stretch_bound_ = 2 * k - 1
        return self

    def transform(self, X=None) -> Graph:
        self._check_fitted("spanner_")
        return self.spanner_

    def fit_transform(self, X, y=None) -> Graph:
        return self.fit(X).transform()


class AdditiveEmulator(_GraphEstimator):
    """Recursive additive emulator (weighted edges over the host vertices).

    After ``fit``: ``emulator_`` (weighted Graph), ``edges_`` (dict),
    ``stats_``, ``r_hat_``, ``distortion_bound_``.
    """

    def __init__(self, eps=Fraction(1, 4), depth: int = 1,
                 greedy_stop_multiplier: int = 16,
                 prefix_err_multiplier: int = 1,
                 sampling_constant=4, c_hat=3,
                 r_override: int | None = None, seed: int = 0):
        self.eps = eps
        self.depth = depth
        self.greedy_stop_multiplier = greedy_stop_multiplier
        self.prefix_err_multiplier = prefix_err_multiplier
        self.sampling_constant = sampling_constant
        self.c_hat = c_hat
        self.r_override = r_override
        self.seed = seed

    def _config(self) -> EmulatorConfig:
        return EmulatorConfig(
            eps=self.eps,
            greedy_stop_multiplier=self.greedy_stop_multiplier,
            prefix_err_multiplier=self.prefix_err_multiplier,
            sampling_constant=self.sampling_constant, c_hat=self.c_hat,
            r_override=self.r_override, seed=self.seed)

    def fit(self, X, y=None):
        g = as_graph(X)
        result = run_recursive(g, "emulator", self.depth, self._config())
        self.emulator_ = result.to_graph()
        self.edges_ = dict(result.edges)
        self.stats_ = dict(result.stats)
        self.r_hat_ = result.stats.get("r_hat")
        if self.r_hat_ is not None:
            self.distortion_bound_ = self.greedy_stop_multiplier * self.r_hat_
        self._host_ = g
        return self

    def transform(self, X=None) -> Graph:
        self._check_fitted("emulator_")
        return self.emulator_

    def fit_transform(self, X, y=None) -> Graph:
        return self.fit(X).transform()

    def audit(self):
        """Exact all-pairs distortion report against the fitted graph."""
        self._check_fitted("emulator_")
        return additive_distortion(self._host_, self.emulator_)


class AdditiveSpanner(_GraphEstimator):
    """Recursive additive spanner (subgraph of the input).

    After ``fit``: ``spanner_`` (Graph), ``path_system_``, ``stats_``,
    ``r_hat_``, ``distortion_bound_``.
    """

    def __init__(self, eps=Fraction(1, 4), depth: int = 1,
                 greedy_stop_multiplier: int = 32,
                 prefix_err_multiplier: int = 1,
                 sampling_constant=4, c_hat=3,
                 r_override: int | None = None, seed: int = 0):
        self.eps = eps
        self.depth = depth
        self.greedy_stop_multiplier = greedy_stop_multiplier
        self.prefix_err_multiplier = prefix_err_multiplier
        self.sampling_constant = sampling_constant
        self.c_hat = c_hat
        self.r_override = r_override
        self.seed = seed

    def _config(self) -> SpannerConfig:
        return SpannerConfig(
            eps=self.eps,
            greedy_stop_multiplier=self.greedy_stop_multiplier,
            prefix_err_multiplier=self.prefix_err_multiplier,
            sampling_constant=self.sampling_constant, c_hat=self.c_hat,
            r_override=self.r_override, seed=self.seed)

    def fit(self, X, y=None):
        g = as_graph(X)
        result = run_recursive(g, "spanner", self.depth, self._config())
        self.spanner_ = result.subgraph
        self.path_system_ = result.path_system
        self.stats_ = dict(result.stats)
        self.r_hat_ = result.stats.get("r_hat")
        if self.r_hat_ is not None:
            self.distortion_bound_ = self.greedy_stop_multiplier * self.r_hat_
        self._host_ = g
        return self

    def transform(self, X=None) -> Graph:
        self._check_fitted("spanner_")
        return self.spanner_

    def fit_transform(self, X, y=None) -> Graph:
        return self.fit(X).transform()

    def audit(self):
        self._check_fitted("spanner_")
        return additive_distortion(self._host_, self.spanner_,
                                   require_subgraph=True)


class DistancePreserver(_GraphEstimator):
    """Exact pairwise distance preserver over a fixed demand-pair set.

    After ``fit``: ``subgraph_``, ``path_system_``, ``consistency_report_``.
    """

    def __init__(self, pairs=()):
        self.pairs = pairs

    def fit(self, X, y=None):
        g = as_graph(X)
        self.subgraph_, self.path_system_ = build_preserver(g, list(self.pairs))
        self.consistency_report_ = check_consistency(self.path_system_)
        return self

    def transform(self, X=None) -> Graph:
        self._check_fitted("subgraph_")
        return self.subgraph_

    def fit_transform(self, X, y=None) -> Graph:
        return self.fit(X).transform()


class BallClusterCover(_GraphEstimator):
    """Ball-growing cluster cover; every vertex lands in some cluster core.

    After ``fit``: ``decomposition_``, ``centers_``, ``radii_``, ``labels_``
    (the covering cluster index per vertex), ``overlap_constant_``.
    """

    def __init__(self, radius: int = 1, eps=Fraction(1, 4)):
        self.radius = radius
        self.eps = eps

    def fit(self, X, y=None):
        g = as_graph(X)
        d = decompose(g, self.radius, self.eps)
        self.decomposition_ = d
        self.centers_ = list(d.centers)
        self.radii_ = list(d.radii)
        self.labels_ = [d.core_of[v] for v in range(g.n)]
        self.overlap_constant_ = d.overlap_constant
        return self
