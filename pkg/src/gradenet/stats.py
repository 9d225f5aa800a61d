"""Correlations, node-metric extraction, and ensemble z-scores.

Pearson, Spearman (midranks) and Kendall tau-b, each with the usual
approximate two-sided p-value; the degree-vs-betweenness and
clustering-vs-betweenness correlations that serve as randomness probes;
and z = (X - mu) / sigma against null-model ensembles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

from .errors import (
    EnsembleDegenerateError,
    InsufficientDataError,
    InvalidArgumentError,
    UndefinedCorrelationError,
    UndefinedZScoreError,
)
from .graph import Graph, betweenness_all, clustering_all
from .nullmodels import NullModelSpec, SeedStream, generate_null

STATISTICS = ("COR_D_BC", "COR_CC_BC")


@dataclass(frozen=True)
class CorrelationResult:
    kind: str
    value: float
    p_value: float
    sample_size: int


@dataclass(frozen=True)
class EnsembleSummary:
    """Empirical value of one statistic against a null-model ensemble."""

    statistic: str
    empirical: float
    replicate_values: tuple
    mean: float
    std: float
    z: float | None
    dropped: int
    undefined_reason: str | None = None


def midranks(values) -> np.ndarray:
    """Ranks starting at 1, ties receiving the average of their positions."""
    arr = np.asarray(values, dtype=float)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(len(arr))
    i = 0
    n = len(arr)
    while i < n:
        j = i
        while j + 1 < n and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _check_lengths(x, y, minimum: int = 3):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) != len(y):
        raise InvalidArgumentError("sequences must have equal length")
    if len(x) < minimum:
        raise InvalidArgumentError(f"at least {minimum} observations required")
    return x, y


def _pearson_value(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    vx = float(xc @ xc)
    vy = float(yc @ yc)
    if vx == 0.0 or vy == 0.0:
        raise UndefinedCorrelationError("zero variance in a correlation argument")
    r = float(xc @ yc) / math.sqrt(vx * vy)
    return min(1.0, max(-1.0, r))


def _t_p_value(r: float, n: int) -> float:
    if abs(r) >= 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return float(2.0 * sps.t.sf(abs(t), n - 2))


def pearson(x, y) -> CorrelationResult:
    x, y = _check_lengths(x, y)
    r = _pearson_value(x, y)
    return CorrelationResult("pearson", r, _t_p_value(r, len(x)), len(x))


def spearman(x, y) -> CorrelationResult:
    x, y = _check_lengths(x, y)
    r = _pearson_value(midranks(x), midranks(y))
    return CorrelationResult("spearman", r, _t_p_value(r, len(x)), len(x))


def kendall(x, y) -> CorrelationResult:
    """Tau-b with tie correction; p-value from the normal approximation."""
    x, y = _check_lengths(x, y)
    n = len(x)
    dx = np.sign(x[:, None] - x[None, :])
    dy = np.sign(y[:, None] - y[None, :])
    iu = np.triu_indices(n, k=1)
    prod = dx[iu] * dy[iu]
    num = float(prod.sum())  # concordant minus discordant
    n0 = n * (n - 1) / 2.0
    tx = float((dx[iu] == 0).sum())
    ty = float((dy[iu] == 0).sum())
    denom = math.sqrt((n0 - tx) * (n0 - ty))
    if denom == 0.0:
        raise UndefinedCorrelationError("all-tied sequence in kendall tau")
    tau = min(1.0, max(-1.0, num / denom))

    def tie_sizes(values):
        _, counts = np.unique(values, return_counts=True)
        return counts.astype(float)

    t_sizes = tie_sizes(x)
    u_sizes = tie_sizes(y)
    v0 = n * (n - 1) * (2 * n + 5)
    vt = float((t_sizes * (t_sizes - 1) * (2 * t_sizes + 5)).sum())
    vu = float((u_sizes * (u_sizes - 1) * (2 * u_sizes + 5)).sum())
    v1 = (
        float((t_sizes * (t_sizes - 1)).sum())
        * float((u_sizes * (u_sizes - 1)).sum())
        / (2.0 * n * (n - 1))
    )
    v2 = (
        float((t_sizes * (t_sizes - 1) * (t_sizes - 2)).sum())
        * float((u_sizes * (u_sizes - 1) * (u_sizes - 2)).sum())
        / (9.0 * n * (n - 1) * (n - 2))
    )
    var = (v0 - vt - vu) / 18.0 + v1 + v2
    if var <= 0:
        p = 1.0
    else:
        p = float(2.0 * sps.norm.sf(abs(num) / math.sqrt(var)))
    return CorrelationResult("kendall", tau, min(1.0, p), n)


_CORRELATIONS = {"pearson": pearson, "spearman": spearman, "kendall": kendall}


def correlation(x, y, kind: str) -> CorrelationResult:
    try:
        fn = _CORRELATIONS[kind]
    except KeyError:
        raise InvalidArgumentError(f"unknown correlation kind {kind!r}") from None
    return fn(x, y)


def metric_vectors(graph: Graph):
    """(degree, clustering, betweenness) arrays over non-isolated nodes."""
    labels = [v for v in graph.nodes() if len(graph.neighbors(v)) > 0]
    if len(labels) < 3:
        raise InsufficientDataError(
            f"need at least 3 non-isolated nodes, got {len(labels)}"
        )
    cc = clustering_all(graph)
    bc = betweenness_all(graph)
    deg = np.array([len(graph.neighbors(v)) for v in labels], dtype=float)
    cvec = np.array([cc[v] for v in labels])
    bvec = np.array([bc[v] for v in labels])
    return labels, deg, cvec, bvec


def node_metric_correlations(graph: Graph, kind: str = "spearman", strict: bool = True):
    """(COR_D_BC, COR_CC_BC) over the graph's non-isolated nodes.

    With strict=False a statistic whose metric vector is constant comes
    back as None instead of raising.
    """
    _, deg, cvec, bvec = metric_vectors(graph)
    results = []
    for x in (deg, cvec):
        try:
            results.append(correlation(x, bvec, kind))
        except UndefinedCorrelationError:
            if strict:
                raise
            results.append(None)
    return tuple(results)


def _correlation_value(x: np.ndarray, y: np.ndarray, kind: str) -> float:
    # fast path for ensemble replicates: value only, no p-value
    if kind == "pearson":
        return _pearson_value(x, y)
    if kind == "spearman":
        return _pearson_value(midranks(x), midranks(y))
    return kendall(x, y).value


def zscore(x: float, replicates) -> float:
    """(x - mean) / population std over the finite replicate values."""
    arr = np.asarray(replicates, dtype=float)
    arr = arr[np.isfinite(arr)]
    if len(arr) < 2:
        raise InvalidArgumentError("at least 2 finite replicates required")
    sigma = float(arr.std())
    if sigma == 0.0:
        raise UndefinedZScoreError("ensemble standard deviation is zero")
    return (x - float(arr.mean())) / sigma


def ensemble_zscores(
    graph: Graph,
    spec: NullModelSpec,
    replicates: int,
    kind: str = "spearman",
    stream: SeedStream | None = None,
    strict: bool = True,
) -> list:
    """Z-scores of the graph's metric correlations against a null ensemble.

    One replicate graph is generated per index from the seed stream and
    both statistics are evaluated on it; undefined replicate values are
    dropped and counted. With strict=True a statistic that loses more than
    half its replicates or has zero ensemble spread raises; with
    strict=False it comes back as a summary with z=None and a reason.
    """
    if replicates < 2:
        raise InvalidArgumentError("at least 2 replicates required")
    stream = stream if stream is not None else SeedStream.from_seed(0)
    emp_d, emp_c = node_metric_correlations(graph, kind, strict=strict)
    empirical = {
        "COR_D_BC": emp_d.value if emp_d is not None else None,
        "COR_CC_BC": emp_c.value if emp_c is not None else None,
    }

    values = {name: [] for name in STATISTICS}
    dropped = {name: 0 for name in STATISTICS}
    for i in range(replicates):
        replica = generate_null(spec, stream.generator(i))
        try:
            _, deg, cvec, bvec = metric_vectors(replica)
        except InsufficientDataError:
            for name in STATISTICS:
                dropped[name] += 1
            continue
        for name, pair in (("COR_D_BC", (deg, bvec)), ("COR_CC_BC", (cvec, bvec))):
            try:
                values[name].append(_correlation_value(pair[0], pair[1], kind))
            except UndefinedCorrelationError:
                dropped[name] += 1

    summaries = []
    for name in STATISTICS:
        vals = np.asarray(values[name])
        reason = None
        z = mean = std = None
        if empirical[name] is None:
            reason = "empirical correlation undefined"
        elif dropped[name] * 2 > replicates:
            if strict:
                raise EnsembleDegenerateError(name, dropped[name], replicates)
            reason = f"degenerate: {dropped[name]} of {replicates} replicates undefined"
        else:
            mean = float(vals.mean())
            std = float(vals.std())
            if std == 0.0:
                if strict:
                    raise UndefinedZScoreError(
                        f"{name}: ensemble standard deviation is zero"
                    )
                reason = "zero ensemble standard deviation"
            else:
                z = (empirical[name] - mean) / std
        summaries.append(
            EnsembleSummary(
                statistic=name,
                empirical=empirical[name] if empirical[name] is not None else math.nan,
                replicate_values=tuple(vals.tolist()),
                mean=mean if mean is not None else math.nan,
                std=std if std is not None else math.nan,
                z=z,
                dropped=dropped[name],
                undefined_reason=reason,
            )
        )
    return summaries
