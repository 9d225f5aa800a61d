"""Pairwise association rules: supports, lift and the co-selection graph.

Rules are symmetric item pairs; an edge is drawn when the pair co-occurs,
passes the support floor and its lift reaches the threshold (lift > 1 being
the "more often than expected by chance" boundary). Lift is kept as an edge
attribute but all topology metrics treat the graph as unweighted.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidArgumentError, UndefinedLiftError
from .graph import Graph
from .records import TransactionSet


@dataclass(frozen=True)
class RuleStats:
    """Support and lift figures for one unordered item pair."""

    item_a: str
    item_b: str
    support_a: float
    support_b: float
    support_pair: float
    lift: float


@dataclass(frozen=True)
class CoSelectionGraph:
    """Co-selection network plus per-edge lift and per-node attribute means."""

    graph: Graph
    edge_lift: dict  # (a, b) with a < b -> lift
    node_attributes: dict  # item -> {attribute -> mean over its records}
    min_support: float
    min_lift: float


def support_single(item, transactions: TransactionSet) -> float:
    total = len(transactions)
    if total == 0:
        raise InvalidArgumentError("support is undefined for an empty transaction set")
    count = sum(1 for _, items in transactions.transactions if item in items)
    return count / total


def support_pair(item_a, item_b, transactions: TransactionSet) -> float:
    if item_a == item_b:
        raise InvalidArgumentError("pair support requires two distinct items")
    total = len(transactions)
    if total == 0:
        raise InvalidArgumentError("support is undefined for an empty transaction set")
    count = sum(
        1 for _, items in transactions.transactions if item_a in items and item_b in items
    )
    return count / total


def lift(item_a, item_b, transactions: TransactionSet) -> float:
    sa = support_single(item_a, transactions)
    sb = support_single(item_b, transactions)
    if sa == 0 or sb == 0:
        raise UndefinedLiftError(
            f"lift({item_a!r}, {item_b!r}) undefined: zero singleton support"
        )
    return support_pair(item_a, item_b, transactions) / (sa * sb)


def pair_stats(item_a, item_b, transactions: TransactionSet) -> RuleStats:
    a, b = sorted((item_a, item_b))
    sa = support_single(a, transactions)
    sb = support_single(b, transactions)
    sp = support_pair(a, b, transactions)
    return RuleStats(a, b, sa, sb, sp, lift(a, b, transactions))


def build_graph(
    transactions: TransactionSet,
    records=(),
    min_support: float = 0.0,
    min_lift: float = 1.0,
) -> CoSelectionGraph:
    """Build the co-selection network from transactions.

    Nodes are items that occur at least once and reach min_support. An edge
    (a, b) exists iff the pair co-occurs, its support reaches min_support
    and its lift reaches min_lift. Empty transactions give an empty graph.
    """
    if not (0.0 <= min_support <= 1.0):
        raise InvalidArgumentError("min_support must be in [0, 1]")
    if not math.isfinite(min_lift):
        raise InvalidArgumentError("min_lift must be finite")
    total = len(transactions)
    if total == 0:
        return CoSelectionGraph(Graph(), {}, {}, min_support, min_lift)

    single = Counter()
    pairs = Counter()
    for _, items in transactions.transactions:
        ordered = sorted(items)
        single.update(ordered)
        pairs.update(combinations(ordered, 2))

    node_set = {item for item, c in single.items() if c / total >= min_support}
    g = Graph(nodes=sorted(node_set))
    edge_lift = {}
    for (a, b), c in sorted(pairs.items()):
        if a not in node_set or b not in node_set:
            continue
        sp = c / total
        if sp < min_support:
            continue
        value = sp / ((single[a] / total) * (single[b] / total))
        if value >= min_lift:
            g.add_edge(a, b)
            edge_lift[(a, b)] = value

    sums = defaultdict(lambda: defaultdict(float))
    counts = defaultdict(lambda: defaultdict(int))
    for rec in records:
        if rec.item not in node_set:
            continue
        for name, value in rec.attributes.items():
            sums[rec.item][name] += value
            counts[rec.item][name] += 1
    node_attributes = {
        item: {name: sums[item][name] / counts[item][name] for name in sorted(sums[item])}
        for item in sorted(sums)
    }
    return CoSelectionGraph(g, edge_lift, node_attributes, min_support, min_lift)
