"""Cumulative-window stage networks, node age, and group contributions.

Stage s is the co-selection graph built from all campaigns in windows
0..s, so the final stage equals the full-data network and node sets grow
monotonically (edge sets need not: cumulative lift can cross the
threshold in either direction).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidArgumentError
from .graph import Graph
from .mining import CoSelectionGraph, build_graph
from .records import TransactionSet, WindowAssignment


@dataclass(frozen=True)
class StageSeries:
    stages: tuple  # CoSelectionGraph per stage, one per window
    assignment: WindowAssignment


@dataclass(frozen=True)
class GroupSummary:
    """Production contribution of one node group (component or community)."""

    items: int
    slab_frequency: float
    campaign_frequency: float
    attribute_means: dict


def stage_networks(
    records,
    transactions: TransactionSet,
    assignment: WindowAssignment,
    min_support: float = 0.0,
    min_lift: float = 1.0,
) -> StageSeries:
    """Build one cumulative co-selection graph per observation window."""
    missing = [cid for cid, _ in transactions.transactions if cid not in assignment.window_of]
    if missing:
        raise InvalidArgumentError(
            f"window assignment does not cover campaign {missing[0]!r}"
        )
    stages = []
    for s in range(assignment.window_count):
        included = {
            cid
            for cid, _ in transactions.transactions
            if assignment.window_of[cid] <= s
        }
        sub_transactions = tuple(
            (cid, items) for cid, items in transactions.transactions if cid in included
        )
        universe = frozenset().union(*(items for _, items in sub_transactions)) \
            if sub_transactions else frozenset()
        sub_records = [rec for rec in records if rec.campaign_id in included]
        stages.append(
            build_graph(
                TransactionSet(sub_transactions, universe),
                sub_records,
                min_support=min_support,
                min_lift=min_lift,
            )
        )
    return StageSeries(tuple(stages), assignment)


def node_age(series: StageSeries) -> dict:
    """First stage index at which each final-stage node appears."""
    if not series.stages:
        raise InvalidArgumentError("stage series is empty")
    ages = {}
    for s, cograph in enumerate(series.stages):
        for v in cograph.graph.nodes():
            ages.setdefault(v, s)
    final_nodes = set(series.stages[-1].graph.nodes())
    return {v: age for v, age in sorted(ages.items()) if v in final_nodes}


def group_summary(groups, records, transactions: TransactionSet) -> list:
    """Per group: item count, slab/campaign frequency, attribute means."""
    known_items = {rec.item for rec in records}
    seen = set()
    for group in groups:
        group = set(group)
        if group & seen:
            raise InvalidArgumentError("groups must be disjoint")
        unknown = group - known_items
        if unknown:
            raise InvalidArgumentError(f"group contains unknown item {min(unknown)!r}")
        seen |= group
    total_records = len(records)
    total_campaigns = len(transactions)
    summaries = []
    for group in groups:
        group = set(group)
        group_records = [rec for rec in records if rec.item in group]
        campaigns = sum(
            1 for _, items in transactions.transactions if items & group
        )
        sums: dict = {}
        counts: dict = {}
        for rec in group_records:
            for name, value in rec.attributes.items():
                sums[name] = sums.get(name, 0.0) + value
                counts[name] = counts.get(name, 0) + 1
        summaries.append(
            GroupSummary(
                items=len(group),
                slab_frequency=len(group_records) / total_records if total_records else 0.0,
                campaign_frequency=campaigns / total_campaigns if total_campaigns else 0.0,
                attribute_means={name: sums[name] / counts[name] for name in sorted(sums)},
            )
        )
    return summaries


def prune_minor_groups(
    graph: Graph,
    partition,
    records,
    slab_frequency_floor: float,
) -> Graph:
    """Subgraph induced by groups whose slab frequency reaches the floor."""
    if not (0.0 <= slab_frequency_floor <= 1.0):
        raise InvalidArgumentError("slab frequency floor must be in [0, 1]")
    nodes = set(graph.nodes())
    covered = set()
    for group in partition:
        covered |= set(group)
    if covered != nodes:
        raise InvalidArgumentError("partition does not cover the graph's nodes")
    total_records = len(records)
    keep = set()
    for group in partition:
        group = set(group)
        count = sum(1 for rec in records if rec.item in group)
        frequency = count / total_records if total_records else 0.0
        if frequency >= slab_frequency_floor:
            keep |= group
    return graph.subgraph(keep)
