"""End-to-end orchestration of the six analysis steps into one report.

Per cumulative stage: build the co-selection network, locate components,
select the component of interest, detect its communities, summarize their
production contribution, prune negligible communities, and score the full
and pruned graphs against the configured null-model ensembles. Everything
is deterministic given the seed, so the report is byte-reproducible.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import (
    EnsembleDegenerateError,
    InsufficientDataError,
    InvalidArgumentError,
    UndefinedCorrelationError,
    UndefinedZScoreError,
)
from .evolution import group_summary, node_age, prune_minor_groups, stage_networks
from .graph import connected_components, girvan_newman
from .nullmodels import SeedStream, spec_for
from .records import (
    ITEM_COLUMN,
    TransactionSet,
    assign_windows,
    campaign_diversity_histogram,
    group_campaigns,
    parse_records,
    slabs_per_item_histogram,
)
from .stats import STATISTICS, ensemble_zscores, node_metric_correlations

MODELS = ("er", "degseq", "grg")
_MODEL_INDEX = {name: i for i, name in enumerate(MODELS)}
_SCOPES = ("full", "pruned")


@dataclass(frozen=True)
class AnalysisConfig:
    item_column: str = ITEM_COLUMN
    windows: int = 10
    min_support: float = 0.0
    min_lift: float = 1.0
    ensemble: int = 1000
    models: tuple = MODELS
    correlation: str = "spearman"
    seed: int = 0
    prune_floor: float = 0.01
    component: str = "largest"  # or "min-mean:<attribute>"
    swap_multiplier: float = 10.0
    attribute_columns: tuple | None = field(default=None)

    def validate(self) -> None:
        if self.windows < 1:
            raise InvalidArgumentError("windows must be >= 1")
        if self.ensemble < 2:
            raise InvalidArgumentError("ensemble size must be >= 2")
        unknown = [m for m in self.models if m not in MODELS]
        if unknown:
            raise InvalidArgumentError(f"unknown null model {unknown[0]!r}")
        if self.correlation not in ("pearson", "spearman", "kendall"):
            raise InvalidArgumentError(f"unknown correlation {self.correlation!r}")
        if not (0.0 <= self.prune_floor <= 1.0):
            raise InvalidArgumentError("prune floor must be in [0, 1]")
        if self.component != "largest" and not self.component.startswith("min-mean:"):
            raise InvalidArgumentError(
                "component selector must be 'largest' or 'min-mean:<attribute>'"
            )


def _select_component(components, cograph, selector: str):
    if not components:
        return None
    if selector == "largest":
        return components[0]
    attribute = selector.split(":", 1)[1]

    def mean_attribute(component):
        values = [
            cograph.node_attributes.get(v, {}).get(attribute)
            for v in component
        ]
        values = [v for v in values if v is not None]
        if not values:
            return float("inf")
        return sum(values) / len(values)

    return min(components, key=lambda c: (mean_attribute(c), -len(c), min(c)))


def _correlation_entry(graph, kind):
    try:
        results = node_metric_correlations(graph, kind, strict=False)
    except InsufficientDataError as exc:
        return {name: {"undefined": str(exc)} for name in STATISTICS}
    entry = {}
    for name, result in zip(STATISTICS, results):
        if result is None:
            entry[name] = {"undefined": "constant metric vector"}
        else:
            entry[name] = {
                "value": result.value,
                "p_value": result.p_value,
                "n": result.sample_size,
            }
    return entry


def _ensemble_cells(graph, models, config: AnalysisConfig, stream: SeedStream):
    """One {model: {statistic: cell}} block; never raises per-cell errors."""
    cells = {}
    for model in models:
        model_stream = stream.child(_MODEL_INDEX[model])
        try:
            spec = spec_for(
                model, graph, model_stream, swap_multiplier=config.swap_multiplier
            )
            summaries = ensemble_zscores(
                graph,
                spec,
                config.ensemble,
                kind=config.correlation,
                stream=model_stream,
                strict=False,
            )
        except (
            InsufficientDataError,
            UndefinedCorrelationError,
            UndefinedZScoreError,
            EnsembleDegenerateError,
            InvalidArgumentError,
        ) as exc:
            cells[model] = {name: {"undefined": str(exc)} for name in STATISTICS}
            continue
        block = {}
        for summary in summaries:
            if summary.z is None:
                block[summary.statistic] = {"undefined": summary.undefined_reason}
            else:
                block[summary.statistic] = {
                    "empirical": summary.empirical,
                    "mean": summary.mean,
                    "std": summary.std,
                    "z": summary.z,
                    "dropped": summary.dropped,
                    "replicates": config.ensemble,
                }
        cells[model] = block
    return cells


def run_analysis(csv_text: str, config: AnalysisConfig) -> dict:
    """Run the full pipeline on CSV text and return the report dict."""
    config.validate()
    records = parse_records(
        csv_text,
        item_column=config.item_column,
        attribute_columns=list(config.attribute_columns)
        if config.attribute_columns is not None
        else None,
    )
    transactions = group_campaigns(records)
    assignment = assign_windows(transactions, config.windows)
    series = stage_networks(
        records,
        transactions,
        assignment,
        min_support=config.min_support,
        min_lift=config.min_lift,
    )
    base_stream = SeedStream.from_seed(config.seed)

    stages = []
    for s, cograph in enumerate(series.stages):
        included = {
            cid for cid, _ in transactions.transactions if assignment.window_of[cid] <= s
        }
        stage_records = [rec for rec in records if rec.campaign_id in included]
        stage_transactions_count = len(included)
        components = connected_components(cograph.graph)
        entry = {
            "stage": s,
            "windows_included": s + 1,
            "campaigns": stage_transactions_count,
            "nodes": cograph.graph.number_of_nodes(),
            "edges": cograph.graph.number_of_edges(),
            "components": [sorted(c) for c in components],
        }
        selected = _select_component(components, cograph, config.component)
        if selected is None:
            entry.update(
                {
                    "selected_component": None,
                    "communities": None,
                    "group_summaries": [],
                    "pruned_core": None,
                    "correlations": {},
                    "ensembles": {},
                }
            )
            stages.append(entry)
            continue
        component_graph = cograph.graph.subgraph(selected)
        partition = girvan_newman(component_graph)
        communities = sorted(
            (sorted(c) for c in partition.communities), key=lambda c: (-len(c), c[0])
        )
        summaries = group_summary(communities, stage_records, _stage_transactions(transactions, included))
        pruned_graph = prune_minor_groups(
            component_graph, communities, stage_records, config.prune_floor
        )
        entry["selected_component"] = sorted(selected)
        entry["communities"] = {
            "count": len(communities),
            "modularity": partition.modularity_q,
            "members": communities,
        }
        entry["group_summaries"] = [
            {
                "community": i,
                "items": summary.items,
                "slab_frequency": summary.slab_frequency,
                "campaign_frequency": summary.campaign_frequency,
                "attribute_means": summary.attribute_means,
            }
            for i, summary in enumerate(summaries)
        ]
        entry["pruned_core"] = {
            "nodes": pruned_graph.nodes(),
            "removed_items": len(selected) - pruned_graph.number_of_nodes(),
        }
        scope_graphs = {"full": component_graph, "pruned": pruned_graph}
        entry["correlations"] = {
            scope: _correlation_entry(g, config.correlation)
            for scope, g in scope_graphs.items()
        }
        full_cells = _ensemble_cells(
            component_graph, config.models, config, base_stream.child(s, 0)
        )
        if set(pruned_graph.nodes()) == set(component_graph.nodes()):
            # pruning removed nothing; the pruned-scope grid is the same
            # computation and is shared rather than re-simulated
            pruned_cells = full_cells
        else:
            pruned_cells = _ensemble_cells(
                pruned_graph, config.models, config, base_stream.child(s, 1)
            )
        entry["ensembles"] = {"full": full_cells, "pruned": pruned_cells}
        stages.append(entry)

    report = {
        "input": {
            "sha256": hashlib.sha256(csv_text.encode("utf-8")).hexdigest(),
            "records": len(records),
            "campaigns": len(transactions),
            "items": len(transactions.item_universe),
        },
        "config": {
            "item_column": config.item_column,
            "windows": config.windows,
            "min_support": config.min_support,
            "min_lift": config.min_lift,
            "ensemble": config.ensemble,
            "models": list(config.models),
            "correlation": config.correlation,
            "seed": config.seed,
            "prune_floor": config.prune_floor,
            "component": config.component,
            "swap_multiplier": config.swap_multiplier,
        },
        "histograms": {
            "campaign_diversity": {
                str(k): v for k, v in campaign_diversity_histogram(transactions).items()
            },
            "slabs_per_item": slabs_per_item_histogram(records),
        },
        "stages": stages,
        "node_ages": node_age(series),
    }
    return report


def _stage_transactions(transactions, included):
    rows = tuple((cid, items) for cid, items in transactions.transactions if cid in included)
    universe = frozenset().union(*(items for _, items in rows)) if rows else frozenset()
    return TransactionSet(rows, universe)


def zscore_rows(report: dict):
    """Flatten the report's ensemble grid into tidy rows."""
    rows = []
    for entry in report["stages"]:
        for scope in _SCOPES:
            block = entry.get("ensembles", {}).get(scope, {})
            for model in report["config"]["models"]:
                for statistic in STATISTICS:
                    cell = block.get(model, {}).get(statistic)
                    if cell is None:
                        continue
                    if "undefined" in cell:
                        rows.append(
                            [entry["stage"], scope, model, statistic, "", "", "", "", "", "false"]
                        )
                    else:
                        rows.append(
                            [
                                entry["stage"],
                                scope,
                                model,
                                statistic,
                                repr(cell["empirical"]),
                                repr(cell["mean"]),
                                repr(cell["std"]),
                                repr(cell["z"]),
                                cell["dropped"],
                                "true",
                            ]
                        )
    return rows
