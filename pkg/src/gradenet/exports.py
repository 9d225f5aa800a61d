"""File formats: records CSV, GraphML/DOT network exports, histogram CSVs.

The GraphML and DOT writers are paired with minimal readers so exported
node/edge sets round-trip through the package itself.
"""

from __future__ import annotations

import csv
import io
import re
import xml.etree.ElementTree as ET

from .errors import ParseError
from .mining import CoSelectionGraph
from .records import ATTRIBUTE_COLUMNS, CAMPAIGN_COLUMN, ITEM_COLUMN

_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def records_csv_dumps(records) -> str:
    """Records in the ingest schema; attribute columns in schema order."""
    present = set()
    for rec in records:
        present.update(rec.attributes)
    columns = [c for c in ATTRIBUTE_COLUMNS if c in present]
    columns += sorted(present - set(ATTRIBUTE_COLUMNS))
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([CAMPAIGN_COLUMN, ITEM_COLUMN, *columns])
    for rec in records:
        writer.writerow(
            [rec.campaign_id, rec.item]
            + [repr(rec.attributes[c]) if c in rec.attributes else "" for c in columns]
        )
    return out.getvalue()


def _node_data(cograph: CoSelectionGraph, node_annotations: dict | None) -> dict:
    data: dict = {}
    for node in cograph.graph.nodes():
        row = dict(cograph.node_attributes.get(node, {}))
        if node_annotations:
            row.update(node_annotations.get(node, {}))
        data[node] = row
    return data


def graphml_dumps(cograph: CoSelectionGraph, node_annotations: dict | None = None) -> str:
    """GraphML with node attribute data and lift as an edge attribute."""
    node_data = _node_data(cograph, node_annotations)
    keys = sorted({name for row in node_data.values() for name in row})
    root = ET.Element("graphml", xmlns=_GRAPHML_NS)
    for name in keys:
        ET.SubElement(
            root,
            "key",
            attrib={"id": name, "for": "node", "attr.name": name, "attr.type": "string"},
        )
    ET.SubElement(
        root,
        "key",
        attrib={"id": "lift", "for": "edge", "attr.name": "lift", "attr.type": "double"},
    )
    graph_el = ET.SubElement(root, "graph", attrib={"id": "G", "edgedefault": "undirected"})
    for node in cograph.graph.nodes():
        node_el = ET.SubElement(graph_el, "node", attrib={"id": str(node)})
        for name in sorted(node_data[node]):
            data_el = ET.SubElement(node_el, "data", attrib={"key": name})
            data_el.text = str(node_data[node][name])
    for u, v in cograph.graph.edges():
        edge_el = ET.SubElement(graph_el, "edge", attrib={"source": str(u), "target": str(v)})
        data_el = ET.SubElement(edge_el, "data", attrib={"key": "lift"})
        data_el.text = repr(cograph.edge_lift.get((u, v), 0.0))
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def graphml_loads(text: str):
    """Node and edge sets from a GraphML document."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(f"invalid GraphML: {exc}") from exc
    ns = {"g": _GRAPHML_NS}
    nodes = [el.get("id") for el in root.findall(".//g:node", ns)]
    edges = [
        tuple(sorted((el.get("source"), el.get("target"))))
        for el in root.findall(".//g:edge", ns)
    ]
    return sorted(nodes), sorted(edges)


def _dot_quote(label) -> str:
    return '"' + str(label).replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_dumps(cograph: CoSelectionGraph, node_annotations: dict | None = None) -> str:
    node_data = _node_data(cograph, node_annotations)
    lines = ["graph coselection {"]
    for node in cograph.graph.nodes():
        attrs = ", ".join(
            f"{name}={node_data[node][name]}" for name in sorted(node_data[node])
        )
        suffix = f" [{attrs}]" if attrs else ""
        lines.append(f"  {_dot_quote(node)}{suffix};")
    for u, v in cograph.graph.edges():
        lift = cograph.edge_lift.get((u, v), 0.0)
        lines.append(f"  {_dot_quote(u)} -- {_dot_quote(v)} [lift={lift!r}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_EDGE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*--\s*"((?:[^"\\]|\\.)*)"')
_DOT_NODE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*(?:\[[^\]]*\])?\s*;')


def _dot_unescape(label: str) -> str:
    return label.replace('\\"', '"').replace("\\\\", "\\")


def dot_loads(text: str):
    """Node and edge sets from DOT text in this package's output dialect."""
    nodes = set()
    edges = set()
    for line in text.splitlines():
        edge_match = _DOT_EDGE.match(line)
        if edge_match:
            u, v = (_dot_unescape(s) for s in edge_match.groups())
            nodes.update((u, v))
            edges.add(tuple(sorted((u, v))))
            continue
        node_match = _DOT_NODE.match(line)
        if node_match:
            nodes.add(_dot_unescape(node_match.group(1)))
    return sorted(nodes), sorted(edges)


def edges_csv_dumps(cograph: CoSelectionGraph) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["item_a", "item_b", "lift"])
    for u, v in cograph.graph.edges():
        writer.writerow([u, v, repr(cograph.edge_lift.get((u, v), 0.0))])
    return out.getvalue()


def histogram_csv_dumps(histogram: dict, key_name: str, value_name: str) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([key_name, value_name])
    for key in sorted(histogram):
        writer.writerow([key, histogram[key]])
    return out.getvalue()


def zscores_csv_dumps(rows) -> str:
    """Tidy long-format z-score table for external plotting."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["stage", "scope", "model", "statistic", "empirical", "mean", "std", "z", "dropped", "defined"]
    )
    for row in rows:
        writer.writerow(row)
    return out.getvalue()
