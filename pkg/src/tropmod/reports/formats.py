"""
Artifact Formats
================

Byte-deterministic renderings of computed objects: JSON documents for
strata and automorphism groups, Graphviz DOT for the strata Hasse diagram
and the stratum-to-nodal-class map, and the coverage table as CSV.
"""

from typing import Any, Dict, List

import pandas as pd

from ..modules.comparison import CoverageReport, StratificationMap
from ..modules.graph_core import WeightedGraph
from ..modules.isomorphism import AutGroup, canonical_form, cycle_notation
from ..modules.moduli_strata import StrataPoset, short_key
from ..modules.serialization import emit_graph

COVERAGE_COLUMNS = ["base_key", "stratum_key", "dim", "nodal_class_key", "covered"]


def graph_label(g: WeightedGraph) -> str:
    """Compact one-line description, e.g. ``a:w0 b:w0; e1=a-b e2=a-b; 1@a``."""
    vertices = " ".join(f"{v}:w{g.weights[v]}" for v in g.vertex_ids)
    edges = " ".join(f"{e}={g.edges[e].ends[0]}-{g.edges[e].ends[1]}" for e in g.edge_ids)
    leaves = " ".join(f"{label}@{g.leaves[label]}" for label in sorted(g.leaves))
    return "; ".join(part for part in (vertices, edges, leaves) if part)


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def strata_dot(poset: StrataPoset) -> str:
    """One node per stratum, edges from each stratum to the strata covered by it."""
    lines = ["digraph strata {", "  rankdir=TB;", "  node [shape=box];"]
    for i, stratum in enumerate(poset.strata):
        label = f"dim={stratum.dimension}, |witnesses|={len(stratum.witnesses)}, |AutE|={stratum.aut_edge_action_order}"
        lines.append(f'  "S{i}" [label="{_dot_escape(label)}"];')
    for lower, upper in poset.hasse:
        lines.append(f'  "S{upper}" -> "S{lower}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def stratification_dot(smap: StratificationMap) -> str:
    """Bipartite map: strata on the left, nodal classes on the right."""
    lines = ["digraph stratification {", "  rankdir=LR;"]
    lines.append("  subgraph cluster_strata {")
    lines.append('    label="strata";')
    for image in smap.images:
        stratum = smap.poset.strata[image.stratum]
        lines.append(f'    "S{image.stratum}" [shape=box, label="S{image.stratum} dim={stratum.dimension}"];')
    lines.append("  }")
    lines.append("  subgraph cluster_nodal {")
    lines.append('    label="nodal classes";')
    for key in smap.classes():
        lines.append(f'    "N{short_key(key)}" [shape=ellipse, label="{short_key(key)}"];')
    lines.append("  }")
    for image in smap.images:
        style = "" if image.well_defined else " [color=red]"
        lines.append(f'  "S{image.stratum}" -> "N{short_key(image.key)}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def coverage_frame(report: CoverageReport) -> pd.DataFrame:
    """
    One row per stratum of every base, then one row per stable class the base misses.

    Missed classes have an empty ``stratum_key`` and the dimension
    3g-3+n-|E(class)| of their stratum of stable curves.
    """
    ambient = 3 * report.genus - 3 + report.leaves
    rows: List[Dict[str, Any]] = []
    for result in report.bases:
        base_key = short_key(result.base_key)
        for image in result.smap.images:
            stratum = result.poset.strata[image.stratum]
            rows.append({
                "base_key": base_key,
                "stratum_key": stratum.digest,
                "dim": stratum.dimension,
                "nodal_class_key": short_key(image.key),
                "covered": True,
            })
        for key in result.misses:
            rows.append({
                "base_key": base_key,
                "stratum_key": "",
                "dim": ambient - len(report.stable_classes[key].edges),
                "nodal_class_key": short_key(key),
                "covered": False,
            })
    return pd.DataFrame(rows, columns=COVERAGE_COLUMNS)


def coverage_csv(report: CoverageReport) -> str:
    return coverage_frame(report).to_csv(index=False, lineterminator="\n")


def strata_document(poset: StrataPoset) -> Dict[str, Any]:
    return {
        "base": emit_graph(poset.base),
        "strata": [
            {
                "index": i,
                "key": stratum.digest,
                "dimension": stratum.dimension,
                "representative": emit_graph(stratum.representative),
                "witnesses": [sorted(q) for q in stratum.witnesses],
                "autEdgeActionOrder": stratum.aut_edge_action_order,
                "autOrder": stratum.aut_order,
            }
            for i, stratum in enumerate(poset.strata)
        ],
        "hasse": [list(pair) for pair in poset.hasse],
    }


def aut_document(group: AutGroup) -> Dict[str, Any]:
    g = group.graph
    return {
        "graph": short_key(canonical_form(g)),
        "order": group.order,
        "edgeActionOrder": group.edge_action_order,
        "kernelSize": group.kernel_size,
        "generators": [group.describe(x) for x in group.generators()],
        "edgeAction": [cycle_notation(dict(action), g.edge_ids) for action in group.edge_action],
    }


def census_document(kind: str, genus_value: int, n: int, graphs: List[WeightedGraph]) -> Dict[str, Any]:
    return {
        "kind": kind,
        "genus": genus_value,
        "leaves": n,
        "count": len(graphs),
        "graphs": [emit_graph(g) for g in graphs],
    }

