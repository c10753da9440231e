"""
Census Report
=============

Collects the regular and stable censuses, the strata of every regular base
and the coverage analysis for one (g, n), and renders them as Markdown
(byte-deterministic) or PDF.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from loguru import logger
from reportlab.platypus import Paragraph, Spacer

from ..modules.comparison import CoverageReport, OrderReport, coverage, order_preservation
from ..modules.generation import enumerate_regular
from ..modules.graph_core import WeightedGraph
from ..modules.isomorphism import canonical_form
from ..modules.moduli_strata import short_key
from ..utils.parallel import WorkerPool
from ..utils.settings import DEFAULT_GENERATION_EDGES, DEFAULT_STRATA_EDGES
from .formats import graph_label
from .report_base import ReportGenerator


@dataclass(frozen=True)
class CensusSummary:
    genus: int
    leaves: int
    regular: List[WeightedGraph]
    coverage: CoverageReport
    order: Dict[str, OrderReport]

    @property
    def stable(self) -> List[WeightedGraph]:
        return list(self.coverage.stable_classes.values())


def collect_census(genus_value: int, n: int, max_edges: int = DEFAULT_GENERATION_EDGES,
                   pool: Optional[WorkerPool] = None, max_strata_edges: int = DEFAULT_STRATA_EDGES) -> CensusSummary:
    """Run every computation the census report shows."""
    logger.info(f"Collecting census for (g, n) = ({genus_value}, {n})")
    report = coverage(genus_value, n, max_edges=max_edges, pool=pool, max_strata_edges=max_strata_edges)
    order = {short_key(result.base_key): order_preservation(result.poset) for result in report.bases}
    return CensusSummary(
        genus=genus_value,
        leaves=n,
        regular=enumerate_regular(genus_value, n, max_edges),
        coverage=report,
        order=order,
    )


def _graph_rows(graphs: List[WeightedGraph]) -> List[List[Any]]:
    rows: List[List[Any]] = [["#", "key", "|V|", "|E|", "graph"]]
    for i, g in enumerate(graphs):
        rows.append([i, short_key(canonical_form(g)), len(g.weights), len(g.edges), graph_label(g)])
    return rows


def _strata_rows(summary: CensusSummary, base_index: int) -> List[List[Any]]:
    result = summary.coverage.bases[base_index]
    rows: List[List[Any]] = [["#", "key", "dim", "witnesses", "|AutE|", "|Aut|", "nodal class"]]
    for image in result.smap.images:
        stratum = result.poset.strata[image.stratum]
        rows.append([image.stratum, stratum.digest, stratum.dimension, len(stratum.witnesses),
                     stratum.aut_edge_action_order, stratum.aut_order, short_key(image.key)])
    return rows


def _coverage_rows(summary: CensusSummary) -> List[List[Any]]:
    total = len(summary.coverage.stable_classes)
    rows: List[List[Any]] = [["base", "hits", "misses", "collisions"]]
    for result in summary.coverage.bases:
        rows.append([
            short_key(result.base_key),
            f"{len(result.hits)}/{total}",
            ", ".join(short_key(k) for k in result.misses) or "none",
            ", ".join(f"S{a}~S{b}" for a, b in result.collisions) or "none found",
        ])
    return rows


def _check_rows(summary: CensusSummary) -> List[List[Any]]:
    rows: List[List[Any]] = [["base", "dimension identity", "well defined", "order preservation"]]
    for result in summary.coverage.bases:
        key = short_key(result.base_key)
        order = summary.order[key]
        rows.append([
            key,
            "holds" if all(image.dimension.holds for image in result.smap.images) else "FAILS",
            "yes" if not result.smap.violations else f"no: {result.smap.violations}",
            f"{order.pairs_checked} pairs, " + ("holds" if order.holds else f"{len(order.violations)} violations"),
        ])
    return rows


def _markdown_table(rows: List[List[Any]]) -> List[str]:
    header, body = rows[0], rows[1:]
    lines = ["| " + " | ".join(str(c) for c in header) + " |",
             "|" + "|".join("---" for _ in header) + "|"]
    lines.extend("| " + " | ".join(str(c) for c in row) + " |" for row in body)
    return lines


def render_markdown(summary: CensusSummary) -> str:
    """Markdown census; contains no timestamps so identical inputs give identical bytes."""
    g, n = summary.genus, summary.leaves
    lines = [f"# Census for (g, n) = ({g}, {n})", ""]

    lines += [f"## Regular tropicalizations ({len(summary.regular)})", ""]
    lines += _markdown_table(_graph_rows(summary.regular)) + [""]

    lines += [f"## Stable weighted graphs ({len(summary.stable)})", ""]
    lines += _markdown_table(_graph_rows(summary.stable)) + [""]

    lines += ["## Strata per regular base", ""]
    for i, result in enumerate(summary.coverage.bases):
        lines += [f"### Base {short_key(result.base_key)}", "", f"`{graph_label(result.base)}`", ""]
        lines += _markdown_table(_strata_rows(summary, i)) + [""]

    lines += ["## Coverage", ""]
    lines += _markdown_table(_coverage_rows(summary)) + [""]
    union = len(summary.coverage.union)
    lines += [f"Union over all bases: {union}/{len(summary.coverage.stable_classes)} stable classes.", ""]

    lines += ["## Identity checks", ""]
    lines += _markdown_table(_check_rows(summary))
    return "\n".join(lines) + "\n"


class CensusPdfReport(ReportGenerator):
    """PDF rendering of a census summary, with a strata-per-dimension chart."""

    def __init__(self, summary: CensusSummary, output_dir: str = "reports"):
        """
        Initialize the census PDF report.

        Args:
            summary: Collected census
            output_dir: Directory to save the generated report
        """
        super().__init__(f"tropmod census g{summary.genus} n{summary.leaves}", output_dir)
        self.summary = summary
        logger.info(f"Initialized CensusPdfReport for (g, n) = ({summary.genus}, {summary.leaves})")

    def dimension_counts(self) -> Dict[str, Dict[int, int]]:
        return {short_key(result.base_key): result.poset.dimension_counts() for result in self.summary.coverage.bases}

    def _build_story(self) -> List[Any]:
        story: List[Any] = []
        summary = self.summary

        story.append(Paragraph("Censuses", self.styles['SectionHeader']))
        story.append(Paragraph(f"Regular tropicalizations: {len(summary.regular)}", self.styles['SubsectionHeader']))
        story.append(self.table(_graph_rows(summary.regular)))
        story.append(Paragraph(f"Stable weighted graphs: {len(summary.stable)}", self.styles['SubsectionHeader']))
        story.append(self.table(_graph_rows(summary.stable)))

        story.append(Paragraph("Strata", self.styles['SectionHeader']))
        for i, result in enumerate(summary.coverage.bases):
            story.append(Paragraph(f"Base {short_key(result.base_key)}", self.styles['SubsectionHeader']))
            story.append(self.table(_strata_rows(summary, i)))
        chart = self.create_dimension_chart(self.dimension_counts(), f"strata_g{summary.genus}_n{summary.leaves}")
        story.extend(self.chart_flowable(chart))

        story.append(Paragraph("Coverage", self.styles['SectionHeader']))
        story.append(self.table(_coverage_rows(summary)))
        story.append(Spacer(1, 8))
        story.append(Paragraph(
            f"Union over all bases: {len(summary.coverage.union)}/{len(summary.coverage.stable_classes)} stable classes.",
            self.styles['ReportBody']))

        story.append(Paragraph("Identity checks", self.styles['SectionHeader']))
        story.append(self.table(_check_rows(summary)))
        return story

    def generate_complete_report(self) -> str:
        """
        Generate the PDF.

        Returns:
            Path to the generated PDF report
        """
        try:
            report_path = self.generate_report()
            logger.info(f"Successfully generated census report at: {report_path}")
            return report_path
        except Exception as e:
            logger.error(f"Error generating census report: {str(e)}")
            raise

    def get_report_metadata(self) -> Dict[str, Any]:
        return {
            'genus': self.summary.genus,
            'leaves': self.summary.leaves,
            'report_date': self.report_date.isoformat(),
            'regular_count': len(self.summary.regular),
            'stable_count': len(self.summary.stable),
            'union_coverage': len(self.summary.coverage.union),
            'filename': self.get_filename(),
            'output_path': str(self.get_output_path()),
        }
