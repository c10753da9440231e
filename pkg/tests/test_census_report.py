"""
Test Census Report Generation
=============================

Markdown and PDF renderings of the genus-two census.
"""

import pytest

from tropmod.reports.census_report import CensusPdfReport, collect_census, render_markdown


@pytest.fixture(scope="module")
def genus_two():
    return collect_census(2, 0)


def test_summary_contents(genus_two):
    assert len(genus_two.regular) == 2
    assert len(genus_two.stable) == 7
    assert all(report.holds for report in genus_two.order.values())


def test_markdown_sections(genus_two):
    text = render_markdown(genus_two)
    assert text.startswith("# Census for (g, n) = (2, 0)\n")
    assert "## Regular tropicalizations (2)" in text
    assert "## Stable weighted graphs (7)" in text
    assert text.count("### Base ") == 2
    assert "Union over all bases: 7/7 stable classes." in text
    assert "FAILS" not in text


def test_markdown_is_deterministic(genus_two):
    assert render_markdown(genus_two) == render_markdown(collect_census(2, 0))


def test_pdf_report(genus_two, tmp_path):
    report = CensusPdfReport(genus_two, output_dir=str(tmp_path))
    path = report.generate_complete_report()

    assert path.endswith(".pdf")
    with open(path, "rb") as handle:
        assert handle.read(5) == b"%PDF-"
    assert (tmp_path / "strata_g2_n0.png").exists()

    metadata = report.get_report_metadata()
    assert metadata["regular_count"] == 2
    assert metadata["stable_count"] == 7
    assert metadata["union_coverage"] == 7
    assert metadata["output_path"] == path


def test_dimension_counts(genus_two):
    counts = CensusPdfReport.__new__(CensusPdfReport)
    counts.summary = genus_two
    per_base = sorted(sorted(c.items()) for c in counts.dimension_counts().values())
    assert per_base == [[(0, 1), (1, 1), (2, 1), (3, 1)], [(0, 1), (1, 2), (2, 2), (3, 1)]]
