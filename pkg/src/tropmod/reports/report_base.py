"""
PDF Report Base
===============

Base class for PDF reports built with ReportLab: page setup, paragraph
and table styles, a strata-per-dimension bar chart rendered with
matplotlib, and the document build. Subclasses supply the content.
"""

from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

import matplotlib
matplotlib.use('Agg')  # Use non-interactive backend
import matplotlib.pyplot as plt
from reportlab.lib import colors
from reportlab.lib.colors import Color
from reportlab.lib.enums import TA_CENTER, TA_JUSTIFY
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import inch
from reportlab.platypus import Image, PageBreak, Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle


class ReportGenerator:
    """
    Base class for tropmod PDF reports.

    Subclasses implement ``_build_story`` and may use the table, chart and
    style helpers defined here.
    """

    def __init__(self, title: str, output_dir: str = "reports"):
        """
        Initialize the report generator.

        Args:
            title: Report title, also used for the file name
            output_dir: Directory to save the generated reports
        """
        self.title = title
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

        self.report_date = datetime.now(timezone.utc)
        self.page_width, self.page_height = A4
        self.margin = 1 * inch

        self._setup_styles()

    def _setup_styles(self):
        """Set up paragraph styles for the report."""
        self.styles = getSampleStyleSheet()

        if 'ReportTitle' not in self.styles:
            self.styles.add(ParagraphStyle(
                name='ReportTitle',
                parent=self.styles['Title'],
                fontSize=22,
                spaceAfter=24,
                textColor=colors.darkblue,
                alignment=TA_CENTER,
                fontName='Helvetica-Bold'
            ))

        if 'SectionHeader' not in self.styles:
            self.styles.add(ParagraphStyle(
                name='SectionHeader',
                parent=self.styles['Heading1'],
                fontSize=14,
                spaceBefore=18,
                spaceAfter=10,
                textColor=colors.darkblue,
                fontName='Helvetica-Bold'
            ))

        if 'SubsectionHeader' not in self.styles:
            self.styles.add(ParagraphStyle(
                name='SubsectionHeader',
                parent=self.styles['Heading2'],
                fontSize=12,
                spaceBefore=12,
                spaceAfter=6,
                textColor=colors.darkblue,
                fontName='Helvetica-Bold'
            ))

        if 'ReportBody' not in self.styles:
            self.styles.add(ParagraphStyle(
                name='ReportBody',
                parent=self.styles['Normal'],
                fontSize=10,
                spaceAfter=6,
                alignment=TA_JUSTIFY,
                fontName='Helvetica'
            ))

    def create_table_style(self, header_color: Color = colors.darkblue,
                           alt_row_color: Color = colors.lightgrey) -> TableStyle:
        """Create the standard table style for the report."""
        return TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), header_color),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('ALIGN', (0, 0), (-1, -1), 'LEFT'),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, 0), 10),
            ('BOTTOMPADDING', (0, 0), (-1, 0), 8),
            ('FONTNAME', (0, 1), (-1, -1), 'Helvetica'),
            ('FONTSIZE', (0, 1), (-1, -1), 9),
            ('GRID', (0, 0), (-1, -1), 0.5, colors.black),
            ('ROWBACKGROUNDS', (0, 1), (-1, -1), [colors.white, alt_row_color])
        ])

    def table(self, rows: List[List[Any]]) -> Table:
        styled = Table([[str(cell) for cell in row] for row in rows], repeatRows=1)
        styled.setStyle(self.create_table_style())
        return styled

    def create_dimension_chart(self, counts: Dict[str, Dict[int, int]], name: str) -> Optional[str]:
        """
        Grouped bar chart of strata counts per dimension, one group per base.

        Args:
            counts: base label -> (dimension -> number of strata)
            name: File stem for the chart image

        Returns:
            Path to the chart image or None if there is nothing to plot
        """
        if not counts:
            return None
        dimensions = sorted({d for per_base in counts.values() for d in per_base})
        width = 0.8 / len(counts)

        fig, ax = plt.subplots(figsize=(7, 4))
        for offset, (label, per_base) in enumerate(sorted(counts.items())):
            xs = [d + offset * width for d in dimensions]
            ax.bar(xs, [per_base.get(d, 0) for d in dimensions], width=width, label=label)
        ax.set_xticks([d + 0.4 - width / 2 for d in dimensions])
        ax.set_xticklabels([str(d) for d in dimensions])
        ax.set_xlabel('dimension')
        ax.set_ylabel('strata')
        ax.set_title('Strata per dimension')
        ax.legend(fontsize=7)

        chart_path = self.output_dir / f"{name}.png"
        fig.savefig(chart_path, dpi=150, bbox_inches='tight')
        plt.close(fig)
        return str(chart_path)

    def chart_flowable(self, chart_path: Optional[str]) -> List[Any]:
        if chart_path is None:
            return []
        return [Spacer(1, 12), Image(chart_path, width=6 * inch, height=3.4 * inch)]

    def get_filename(self) -> str:
        stem = "".join(ch if ch.isalnum() else "_" for ch in self.title).strip("_")
        return f"{stem}.pdf"

    def get_output_path(self) -> Path:
        return self.output_dir / self.get_filename()

    def _build_story(self) -> List[Any]:
        raise NotImplementedError

    def generate_report(self) -> str:
        """
        Build the PDF.

        Returns:
            Path to the generated PDF report
        """
        output_path = self.get_output_path()
        doc = SimpleDocTemplate(
            str(output_path),
            pagesize=A4,
            rightMargin=self.margin,
            leftMargin=self.margin,
            topMargin=self.margin,
            bottomMargin=self.margin,
            title=self.title,
        )
        story = [
            Paragraph(self.title, self.styles['ReportTitle']),
            Paragraph(f"Generated {self.report_date.strftime('%Y-%m-%d %H:%M UTC')}", self.styles['ReportBody']),
            PageBreak(),
        ]
        story.extend(self._build_story())
        doc.build(story)
        return str(output_path)
