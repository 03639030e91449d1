"""
PDF Scan Report

Renders a p-scan as a PDF: parameters, the class list, the periodicity
summary, the scan table and an embedded writhe chart.

Usage:
    from src.utils.reporter import create_scan_pdf

    result = pipeline.scan(3, 4, range(5, 30))
    create_scan_pdf(result, "reports/scan_3_4.pdf")
"""

import logging
import os
import tempfile
from datetime import datetime
from typing import Optional

from fpdf import FPDF

from src.analyzers.pipeline import ScanResult
from src.utils.visualizer import KnotVisualizer

logger = logging.getLogger(__name__)


def _latin1(text: str) -> str:
    # core fonts are latin-1 only
    return (
        text.replace("≡", "=").replace("Δ", "Delta").replace("ε", "eps")
        .encode("latin-1", "replace").decode("latin-1")
    )


class ScanReport(FPDF):
    """
    FPDF document with the knot scan layout.

    Methods:
        header: Title line on every page
        footer: Page number
        chapter_title: Shaded section heading
        chapter_body: Wrapped paragraph
        table: Fixed-width rows for the scan table
        add_image_section: Titled image if the file exists
    """

    title_text = "Simple Minimal Knots: p-Scan"
    COLUMN_WIDTHS = (12, 14, 58, 56, 50)

    def header(self):
        self.set_font("Arial", "B", 15)
        self.cell(0, 10, self.title_text, 0, 1, "C")
        self.ln(4)

    def footer(self):
        self.set_y(-15)
        self.set_font("Arial", "I", 8)
        self.cell(0, 10, f"Page {self.page_no()}", 0, 0, "C")

    def chapter_title(self, title: str):
        self.set_font("Arial", "B", 12)
        self.set_fill_color(200, 220, 255)
        self.cell(0, 6, _latin1(title), 0, 1, "L", 1)
        self.ln(3)

    def chapter_body(self, body: str):
        self.set_font("Arial", "", 10)
        self.multi_cell(0, 5, _latin1(body))
        self.ln()

    def table(self, header, rows):
        self.set_font("Arial", "B", 9)
        for width, name in zip(self.COLUMN_WIDTHS, header):
            self.cell(width, 6, name, 1, 0, "C")
        self.ln()
        self.set_font("Arial", "", 8)
        for row in rows:
            for width, value in zip(self.COLUMN_WIDTHS, row):
                self.cell(width, 5, _latin1(str(value))[:40], 1, 0, "L")
            self.ln()
        self.ln(3)

    def add_image_section(self, title: str, image_path: Optional[str], w: int = 170):
        if image_path and os.path.exists(image_path):
            self.chapter_title(title)
            self.image(image_path, x=20, w=w)
            self.ln(5)


def create_scan_pdf(result: ScanResult, output_path: str) -> Optional[str]:
    """
    Write the scan PDF.

    Returns:
        str: Path of the PDF, or None if saving failed
    """
    directory = os.path.dirname(output_path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    pdf = ScanReport()
    pdf.add_page()

    period = 2 * result.q * result.N
    pdf.chapter_title(f"1. Scan of K({result.N}, p, {result.q})")
    ps = [row["p"] for row in result.rows]
    summary = (
        f"Generated: {datetime.now().isoformat(timespec='seconds')}\n"
        f"Admissible p: {len(result.rows)}"
        + (f" ({min(ps)}..{max(ps)})" if ps else "")
        + f"\nSkipped p: {len(result.skipped)}\n"
        f"Classes: {', '.join(result.classes) or 'none'}"
    )
    pdf.chapter_body(summary)

    pdf.chapter_title("2. Periodicity")
    lines = []
    for key, info in result.periodicity.items():
        label = "p -> p + 2qN" if key == "period" else "p -> p + lcm(N, 2q)"
        lines.append(
            f"{label} (modulus {info['modulus']}): {info['checked']} pairs checked, "
            f"{len(info['mismatches'])} mismatches"
        )
    pdf.chapter_body("\n".join(lines) or "No pairs within the scanned range.")

    pdf.chapter_title("3. Results")
    rows = [
        (
            row["p"],
            row.get("writhe", ""),
            row.get("alexander", row.get("error", "")),
            row.get("identification", row["status"]),
            row.get("predicted") or "",
        )
        for row in result.rows
    ]
    pdf.table(("p", "writhe", "Alexander", "identification", "predicted"), rows)

    chart = None
    if result.rows:
        handle, chart = tempfile.mkstemp(suffix=".png")
        os.close(handle)
        KnotVisualizer.plot_writhe_chart(
            result.frame(), period, chart,
            title=f"K({result.N}, p, {result.q}): writhe by p",
        )
        pdf.add_image_section("4. Writhe Chart", chart)

    try:
        pdf.output(output_path)
        logger.info(f"Scan report written to {output_path}")
        return output_path
    except Exception as e:
        logger.error(f"Error saving PDF: {e}")
        return None
    finally:
        if chart and os.path.exists(chart):
            os.remove(chart)
