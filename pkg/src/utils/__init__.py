"""
Output helpers: braid diagrams, scan charts and PDF reports.
"""

from src.utils.reporter import ScanReport, create_scan_pdf
from src.utils.visualizer import KnotVisualizer

__all__ = [
    "ScanReport",
    "create_scan_pdf",
    "KnotVisualizer",
]
