"""
Visualization for braids and scans.

Renders the braid diagram of a knot as the strand height graphs over the
crossing window, and the writhe of a p-scan as a bar chart.

Features:
    - Braid diagram: h_k(t) = sin(2πq(t+k)/N) over [ε, 1+ε), one unit wide,
      with a gap in the under-strand at every crossing
    - SVG 1.1 output, or a raster preview when the path ends in .png
    - Writhe/period chart for scan reports

Usage:
    from src.utils.visualizer import KnotVisualizer

    vis = KnotVisualizer()
    vis.render_braid_diagram(params, signed_schedule(params), "k354.svg")
    vis.plot_writhe_chart(scan.frame(), period=24, output_path="writhe.png")
"""

import logging
import os
from typing import List, Optional

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from src.analyzers.braidgen import Crossing
from src.core.params import KnotParams, epsilon_offset

logger = logging.getLogger(__name__)


class KnotVisualizer:
    """
    Static matplotlib renderers.

    Class Attributes:
        SAMPLES (int): Curve samples per strand
        GAP_FRACTION (float): Under-strand gap half-width as a share of the
            closest spacing between crossing instants

    Methods:
        over_strand: Which strand of a signed crossing is in front
        render_braid_diagram: Strand graphs with crossing gaps to SVG/PNG
        plot_writhe_chart: Writhe against p for a scan
    """

    SAMPLES = 4000
    GAP_FRACTION = 0.3

    @staticmethod
    def over_strand(params: KnotParams, c: Crossing) -> int:
        """
        Front strand of a signed crossing.

        The sign is positive when the front strand rises, so the front strand
        is k exactly when sign and the slope of strand k agree.
        """
        slope = np.cos(2 * np.pi * params.q * (float(c.time) + c.k) / params.N)
        return c.k if c.sign * slope > 0 else c.l

    @staticmethod
    def _gap_width(crossings: List[Crossing]) -> float:
        times = sorted({float(c.time) for c in crossings})
        if len(times) < 2:
            return 0.02
        return KnotVisualizer.GAP_FRACTION * min(b - a for a, b in zip(times, times[1:]))

    @staticmethod
    def render_braid_diagram(
        params: KnotParams, crossings: List[Crossing], output_path: str
    ) -> str:
        """
        Draw the N strand graphs and save them.

        Args:
            params (KnotParams): Knot whose strands are drawn
            crossings (List[Crossing]): Signed schedule; unsigned crossings are an error
            output_path (str): .svg for SVG 1.1, .png for a raster preview

        Returns:
            str: The written path
        """
        if any(c.sign is None for c in crossings):
            raise ValueError("braid diagram needs a signed schedule")

        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        N, q = params.N, params.q
        eps = float(epsilon_offset(N, q))
        t = eps + np.linspace(0.0, 1.0, KnotVisualizer.SAMPLES)
        gap = KnotVisualizer._gap_width(crossings)

        under = {k: [] for k in range(N)}
        for c in crossings:
            front = KnotVisualizer.over_strand(params, c)
            back = c.l if front == c.k else c.k
            under[back].append(float(c.time))

        fig, ax = plt.subplots(figsize=(10, 1.2 + 0.8 * N))
        colors = plt.cm.viridis(np.linspace(0.1, 0.85, N))
        for k in range(N):
            h = np.sin(2 * np.pi * q * (t + k) / N)
            for tc in under[k]:
                h = np.where(np.abs(t - tc) < gap, np.nan, h)
            ax.plot(t, h, color=colors[k], linewidth=2, label=f"strand {k}")

        ax.set_xlim(eps, eps + 1)
        ax.set_ylim(-1.15, 1.15)
        ax.set_xlabel("t")
        ax.set_ylabel("height")
        ax.set_title(f"{params.label}: {len(crossings)} crossings")
        ax.legend(loc="upper right", fontsize=7, ncol=min(N, 4))
        plt.tight_layout()

        fmt = "png" if output_path.lower().endswith(".png") else "svg"
        plt.savefig(output_path, format=fmt, dpi=150)
        plt.close(fig)
        logger.info(f"Braid diagram for {params.label} written to {output_path}")
        return output_path

    @staticmethod
    def plot_writhe_chart(
        frame: pd.DataFrame,
        period: int,
        output_path: str,
        title: Optional[str] = None,
    ) -> str:
        """Bar chart of writhe against p, with dashed lines every `period` values of p."""
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        ok = frame[frame["status"] == "ok"]
        fig, ax = plt.subplots(figsize=(10, 4))
        classes = list(dict.fromkeys(ok["identification"]))
        palette = plt.cm.tab10(np.linspace(0, 1, max(len(classes), 1)))
        for color, name in zip(palette, classes):
            part = ok[ok["identification"] == name]
            ax.bar(part["p"], part["writhe"], color=color, label=name)

        if not ok.empty:
            start = int(ok["p"].min())
            for x in range(start + period, int(ok["p"].max()) + 1, period):
                ax.axvline(x - 0.5, color="gray", linestyle="--", linewidth=1)

        ax.axhline(0, color="black", linewidth=0.8)
        ax.set_xlabel("p")
        ax.set_ylabel("writhe")
        ax.set_title(title or "Writhe by p")
        if classes:
            ax.legend(fontsize=7, loc="best")
        plt.tight_layout()
        plt.savefig(output_path, dpi=150)
        plt.close(fig)
        return output_path
