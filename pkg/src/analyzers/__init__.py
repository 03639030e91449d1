"""
Knot engines: braid construction, invariants, catalog identification, the
numeric oracle and the pipeline that ties them together.
"""

from src.analyzers.braidgen import BraidWord, Crossing, braid_word, signed_schedule, writhe
from src.analyzers.catalog import Catalog, identify, load_catalog, predict_type
from src.analyzers.invariants import alexander, jones, rolfsen_coeffs
from src.analyzers.oracle import CurveSampler, certify_schedule
from src.analyzers.pipeline import KnotPipeline, ScanResult, SweepResult

__all__ = [
    "BraidWord",
    "Crossing",
    "braid_word",
    "signed_schedule",
    "writhe",
    "Catalog",
    "identify",
    "load_catalog",
    "predict_type",
    "alexander",
    "jones",
    "rolfsen_coeffs",
    "CurveSampler",
    "certify_schedule",
    "KnotPipeline",
    "ScanResult",
    "SweepResult",
]
