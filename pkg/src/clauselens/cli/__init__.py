"""Batch driver and evaluation harness."""

from .evalharness import EVAL_KINDS, load_fixture, run_eval
from .htmlreport import render_report
from .main import main

__all__ = ["EVAL_KINDS", "load_fixture", "main", "render_report", "run_eval"]
