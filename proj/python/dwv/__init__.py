"""Exact verification suites for the vielbein De Donder-Weyl computations."""

from ._dwv import ConfigError, engine_checks, model_dimension, report_json, run, suite_names

__all__ = ["ConfigError", "engine_checks", "model_dimension", "report_json", "run", "suite_names"]
