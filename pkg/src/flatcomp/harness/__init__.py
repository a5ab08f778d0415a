"""Exhaustive enumeration and the named verification suites."""

from .enumeration import (
    DEFAULT_GRID,
    InstanceGrid,
    enumerate_maps,
    enumerate_modules,
    enumerate_monotone_maps,
    enumerate_preorders,
    enumerate_right_modules,
    enumerate_spaces,
    parse_grid,
)
from .suites import SUITES, SuiteReport, UnknownSuite, get_suite, run_suite, suite_names

__all__ = [
    "DEFAULT_GRID",
    "InstanceGrid",
    "SUITES",
    "SuiteReport",
    "UnknownSuite",
    "enumerate_maps",
    "enumerate_modules",
    "enumerate_monotone_maps",
    "enumerate_preorders",
    "enumerate_right_modules",
    "enumerate_spaces",
    "get_suite",
    "parse_grid",
    "run_suite",
    "suite_names",
]
