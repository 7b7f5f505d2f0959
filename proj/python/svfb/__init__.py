"""Lagrangian vacuum free-boundary solver and verification suite."""

from ._svfb import (
    ConfigError,
    Grid,
    InitialData,
    SolverError,
    check_compatibility,
    cross_validate,
    distance,
    inequality_suite,
    initial_data,
    make_grid,
    mms_study,
    simulate,
    solve,
    version,
)

__version__ = version().split()[-1]

__all__ = [
    "ConfigError",
    "Grid",
    "InitialData",
    "SolverError",
    "check_compatibility",
    "cross_validate",
    "distance",
    "inequality_suite",
    "initial_data",
    "make_grid",
    "mms_study",
    "simulate",
    "solve",
    "version",
]
