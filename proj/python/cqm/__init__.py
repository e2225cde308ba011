"""Classical and quantum structures of Galilei and Einstein spacetime models."""

from ._core import (
    BoxExit,
    EinsteinGeometry,
    Framework,
    FrameworkMismatch,
    GalileiGeometry,
    LightconeViolation,
    Model,
    ParseError,
    Record,
    SuiteReport,
    Trajectory,
    UsageError,
    ValidationError,
    load_model,
    orbit,
    parse_model,
    suites,
    verify,
)

__all__ = [
    "BoxExit",
    "EinsteinGeometry",
    "Framework",
    "FrameworkMismatch",
    "GalileiGeometry",
    "LightconeViolation",
    "Model",
    "ParseError",
    "Record",
    "SuiteReport",
    "Trajectory",
    "UsageError",
    "ValidationError",
    "load_model",
    "orbit",
    "parse_model",
    "suites",
    "verify",
]
