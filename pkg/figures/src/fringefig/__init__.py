"""Publication-style figure rendering for fringelab sweep output."""

__version__ = "0.1.0"

from .render import FIGURES, FigureJob, RenderInfo, render
from .schema import EXPECTED_HEADER, MissingDataError, SchemaError, read_records

__all__ = [
    "EXPECTED_HEADER",
    "FIGURES",
    "FigureJob",
    "MissingDataError",
    "RenderInfo",
    "SchemaError",
    "read_records",
    "render",
]
