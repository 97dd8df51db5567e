"""Publication-style figures from dlpad CSV tables; no physics recomputed."""

from .figures import (
    KINDS,
    SCHEMAS,
    EmptyInputError,
    FigureSpec,
    SchemaMismatchError,
    build_figure,
    load_table,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "SCHEMAS",
    "EmptyInputError",
    "FigureSpec",
    "SchemaMismatchError",
    "build_figure",
    "load_table",
    "render",
    "__version__",
]
