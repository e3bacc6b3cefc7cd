"""Static-figure rendering for curve CSVs produced by the qdarwin CLI."""

from .render import FigureSpec, Series, load_series, render, rescale_endpoint

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "Series",
    "load_series",
    "render",
    "rescale_endpoint",
    "__version__",
]
