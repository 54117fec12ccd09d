"""Batch figure rendering over dcesim CSV outputs."""

from .recipe import Curve, FigureRecipe, RecipeError, read_csv, render
from .figures import RECIPES, run_figure

__version__ = "0.1.0"

__all__ = [
    "Curve",
    "FigureRecipe",
    "RecipeError",
    "read_csv",
    "render",
    "RECIPES",
    "run_figure",
]
