"""Uniform angle grids on [0, 2*pi) shared by the measure modules."""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi

__all__ = ["TWO_PI", "uniform_grid", "grid_step"]


def uniform_grid(m: int) -> np.ndarray:
    """m equispaced angles theta_i = 2*pi*i/m, i = 0..m-1."""
    m = int(m)
    if m < 1:
        raise ValueError(f"grid size must be positive, got {m}")
    return np.arange(m) * (TWO_PI / m)


def grid_step(grid: np.ndarray) -> float:
    """Cell width of a uniform grid (2*pi / size)."""
    grid = np.asarray(grid)
    if grid.ndim != 1 or grid.size < 1:
        raise ValueError("grid must be a nonempty 1-d array")
    return TWO_PI / grid.size
