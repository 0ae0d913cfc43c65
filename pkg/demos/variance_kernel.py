"""
Variance kernel of the truncation error
=======================================

The gap between the singular weight (2 sin(delta/2))^{-gamma^2/2} and its
k-term exponential truncation controls second moments of measure
differences.  This script shows the pointwise decay of the kernel, the
decay of its weighted integral, and the merging-regime prediction for
nearby singularities.

Run:  python demos/variance_kernel.py
"""

import numpy as np

from cuechaos import (
    ExponentPair,
    merging_prediction,
    uniform_grid,
    variance_integral,
    variance_kernel,
)

TWO_PI = 2.0 * np.pi

# ----------------------------------------------------------------------
# 1. pointwise decay at a fixed angular separation
# ----------------------------------------------------------------------
print("K(pi) for gamma^2 = 1 as the truncation grows:")
for k in (4, 16, 64, 256, 1024):
    print(f"  k={k:5d}  K = {variance_kernel(np.pi, 1.0, k): .3e}")

# ----------------------------------------------------------------------
# 2. the weighted integral that bounds the mass-difference variance
# ----------------------------------------------------------------------
grid = uniform_grid(4096)
print("\nvariance integral with unit weight, normalized by (2 pi)^2:")
previous = None
for k in (8, 16, 32, 64):
    value, diag = variance_integral(1.0, 1.0, k, grid, return_diag_bound=True)
    normalized = value / TWO_PI**2
    marker = "" if previous is None else ("  (down)" if normalized < previous else "  (UP)")
    print(f"  k={k:3d}  integral {normalized:.4f}  diagonal bound {diag / TWO_PI**2:.4f}{marker}")
    previous = normalized

# ----------------------------------------------------------------------
# 3. merging singularities: the constant stays pinned as delta shrinks
# ----------------------------------------------------------------------
p = ExponentPair(1.0, 0.0)
n = 4096
print(f"\nmerging-regime prediction at n = {n} (gamma^2/2 = 0.5):")
print("  delta    prediction   (gamma^2/2) log(n / (2 sin(delta/2)))")
for delta in (0.8, 0.4, 0.2, 0.1):
    pred = merging_prediction(n, delta, p)
    leading = 0.5 * (np.log(n) - np.log(2.0 * np.sin(delta / 2.0)))
    print(f"  {delta:4.2f}    {pred:9.5f}    {leading:9.5f}")
print("  the gap between the columns is the doubled Barnes-ratio constant")
