# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # The cube as a globe
#
# The cube `[0,1]^n` is a globe over the disk `D^(n-1)`. A point's time is
# the mean of its coordinates, and its base point records where it sits in
# its slice relative to the diagonal.

# %%
import numpy as np

from pvcube.globegeo import IOTA, SIGMA, cube_to_globe, globe_to_cube, h_map, interior, leq_gl, m_value, underlying_point

print(h_map([1, 0.5]), h_map([1, 0, 0]))
print(m_value([1, 0.5]), m_value([0.75, 0.25]))
print(cube_to_globe([0, 0]), cube_to_globe([0.3, 0.3]), cube_to_globe([1, 0.5]))

# %% [markdown]
# The map is invertible; the round trip is exact to rounding.

# %%
rng = np.random.default_rng(0)
pts = rng.random((5000, 3))
err = max(np.linalg.norm(globe_to_cube(cube_to_globe(t), 3) - t) for t in pts)
print(f"worst round-trip error: {err:.1e}")

# %% [markdown]
# Pulled back to the cube, the order only compares points with the same base.

# %%
print(leq_gl([0.3, 0.5], [0.5, 0.7]), leq_gl([0.2, 0.8], [0.8, 0.2]), leq_gl([0.8, 0.2], [0.2, 0.8]))

# %% [markdown]
# A dipath from bottom to top stays over one base point, and that point is
# the same for any reparametrization.

# %%
x0 = (0.4, -0.2)
ts = np.linspace(0.05, 0.95, 10)
print(underlying_point([IOTA] + [interior(x0, t) for t in ts] + [SIGMA]))
print(underlying_point([IOTA] + [interior(x0, t**2) for t in ts] + [SIGMA]))
