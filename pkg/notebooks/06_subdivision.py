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
# # Subdividing arcs
#
# Cutting an arc in two adds a vertex but changes nothing about the
# directed space. Normal forms contract such pass-through vertices back.

# %%
from pvcube.deform import DirectedMultigraph, normalize, subdivide, t_equivalent

g = DirectedMultigraph.build(
    [("u", "alpha", "beta"), ("v", "beta", "gamma"), ("w", "beta", "gamma")],
    initial=["alpha"], final=["gamma"],
)
h = subdivide(g, "u", 2)
print(dict(h.arcs))
print(dict(normalize(h).arcs))
print("equivalent:", t_equivalent(g, h))

# %% [markdown]
# Dropping an arc is a real change. A directed cycle normalizes to a loop.

# %%
no_w = DirectedMultigraph.build([("u", "alpha", "beta"), ("v", "beta", "gamma")], initial=["alpha"], final=["gamma"])
print("equivalent:", t_equivalent(g, no_w))
cycle = DirectedMultigraph.build([("a", "x", "y"), ("b", "y", "z"), ("c", "z", "x")])
print(dict(normalize(cycle).arcs))
