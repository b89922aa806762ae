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
# # Standard cubes, truncation and the cube axiom

# %%
from pvcube import PrecubicalSet, standard_cube, truncate, validate
from pvcube.precubical import PrecubicalMorphism, check_morphism, dumps, loads

for n in range(5):
    print(n, standard_cube(n).counts())

# %% [markdown]
# Cells of the standard cube are words over `0`, `1` and `*`; the face
# `d[alpha,i]` fixes the `i`-th star to `alpha`.

# %%
C3 = standard_cube(3)
print(C3.face("***", 2, 1), C3.face("0*1", 1, 0))
print("valid:", validate(C3) == [])

# %% [markdown]
# Rerouting one face breaks the cube axiom, and `validate` names the
# identities that fail.

# %%
faces = dict(C3.faces)
faces[("***", 1, 0)] = "1**"
broken = PrecubicalSet(C3.dims.items(), faces)
for v in validate(broken)[:4]:
    print(v)

# %% [markdown]
# Truncation keeps the low-dimensional cells; the inclusion is a morphism.

# %%
T = truncate(C3, 1)
print(T.counts())
print(check_morphism(PrecubicalMorphism(T, C3, {c: c for c in T})))

# %% [markdown]
# JSON persistence (schema `hda/1`) refuses invalid input unless forced.

# %%
text = dumps(C3)
assert loads(text) == C3
try:
    loads(dumps(broken))
except ValueError as exc:
    print(type(exc).__name__, str(exc).splitlines()[0])
