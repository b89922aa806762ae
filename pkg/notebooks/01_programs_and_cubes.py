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
# # From PV programs to precubical sets
#
# A PV program runs processes in parallel. Each one is a sequence of
# semaphore acquisitions `P` and releases `V`. Its state space is a grid with
# one axis per process, and the states where a semaphore is over-consumed
# are cut out.

# %%
from pvcube import parse_pv, format_pv, pv_to_precubical, validate
from pvcube.semantics import GridCell, cell_allowed, hold_count

swiss = parse_pv("Pa.Pb.Vb.Va | Pb.Pa.Va.Vb")
print(format_pv(swiss))
print("lengths:", swiss.lengths, "capacities:", dict(swiss.resources))

# %% [markdown]
# Action `k` completes at local time `k`, and each process gets one extra
# tick after its last action. A resource is held strictly between its `P`
# and its `V`.

# %%
for t in (1, 1.5, 2, 2.5, 3.5, 4):
    print(f"t={t}: process 1 holds a={hold_count(swiss, 1, 'a', t)} b={hold_count(swiss, 1, 'b', t)}")

# %% [markdown]
# A cell (a vertex, an edge or a square of the grid) survives when its
# midpoint over-consumes nothing.

# %%
for cell in (GridCell((2, 2)), GridCell((2, 2), {2}), GridCell((2, 2), {1, 2}), GridCell((0, 0), {1, 2})):
    print(cell, cell_allowed(swiss, cell))

# %%
M = pv_to_precubical(swiss)
print("cells per dimension:", M.counts())
print("cube axiom violations:", validate(M))
removed = sorted(
    f"({i},{j})" for i in range(5) for j in range(5) if f"({i},{j})+{{1,2}}" not in M.dims
)
print("squares cut out (lower corners):", removed)

# %% [markdown]
# Face maps drop one spanned direction, at its lower (`alpha=0`) or upper
# (`alpha=1`) value.

# %%
sq = "(0,0)+{1,2}"
for i in (1, 2):
    print(sq, f"d[0,{i}] =", M.face(sq, i, 0), f" d[1,{i}] =", M.face(sq, i, 1))

# %% [markdown]
# The compact grid (no terminal tick) is available too.

# %%
print(pv_to_precubical(parse_pv("Pa.Va | Pa.Va"), terminal_tick=False).counts())
print(pv_to_precubical(parse_pv("#sem a 2\nPa | Pa"), terminal_tick=False).counts())
