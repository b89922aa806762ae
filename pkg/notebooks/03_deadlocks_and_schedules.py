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
# # Deadlocks, unsafe states and schedules
#
# Executions are monotone paths through the surviving edges. Two of them
# are the same schedule when square flips turn one into the other.

# %%
from pvcube import parse_pv, pv_to_precubical
from pvcube.analysis import deadlocks, dihomotopy_classes, enumerate_dipaths, unreachable_states, unsafe_states
from pvcube.semantics import final_vertex, initial_vertex


def compiled(src):
    prog = parse_pv(src)
    return pv_to_precubical(prog), initial_vertex(prog), final_vertex(prog)


M, init, final = compiled("Pa.Pb.Vb.Va | Pb.Pa.Va.Vb")
print("deadlocks:  ", sorted(deadlocks(M, final)))
print("unsafe:     ", sorted(unsafe_states(M, final)))
print("unreachable:", sorted(unreachable_states(M, init)))

# %% [markdown]
# The unsafe region shrinks to the single vertex `(2,2)` once discretized;
# `(3,3)` is the matching unreachable corner on the other side of the
# forbidden cross.

# %%
paths = enumerate_dipaths(M, init, final)
classes = dihomotopy_classes(M, init, final)
print(len(paths), "dipaths in", len(classes), "schedules")
for rep, group in zip(classes.representatives, classes):
    print(len(group), " ".join(rep.vertices))

# %% [markdown]
# Two holes in a row give four schedules; crossing the holes in opposite
# orders leaves three.

# %%
for src in ("Pa.Va.Pb.Vb | Pa.Va.Pb.Vb", "Pb.Vb.Pa.Va | Pa.Va.Pb.Vb", "Pa.Va | Pb.Vb"):
    print(f"{src:28s}", len(dihomotopy_classes(*compiled(src))))

# %% [markdown]
# `k` independent holes stacked along the diagonal give `2**k` schedules.

# %%
for k in range(1, 4):
    proc = ".".join(f"P{r}.V{r}" for r in "abc"[:k])
    print(k, len(dihomotopy_classes(*compiled(f"{proc} | {proc}"))))
