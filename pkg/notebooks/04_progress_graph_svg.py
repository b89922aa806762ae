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
# # Drawing progress graphs
#
# Two-process programs render to SVG: grey forbidden squares, a hatched
# box on unsafe states, a circle on unreachable ones, and one coloured line
# per schedule. The files land in the working directory.

# %%
from pathlib import Path

from pvcube import parse_pv, pv_to_precubical, render_svg
from pvcube.analysis import dihomotopy_classes
from pvcube.semantics import final_vertex, initial_vertex

programs = {
    "swiss_flag": "Pa.Pb.Vb.Va | Pb.Pa.Va.Vb",
    "two_holes": "Pa.Va.Pb.Vb | Pa.Va.Pb.Vb",
    "crossed_holes": "Pb.Vb.Pa.Va | Pa.Va.Pb.Vb",
}
for name, src in programs.items():
    prog = parse_pv(src)
    M = pv_to_precubical(prog)
    classes = dihomotopy_classes(M, initial_vertex(prog), final_vertex(prog))
    svg = render_svg(prog, M, classes)
    Path(f"{name}.svg").write_text(svg)
    shaded = svg.count('class="forbidden"')
    print(f"{name}.svg: {shaded} forbidden squares, {len(classes)} schedules")

# %% [markdown]
# The same from the shell:
#
# ```
# pvcube render swiss.pv -o swiss.svg
# ```
