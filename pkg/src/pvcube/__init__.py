"""Static analysis of PV programs through precubical sets.

Compile semaphore programs to higher dimensional automata, find deadlocks
and unsafe or unreachable states, count schedules up to dihomotopy, and
work with the globe order on cubes.
"""
__version__ = "0.1.0"

from .pvlang import Action, PvProgram, parse_pv, format_pv
from .precubical import (
    PrecubicalSet,
    PrecubicalMorphism,
    validate,
    truncate,
    standard_cube,
    check_morphism,
    skeleton_graph,
)
from .semantics import GridCell, hold_count, cell_allowed, pv_to_precubical, initial_vertex, final_vertex
from .analysis import (
    Dipath,
    ScheduleClasses,
    reachable,
    unreachable_states,
    unsafe_states,
    deadlocks,
    enumerate_dipaths,
    dihomotopy_classes,
)
from .globegeo import (
    GlobePoint,
    IOTA,
    SIGMA,
    globe_leq,
    h_map,
    m_value,
    cube_to_globe,
    globe_to_cube,
    leq_gl,
    underlying_point,
)
from .deform import DirectedMultigraph, subdivide, normalize, t_equivalent
from .report import AnalysisReport, build_report
from .render import render_svg
