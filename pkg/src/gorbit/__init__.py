"""gorbit: exact-arithmetic geodesic-orbit analysis on flag-manifold M-spaces.

Pipeline: painted Dynkin diagram -> root system (`rootsys`) -> compact real
form with integer structure constants (`chevalley`) -> t-root and summand
structure (`flag`) -> M-space tangent decomposition (`mspace`) -> invariant
metric operators (`metric`) -> geodesic-orbit feasibility with witnesses and
counterexamples (`geocheck`, `theorems`).  The `cli` module ties it together.
"""

from ._kernel import kernel_backend

__all__ = ["kernel_backend"]
__version__ = "0.1.0"
