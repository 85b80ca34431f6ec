"""Galerkin-truncated incompressible flows with Gevrey-envelope diagnostics.

Thin wrapper over the compiled core: spectral velocity fields on the
cube-truncated integer lattice, weighted norms, the exponential
re-weighting transforms, fixed-step integration of the inviscid and
Voigt-damped equations, and the envelope-certification pipeline.
"""

from ._core import (
    Field,
    abc_flow,
    apply_gevrey_weight,
    energy,
    enforce_hermitian,
    fit_radius,
    gevrey_norm,
    gevrey_random,
    gevrey_triple_norm,
    integrate,
    lattice_sum_cs,
    load_field,
    max_divergence_ratio,
    nonlinear_term,
    project_solenoidal,
    run_config,
    save_field,
    sobolev_norm,
    solve_psi_sobolev,
    solve_psi_triple,
    step,
    taylor_green,
    triple_norm,
)

__all__ = [
    "Field",
    "abc_flow",
    "apply_gevrey_weight",
    "energy",
    "enforce_hermitian",
    "fit_radius",
    "gevrey_norm",
    "gevrey_random",
    "gevrey_triple_norm",
    "integrate",
    "lattice_sum_cs",
    "load_field",
    "max_divergence_ratio",
    "nonlinear_term",
    "project_solenoidal",
    "run_config",
    "save_field",
    "sobolev_norm",
    "solve_psi_sobolev",
    "solve_psi_triple",
    "step",
    "taylor_green",
    "triple_norm",
]
