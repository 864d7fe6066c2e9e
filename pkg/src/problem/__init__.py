"""Problem definition: potentials, grids, jets and the nonlocal operators."""
from src.problem.grid import Grid, GridFunction, integrate, make_grid, weights
from src.problem.jets import TaylorJet
from src.problem.nonlocal_op import (
    OperatorContext,
    apply_B,
    apply_L,
    apply_M,
    apply_M_jet,
    build_context,
    contraction_ratio,
)
from src.problem.potential import Potential, PotentialKind, evaluate, parse_potential, sup_norm

__all__ = [
    "Grid",
    "GridFunction",
    "integrate",
    "make_grid",
    "weights",
    "TaylorJet",
    "OperatorContext",
    "apply_B",
    "apply_L",
    "apply_M",
    "apply_M_jet",
    "build_context",
    "contraction_ratio",
    "Potential",
    "PotentialKind",
    "evaluate",
    "parse_potential",
    "sup_norm",
]
