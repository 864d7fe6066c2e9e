"""Eigenvalue methods: shooting, convergent series, asymptotics and the Galerkin oracle."""
from src.spectrum.asymptotics import (
    AsymptoticTerms,
    compute_G,
    f0_expansion,
    gamma_curve,
    lambda_four_term,
    lambda_two_term,
)
from src.spectrum.cauchy import CauchySolution, char_fn, char_fn_jet, eigenfunction, solve_cauchy
from src.spectrum.galerkin import assemble, dense_eigs, galerkin_eigenvalues
from src.spectrum.models import EigenvalueRecord, Method
from src.spectrum.roots import (
    RootBox,
    census,
    count_roots,
    find_n_check,
    find_root,
    make_box,
    shooting_eigenvalues,
)
from src.spectrum.series import (
    CoefficientTable,
    build_table,
    compute_E,
    compute_fj_jets,
    compute_rho,
    expansion_eigenvalues,
    lambda_expansion,
    series_eigenvalue,
    series_eigenvalues,
    weak_compositions,
)

__all__ = [
    "AsymptoticTerms",
    "compute_G",
    "f0_expansion",
    "gamma_curve",
    "lambda_four_term",
    "lambda_two_term",
    "CauchySolution",
    "char_fn",
    "char_fn_jet",
    "eigenfunction",
    "solve_cauchy",
    "assemble",
    "dense_eigs",
    "galerkin_eigenvalues",
    "EigenvalueRecord",
    "Method",
    "RootBox",
    "census",
    "count_roots",
    "find_n_check",
    "find_root",
    "make_box",
    "shooting_eigenvalues",
    "CoefficientTable",
    "build_table",
    "compute_E",
    "compute_fj_jets",
    "compute_rho",
    "expansion_eigenvalues",
    "lambda_expansion",
    "series_eigenvalue",
    "series_eigenvalues",
    "weak_compositions",
]
