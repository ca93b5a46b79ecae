"""Patching problems for vector spaces and their solvers."""

from .problem import SHAPES, Certificate, PatchingProblem, Solution, beta_induce, make_problem, shape_patches
from .solve import solve, solve_local_global, solve_multi_patch, solve_two_patch, verify_solution

__all__ = [
    "SHAPES",
    "Certificate",
    "PatchingProblem",
    "Solution",
    "beta_induce",
    "make_problem",
    "shape_patches",
    "solve",
    "solve_local_global",
    "solve_multi_patch",
    "solve_two_patch",
    "verify_solution",
]
