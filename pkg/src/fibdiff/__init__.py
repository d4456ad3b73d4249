"""Certified solution of F_n - F_m = 2^a in Fibonacci numbers."""

__version__ = "0.1.0"

from .errors import FibDiffError  # noqa: E402
from .search import SolutionTriple, brute_force, is_solution  # noqa: E402

__all__ = ["__version__", "FibDiffError", "SolutionTriple", "brute_force", "is_solution"]
