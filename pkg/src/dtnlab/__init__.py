"""Dirichlet/Neumann eigenvalue counting on discrete domains via the
Dirichlet-to-Neumann map, with exact integer checks of the comparison
identities."""

__version__ = "0.1.0"

from .errors import (AssemblyFailure, ConfigError, DirichletEigenvalue, DtnLabError,  # noqa: E402
                     InvalidArgument, InvalidDomain, InvalidMass, SolverFailure, SpectralPoint)
from .tolerances import DEFAULT, Tolerances  # noqa: E402

__all__ = [
    "AssemblyFailure", "ConfigError", "DEFAULT", "DirichletEigenvalue", "DtnLabError",
    "InvalidArgument", "InvalidDomain", "InvalidMass", "SolverFailure", "SpectralPoint",
    "Tolerances", "__version__",
]
