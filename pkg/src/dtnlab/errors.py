"""Exception types raised across the package."""


class DtnLabError(Exception):
    """Base class; the CLI maps subclasses onto exit codes."""


class InvalidArgument(DtnLabError, ValueError):
    pass


class InvalidDomain(DtnLabError, ValueError):
    pass


class AssemblyFailure(DtnLabError):
    def __init__(self, message, pivot):
        super().__init__(f"{message} (pivot {pivot})")
        self.pivot = pivot


class SolverFailure(DtnLabError):
    pass


class InvalidMass(DtnLabError, ValueError):
    pass


class DirichletEigenvalue(DtnLabError):
    """The interior block K_II - lam M_II is singular at the requested shift."""

    def __init__(self, lam, n_zero):
        super().__init__(f"lambda={lam!r} is a Dirichlet eigenvalue (multiplicity {n_zero})")
        self.lam = lam
        self.n_zero = n_zero


class SpectralPoint(DtnLabError):
    def __init__(self, lam, n_neumann, n_dirichlet):
        super().__init__(
            f"lambda={lam!r} lies in the spectrum "
            f"(Neumann multiplicity {n_neumann}, Dirichlet multiplicity {n_dirichlet})"
        )
        self.lam = lam
        self.n_neumann = n_neumann
        self.n_dirichlet = n_dirichlet


class ConfigError(DtnLabError, ValueError):
    pass
