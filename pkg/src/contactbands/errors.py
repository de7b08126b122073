"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside an operation's domain of validity."""


class RealAxisPoleError(ArithmeticError):
    """The scattering linear system is singular at a real wavenumber."""


class DegenerateEigenproblemError(ArithmeticError):
    """The S-matrix eigenvalue quadratic has a vanishing leading coefficient."""
