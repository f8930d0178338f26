"""Exception types shared across the library."""


class CutError(ValueError):
    """Spectral parameter lies on (or within 1e-12 of) a branch cut."""


class PoleError(ArithmeticError):
    """Evaluation requested at (or numerically indistinguishable from) a pole."""


class UnboundedLimitError(ArithmeticError):
    """The iy*M(iy) limit does not exist as a bounded operator (linear term present)."""


class NotContractionError(ValueError):
    """An operator required to be a contraction has norm > 1 beyond tolerance."""


class DegenerateStepError(ArithmeticError):
    """Jacobi-to-Hamiltonian recursion hit a degenerate angle step."""


class OutOfRangeError(ValueError):
    """Argument outside the range covered by a piecewise-defined object."""
