"""Exception hierarchy shared by every module."""


class LastMultError(Exception):
    pass


class StructuralError(LastMultError):
    """An expression node the requested operation does not understand."""


class UnboundSymbolError(LastMultError):
    def __init__(self, name):
        super().__init__(f"unbound symbol {name!r}")
        self.name = name


class PoleError(LastMultError):
    """Evaluation hit a singularity (division by zero, tan at pi/2, log 0, ...)."""

    def __init__(self, message, location=None, index=None):
        super().__init__(message)
        self.location = location
        self.index = index


class InconclusiveError(LastMultError):
    """Randomized comparison could not find a single regular sample point."""


class ConstraintError(LastMultError):
    """A gauge pair violates the constraint attached to a catalog entry."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DomainError(LastMultError):
    pass


class DivergenceError(LastMultError):
    def __init__(self, message, last_good_time=None):
        super().__init__(message)
        self.last_good_time = last_good_time


class ReductionError(LastMultError):
    """Similarity reduction did not close to an ODE in time alone."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class LadderTerminated(LastMultError):
    """The bracket annihilated the current solution."""


class NonEigenfunctionError(LastMultError):
    pass


class UnsupportedError(LastMultError):
    pass
