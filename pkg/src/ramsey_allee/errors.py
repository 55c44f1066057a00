"""Exception hierarchy shared by all modules."""


class RamseyAlleeError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(RamseyAlleeError, ValueError):
    """A model parameter lies outside its admissible domain."""


class DomainError(RamseyAlleeError, ValueError):
    """A function was evaluated outside its domain (e.g. k <= 0)."""


class NoSolutionError(RamseyAlleeError, ValueError):
    """An equation has no solution in the admissible range."""


class NoRootError(NoSolutionError):
    """A bracketing search found no sign change.

    ``trivial_root`` is set when only the degenerate root k = 0 exists.
    """

    def __init__(self, message, trivial_root=None):
        super().__init__(message)
        self.trivial_root = trivial_root


class InstabilityError(RamseyAlleeError, ValueError):
    """The stability condition delta + n_inf > 0 (i.e. delta > r) fails."""


class NoSaddlePathError(RamseyAlleeError):
    """Shooting could not bracket the saddle path."""


class IntegrationError(RamseyAlleeError):
    """The ODE integrator could not continue.

    Attributes
    ----------
    t_last : float
        Time of the last accepted step.
    partial : object or None
        Whatever partial result was available when integration stopped.
    """

    def __init__(self, message, t_last, partial=None):
        super().__init__(message)
        self.t_last = t_last
        self.partial = partial


class ConfigError(RamseyAlleeError, ValueError):
    """A scenario configuration document is malformed or invalid."""

    def __init__(self, message, key=None, line=None):
        where = []
        if key is not None:
            where.append(f"key {key!r}")
        if line is not None:
            where.append(f"line {line}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.key = key
        self.line = line
