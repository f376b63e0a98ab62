"""Exception hierarchy shared across the package."""


class DualPrismError(Exception):
    """Base class for all errors raised by dualprism."""


class ConfigError(DualPrismError, ValueError):
    """An augmentation or run configuration is out of range."""


class NonConvergence(DualPrismError, ArithmeticError):
    """The symmetric eigensolver failed to converge."""


class DimensionMismatch(DualPrismError, ValueError):
    pass


class DimensionTooSmall(DualPrismError, ValueError):
    pass


class EdgeStateMismatch(DualPrismError, ValueError):
    """An edge flip was requested for an edge in the wrong state."""


class DegenerateGraph(DualPrismError, ValueError):
    """The operation needs at least one node."""


class DisconnectedGraph(DualPrismError, ValueError):
    pass


class MalformedFile(DualPrismError, ValueError):
    """A dataset file could not be parsed.

    ``path`` and ``line`` (1-based) locate the offending input when known.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class InconsistentIndicator(MalformedFile):
    """An edge connects nodes that belong to different graphs."""


class MissingFile(DualPrismError, FileNotFoundError):
    pass
