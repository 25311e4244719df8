"""Exception hierarchy shared by the library and the command line."""


class HShiftError(Exception):
    """Base class for all errors raised by hshift."""


class ConfigError(HShiftError):
    """Malformed or out-of-range run configuration.

    ``line`` is the 1-based line number in the config document, when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(HShiftError, ValueError):
    """A physics routine was called outside its domain.

    ``module`` names the model component that rejected the input, so the
    CLI can attribute the failure.
    """

    def __init__(self, message, module=None):
        self.module = module
        if module is not None:
            message = f"{module}: {message}"
        super().__init__(message)
