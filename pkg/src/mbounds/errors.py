"""Exception hierarchy shared by every module."""


class MBoundsError(Exception):
    """Base class; the CLI maps subclasses onto exit codes."""


class InputError(MBoundsError, ValueError):
    pass


class EmptySample(InputError):
    pass


class InvalidValue(InputError):
    pass


class InvalidInput(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(MBoundsError):
    """A bound was requested on data outside its hypotheses."""


class DegenerateSample(PreconditionError, ValueError):
    pass


class BoundInapplicable(PreconditionError):
    pass


class RequiresDistinctIntegers(PreconditionError):
    pass


class NotAllRootsReal(PreconditionError):
    pass


class WidenInterval(MBoundsError):
    pass
