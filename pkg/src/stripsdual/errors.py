"""Exception hierarchy shared by all modules."""


class StripsError(Exception):
    """Base class for every error raised by the toolkit."""


class StructuralError(StripsError, ValueError):
    """Malformed input: width mismatch, unknown atom, duplicate name."""


class NotNormalizedError(StripsError):
    """An operation that needs a normalized task received a raw one."""


class PreconditionViolation(StripsError):
    def __init__(self, action, missing):
        self.action = action
        self.missing = tuple(missing)
        super().__init__(
            f"action {action!r} is not applicable: missing {' '.join(self.missing) or '-'}"
        )


class ConsistencyViolation(StripsError):
    def __init__(self, action, clobbered):
        self.action = action
        self.clobbered = tuple(clobbered)
        super().__init__(
            f"cannot regress over {action!r}: it deletes {' '.join(self.clobbered)}"
        )


class PlanError(StripsError):
    """A plan failed validation.

    ``step`` is the index of the offending step, or ``None`` when the
    failure is about the final state. ``missing`` lists atom names whose
    absence caused the failure.
    """

    def __init__(self, message, step=None, missing=()):
        self.step = step
        self.missing = tuple(missing)
        super().__init__(message)


class UniverseTooLarge(StripsError):
    pass


class SearchConfigError(StripsError, ValueError):
    pass


class PddlError(StripsError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


class UnsupportedRequirement(PddlError):
    pass


class GtfError(StructuralError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
