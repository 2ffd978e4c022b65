class CatGroupError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(CatGroupError):
    """Tables have the wrong shape or reference unknown elements."""


class ValidationError(CatGroupError):
    """A structure failed validation; ``report`` holds the violations."""

    def __init__(self, report):
        self.report = report
        super().__init__(report.format())


class NotACSubgroup(CatGroupError):
    pass


class PreconditionError(CatGroupError):
    pass


class InstanceCorruptionError(CatGroupError):
    """Raised when a validated instance contradicts its own classification."""


class InvalidArrowError(CatGroupError):
    pass


class EndpointMismatch(CatGroupError):
    pass


class ArrowCapExceeded(CatGroupError):
    pass


class CertificateError(CatGroupError):
    pass


class ParseError(CatGroupError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StageError(CatGroupError):
    """Failure inside a multi-stage pipeline, tagged with the stage name."""

    def __init__(self, stage, message):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")
