"""Exception hierarchy shared by every module."""


class IntentArgError(Exception):
    """Base class for toolkit errors."""


class InvalidLabel(IntentArgError, ValueError):
    def __init__(self, value, line=None):
        self.value = value
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"invalid label {value!r}{where}")


class ParseError(IntentArgError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class AnalyzerUnavailable(IntentArgError, LookupError):
    pass


class EmptyUtterance(IntentArgError, ValueError):
    pass


class NotADirective(IntentArgError, ValueError):
    pass


class MalformedStrongRequirement(IntentArgError, ValueError):
    pass


class TooSmall(IntentArgError, ValueError):
    pass


class MalformedMatrix(IntentArgError, ValueError):
    pass


class NothingToPlan(IntentArgError, ValueError):
    pass


class VariantExhausted(IntentArgError, ValueError):
    def __init__(self, requested, maximum):
        self.requested = requested
        self.maximum = maximum
        super().__init__(
            f"requested {requested} variants but only {maximum} distinct variants exist"
        )


class InvalidArgument(IntentArgError, ValueError):
    pass


class MalformedEmbeddings(IntentArgError, ValueError):
    pass


class AlignmentError(IntentArgError, ValueError):
    pass


class NoTrainingData(IntentArgError, ValueError):
    pass
