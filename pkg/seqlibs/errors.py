class SequenceError(Exception):
    """Base class for every error raised by seqlibs."""


class RationalParseError(SequenceError, ValueError):
    def __init__(self, message: str, token: str = "", position: int | None = None):
        self.token = token
        self.position = position
        if position is not None:
            message = f"{message} (token {position}: {token!r})"
        elif token:
            message = f"{message}: {token!r}"
        super().__init__(message)


class RationalArithmeticError(SequenceError, ZeroDivisionError):
    pass


class LengthMismatchError(SequenceError, ValueError):
    pass


class InsufficientTermsError(SequenceError, ValueError):
    pass


class SingularMatrixError(SequenceError, ArithmeticError):
    def __init__(self, message: str = "BSSC-2 violated: base segments linearly dependent"):
        super().__init__(message)


class InconsistentTheoryError(SequenceError, ValueError):
    def __init__(self, message: str = "theory inconsistent with problem"):
        super().__init__(message)


class CorpusFormatError(SequenceError, ValueError):
    def __init__(self, message: str, line_number: int | None = None, record_id: str | None = None):
        self.line_number = line_number
        self.record_id = record_id
        where = []
        if line_number is not None:
            where.append(f"line {line_number}")
        if record_id:
            where.append(f"record {record_id}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class StableConfigError(SequenceError, ValueError):
    pass
