class HmzfError(Exception):
    """Base class for every error raised by the library"""


class CompositionParseError(HmzfError, ValueError):
    def __init__(self, token: str, reason: str):
        self.token = token
        self.reason = reason
        super().__init__(f"invalid part {token!r}: {reason}")


class DivergentCompositionError(HmzfError, ValueError):
    def __init__(self, composition):
        self.composition = composition
        super().__init__(f"divergent series: {composition!r} has first part < 2")


class DomainError(HmzfError, ValueError):
    pass


class TableRangeError(HmzfError, ValueError):
    pass


class InsufficientPointsError(HmzfError, ValueError):
    pass


class PrecisionError(HmzfError, ValueError):
    pass
