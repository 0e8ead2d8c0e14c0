"""Exception hierarchy shared by every module."""


class GroupError(Exception):
    pass


class MalformedCycle(GroupError, ValueError):
    pass


class RepeatedPoint(GroupError, ValueError):
    pass


class PointOutOfRange(GroupError, ValueError):
    pass


class DegreeMismatch(GroupError, ValueError):
    pass


class CapExceeded(GroupError):
    """A computation would need more elements (or lattice nodes) than allowed."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class LatticeCapExceeded(CapExceeded):
    pass


class MemoCapExceeded(CapExceeded):
    pass


class NotASubgroup(GroupError, ValueError):
    pass


class NotNormal(GroupError, ValueError):
    pass


class NotAPGroup(GroupError, ValueError):
    pass


class ParseError(GroupError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class DuplicateName(GroupError, ValueError):
    pass


class OrderMismatch(GroupError, ValueError):
    pass
