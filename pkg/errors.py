class GroupToolkitError(ValueError):
    """Base class for every error raised by the toolkit."""


class ParseError(GroupToolkitError):
    pass


class InvalidPermutation(GroupToolkitError):
    pass


class CapExceeded(GroupToolkitError):
    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeds the configured cap of {limit}")
        self.what = what
        self.limit = limit


class NotASubgroup(GroupToolkitError):
    pass


class NotNormal(GroupToolkitError):
    pass


class NoSuchPrime(GroupToolkitError):
    pass


class UnknownBuiltin(GroupToolkitError):
    pass


class InvalidParameter(GroupToolkitError):
    pass


class NotInvertible(GroupToolkitError):
    pass
