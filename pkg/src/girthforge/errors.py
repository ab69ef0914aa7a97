"""Exception types shared across the package."""


class GirthforgeError(Exception):
    """Base class for all package errors."""


class InstanceTooLarge(GirthforgeError, ValueError):
    pass


class CycleCapExceeded(GirthforgeError):
    def __init__(self, cap, found):
        super().__init__(f"short-cycle enumeration passed the cap of {cap} (found {found})")
        self.cap = cap
        self.found = found


class ParameterError(GirthforgeError, ValueError):
    pass


class InsufficientSurvivors(GirthforgeError):
    def __init__(self, survived, target):
        super().__init__(
            f"repair left {survived} vertices, fewer than the requested {target}; "
            "resample with another seed"
        )
        self.survived = survived
        self.target = target


class BadPairsPresent(GirthforgeError, ValueError):
    def __init__(self, pair):
        super().__init__(f"graph has a bad pair {pair}")
        self.pair = pair


class NotUniquelyGenerated(GirthforgeError, ValueError):
    def __init__(self, pair):
        super().__init__(f"two distinct cover chains join {pair[0]} and {pair[1]}")
        self.pair = pair


class ChainOfThree(GirthforgeError, ValueError):
    def __init__(self, chain):
        super().__init__(f"poset has a 3-element chain {chain}")
        self.chain = chain


class RealizationError(GirthforgeError):
    """The curve realization failed its own verifier (a defect, never expected)."""


class ParseError(GirthforgeError, ValueError):
    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.path = path
