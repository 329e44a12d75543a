"""Exception types raised across the package."""


class K3FanError(Exception):
    """Base class."""


class NotInCone(K3FanError):
    pass


class ReductionDiverged(K3FanError):
    pass


class InvalidFace(K3FanError):
    pass


class NotHorizontal(K3FanError):
    pass


class NotDivisible(K3FanError):
    def __init__(self, message: str, multiplier: int):
        super().__init__(message)
        self.multiplier = multiplier


class NotIntegral(K3FanError):
    pass


class NotApplicable(K3FanError):
    pass


class NotTypeIII(K3FanError):
    pass


class ResourceLimit(K3FanError):
    pass


class InvariantViolation(K3FanError):
    """A structural check that must hold by construction failed."""


class RowViolation(K3FanError):
    def __init__(self, message: str, params: dict):
        super().__init__(message)
        self.params = params


class IdenticallySingular(K3FanError):
    pass


class InfiniteGroup(K3FanError):
    pass
