class WakefordError(ValueError):
    """Base class for every error raised by this package."""


class SpecParseError(WakefordError):
    pass


class LimitError(WakefordError):
    """An input exceeds one of the desk-scale caps."""


class DomainError(WakefordError):
    """Sets or elements that do not belong to the group at hand."""


class PreconditionError(WakefordError):
    pass
