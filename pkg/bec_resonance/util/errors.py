"""Exception hierarchy shared by all bec-resonance modules."""


class BecResonanceError(Exception):
    """Root of all errors raised by bec-resonance."""


class DomainError(BecResonanceError, ValueError):
    """An input lies outside the domain an operation is defined on."""


class ContractError(BecResonanceError, ValueError):
    """A precondition between components was violated."""


class TruncationError(DomainError):
    """A Bessel sideband truncation discards too much weight."""


class IntegrationError(BecResonanceError, RuntimeError):
    """Time integration failed or drifted off the unit sphere."""


class ConfigError(BecResonanceError, ValueError):
    """An experiment config or preset could not be resolved."""
