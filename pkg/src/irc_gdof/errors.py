"""Exception types raised by the toolkit.

All derive from ``ValueError`` so callers that only care about bad input
can catch that.
"""


class IRCError(ValueError):
    """Base class for domain errors in this package."""


class DomainError(IRCError):
    """A function was evaluated outside its mathematical domain."""


class RegimeError(IRCError):
    """Channel exponents fall outside the regime an operation covers."""


class DegenerateChannelError(IRCError):
    """A bound contains a gain ratio that is undefined for this channel."""


class InfeasibleAllocationError(IRCError):
    """A power allocation violates the power budget or has negative parts."""
