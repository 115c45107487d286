"""Sum-capacity bounds, FDF achievable rates and GDoF of the symmetric
two-user Gaussian interference relay channel."""

from .bounds import BoundReport, bound_report, cutset_bounds, gdof_upper_args, genie_bound_1, genie_bound_2
from .channel import LinearChannel, StrengthExponents, capacity, capacity_plus, realize, recover_exponents
from .closed_form import GdofBreakdown, gdof_gain_region, gdof_ic, gdof_irc
from .errors import DegenerateChannelError, DomainError, InfeasibleAllocationError, IRCError, RegimeError
from .fdf import (
    PowerAllocation,
    RateBreakdown,
    best_sum_rate,
    cp_ladder_check,
    example_allocation,
    relay_constraint_dominance,
    strong_rates,
    weak_rates,
)
from .slope import SlopeEstimate, estimate_slope, verify_theorem1

__version__ = "0.1.0"
