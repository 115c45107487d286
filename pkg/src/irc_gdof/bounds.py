"""Finite-SNR sum-capacity upper bounds and their GDoF counterparts.

Two cut-set bounds and two genie-aided bounds are available at finite SNR.
The remaining two GDoF converse terms (3 and 5) come from bounds that are
only known at the exponent level here, see :func:`gdof_upper_args`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import LinearChannel, StrengthExponents, capacity
from .errors import DegenerateChannelError

BOUND_NAMES = ("cutset_bc", "cutset_mac", "genie_1", "genie_2")


@dataclass(frozen=True)
class BoundReport:
    cutset_bc: float
    cutset_mac: float
    genie_1: float
    genie_2: float
    tightest: float
    tightest_name: str

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in BOUND_NAMES}


def cutset_bounds(ch: LinearChannel) -> tuple[float, float]:
    """Broadcast-side and relay-side cut-set bounds, in bits."""
    bc = 2.0 * capacity((abs(ch.h_d) + abs(ch.h_r)) ** 2 * ch.power)
    mac = 2.0 * capacity(ch.snr_d + ch.snr_sr)
    return bc, mac


def genie_bound_1(ch: LinearChannel) -> float:
    """Genie bound giving the relay observation to both receivers."""
    if ch.h_c == 0:
        raise DegenerateChannelError("genie bound 1 needs h_c > 0 (h_d^2/h_c^2 undefined)")
    # C+(h_d^2/h_c^2 - 1) == max(0, log2(h_d/h_c)); the log form survives h_c >> h_d
    ratio_term = max(0.0, math.log2(ch.h_d / ch.h_c)) if ch.h_d > 0 else 0.0
    return capacity(2.0 * ch.snr_sr) + capacity(ch.snr_d + ch.snr_c) + ratio_term


def genie_bound_2(ch: LinearChannel) -> float:
    """Second genie bound; needs both ``h_c`` and ``h_sr`` non-zero."""
    if ch.h_c == 0:
        raise DegenerateChannelError("genie bound 2 needs h_c > 0 (h_d/h_c undefined)")
    if ch.h_sr == 0:
        raise DegenerateChannelError("genie bound 2 needs h_sr > 0 (h_c^2/h_sr^2 undefined)")
    ratio = (ch.h_c / ch.h_sr) ** 2 + (1.0 - ch.h_d / ch.h_c) ** 2
    return 2.0 * capacity(ratio) + 2.0 * capacity(2.0 * ch.snr_sr)


def bound_report(ch: LinearChannel) -> BoundReport:
    """All four bounds and the tightest one.

    With ``h_sr = 0`` (and ``h_c > 0``) the second genie bound grows without
    limit and is reported as ``inf``; ``h_c = 0`` still raises.
    """
    bc, mac = cutset_bounds(ch)
    g1 = genie_bound_1(ch)
    g2 = math.inf if ch.h_sr == 0 else genie_bound_2(ch)
    values = (bc, mac, g1, g2)
    tightest = min(values)
    return BoundReport(bc, mac, g1, g2, tightest, BOUND_NAMES[values.index(tightest)])


def gdof_upper_args(e: StrengthExponents) -> tuple[float, ...]:
    """The six GDoF converse terms, in the same order as the closed form.

    Terms 1, 2, 4 and 6 are the high-SNR slopes of the cut-set and genie
    bounds above; terms 3 and 5 have no finite-SNR counterpart here.
    """
    a, b, g = e.alpha, e.beta, e.gamma
    # slope of 2C((h_d + h_r)^2 P): the stronger of direct and relay links
    bc = 2.0 * max(1.0, b)
    # slope of 2C(h_d^2 P + h_sr^2 P)
    mac = 2.0 * max(1.0, g)
    term3 = max(1.0, a, b) + max(1.0, a) - a
    # C(2 h_sr^2 P) + C(h_d^2 P + h_c^2 P) + C+(h_d^2/h_c^2 - 1)
    g1 = g + max(1.0, a) + max(0.0, 1.0 - a)
    term5 = 2.0 * max(a, b, 1.0 - a)
    # 2C(h_c^2/h_sr^2 + (1 - h_d/h_c)^2) + 2C(2 h_sr^2 P)
    g2 = 2.0 * max(a - g, 1.0 - a, 0.0) + 2.0 * g
    return (bc, mac, term3, g1, term5, g2)


# closed-form term index (1-based) matched by each finite-SNR bound
BOUND_TO_TERM = {"cutset_bc": 1, "cutset_mac": 2, "genie_1": 4, "genie_2": 6}
