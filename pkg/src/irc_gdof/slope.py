"""Numerical GDoF: rate normalised by ``0.5 * log2(h_d^2 P)`` on an SNR ladder."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .bounds import bound_report
from .channel import LinearChannel, StrengthExponents, realize
from .closed_form import gdof_irc
from .errors import DomainError
from .fdf import best_sum_rate

DEFAULT_LADDER = (1e10, 1e20, 1e30)
# closed-form terms with a finite-SNR bound in this package (1-based)
IMPLEMENTED_TERMS = (1, 2, 4, 6)


@dataclass(frozen=True)
class SlopeEstimate:
    ladder: tuple[float, ...]
    slopes: tuple[float, ...]
    final: float
    converged: bool


def _check_ladder(ladder: Sequence[float]) -> tuple[float, ...]:
    ladder = tuple(float(s) for s in ladder)
    if not ladder:
        raise DomainError("SNR ladder is empty")
    if any(s <= 1 for s in ladder):
        raise DomainError("SNR ladder values must exceed 1")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError("SNR ladder must be strictly increasing")
    return ladder


def is_converged(slopes: Sequence[float], tol: float) -> bool:
    """Successive slope changes never grow and the last one is below ``tol``."""
    diffs = [abs(b - a) for a, b in zip(slopes, slopes[1:])]
    if not diffs:
        return True
    return all(d2 <= d1 for d1, d2 in zip(diffs, diffs[1:])) and diffs[-1] < tol


def estimate_slope(
    rate_fn: Callable[[LinearChannel], float],
    e: StrengthExponents,
    ladder: Sequence[float] = DEFAULT_LADDER,
    tol: float = 0.1,
) -> SlopeEstimate:
    ladder = _check_ladder(ladder)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    slopes = tuple(rate_fn(realize(e, s)) / (0.5 * math.log2(s)) for s in ladder)
    return SlopeEstimate(ladder, slopes, slopes[-1], is_converged(slopes, tol))


def converse_rate(ch: LinearChannel) -> float:
    return bound_report(ch).tightest


def achievable_rate(ch: LinearChannel, k_max: int = 4, resolution: int = 6) -> float:
    return best_sum_rate(ch, k_max, resolution)[0].sum_rate


@dataclass(frozen=True)
class Theorem1Report:
    """Closed form against numerical converse and achievable slopes.

    ``flagged`` marks points where only terms 3 or 5 attain the minimum; the
    converse is then compared with ``converse_target`` (min of terms
    1, 2, 4, 6) instead of ``closed_form``.
    """

    exponents: StrengthExponents
    closed_form: float
    argmin_index: int
    flagged: bool
    converse_target: float
    converse: SlopeEstimate
    achievable: SlopeEstimate
    achievable_ok: bool
    converse_ok: bool
    ordered_ok: bool

    @property
    def achievable_gap(self) -> float:
        return self.closed_form - self.achievable.final

    @property
    def passed(self) -> bool:
        return self.achievable_ok and self.converse_ok and self.ordered_ok


def verify_theorem1(
    e: StrengthExponents,
    ladder: Sequence[float] = DEFAULT_LADDER,
    k_max: int = 4,
    resolution: int = 6,
    tol: float = 0.1,
) -> Theorem1Report:
    bd = gdof_irc(e)
    implementable = min(bd.args[i - 1] for i in IMPLEMENTED_TERMS)
    flagged = implementable > bd.value
    target = implementable if flagged else bd.value

    conv = estimate_slope(converse_rate, e, ladder, tol)
    ach = estimate_slope(lambda ch: achievable_rate(ch, k_max, resolution), e, ladder, tol)
    return Theorem1Report(
        exponents=e,
        closed_form=bd.value,
        argmin_index=bd.argmin_index,
        flagged=flagged,
        converse_target=target,
        converse=conv,
        achievable=ach,
        achievable_ok=ach.final >= bd.value - tol,
        converse_ok=conv.final >= target - tol,
        ordered_ok=all(a <= c + tol for a, c in zip(ach.slopes, conv.slopes)),
    )
