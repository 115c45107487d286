"""Closed-form sum GDoF of the symmetric IRC and the no-relay IC baseline."""

from __future__ import annotations

from dataclasses import dataclass

from .channel import StrengthExponents
from .errors import DomainError, RegimeError

GAIN_MARGIN = 1e-12
# terms are rounded so float noise cannot split genuine ties between them
TERM_DECIMALS = 12


@dataclass(frozen=True)
class GdofBreakdown:
    """The six terms of the GDoF minimum, the minimum, and which term attains it.

    ``argmin_index`` is 1-based; ties go to the lowest index.
    """

    args: tuple[float, float, float, float, float, float]
    value: float
    argmin_index: int


def gdof_terms(alpha: float, beta: float, gamma: float) -> tuple[float, ...]:
    """The six min-arguments as plain exponent arithmetic (no regime check)."""
    return (
        2.0 * max(1.0, beta),
        2.0 * max(1.0, gamma),
        max(1.0, alpha, beta) + max(1.0, alpha) - alpha,
        2.0 * max(1.0, alpha) + gamma - alpha,
        2.0 * max(alpha, beta, 1.0 - alpha),
        2.0 * max(alpha, 1.0 + gamma - alpha),
    )


def gdof_irc(e: StrengthExponents) -> GdofBreakdown:
    """Sum GDoF of the IRC, valid when the source-relay link is no stronger
    than the interference link (``gamma <= alpha``)."""
    if e.gamma > e.alpha:
        raise RegimeError(
            f"regime gamma>alpha not characterized (alpha={e.alpha}, gamma={e.gamma})"
        )
    args = tuple(round(t, TERM_DECIMALS) for t in gdof_terms(e.alpha, e.beta, e.gamma))
    value = min(args)
    return GdofBreakdown(args=args, value=value, argmin_index=args.index(value) + 1)


def gdof_ic(alpha: float) -> float:
    """Symmetric two-user IC sum GDoF (the "W" curve)."""
    if not alpha >= 0:
        raise DomainError(f"alpha must be non-negative, got {alpha!r}")
    if alpha <= 0.5:
        return 2.0 * (1.0 - alpha)
    if alpha <= 2.0 / 3.0:
        return 2.0 * alpha
    if alpha <= 1.0:
        return 2.0 - alpha
    if alpha <= 2.0:
        return alpha
    return 2.0


@dataclass(frozen=True)
class GainPoint:
    alpha: float
    d_irc: float
    d_ic: float
    gain: bool


def gdof_gain_region(beta: float, gamma: float, alpha_grid) -> list[GainPoint]:
    """Compare IRC and IC GDoF along an alpha grid.

    ``gain`` is set where the relay strictly helps (beyond a 1e-12 margin).
    """
    alphas = [float(a) for a in alpha_grid]
    if alphas and gamma > min(alphas):
        raise RegimeError(
            f"regime gamma>alpha not characterized (gamma={gamma}, min alpha={min(alphas)})"
        )
    out = []
    for a in alphas:
        d_irc = gdof_irc(StrengthExponents(a, beta, gamma)).value
        d_ic = gdof_ic(a)
        out.append(GainPoint(a, d_irc, d_ic, d_irc > d_ic + GAIN_MARGIN))
    return out
