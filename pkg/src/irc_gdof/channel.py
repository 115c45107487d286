"""Channel parameterization and the Gaussian capacity function.

The symmetric interference relay channel has four real gains: ``h_d``
(direct), ``h_c`` (cross), ``h_r`` (relay to receivers) and ``h_sr``
(sources to relay), plus a common per-node power budget ``P`` and unit
noise variance everywhere.  Link strengths are summarised by exponents

    alpha = log(h_c^2 P) / log(h_d^2 P)
    beta  = log(h_r^2 P) / log(h_d^2 P)
    gamma = log(h_sr^2 P) / log(h_d^2 P)

Rates are in bits per real channel use (log base 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_LN2 = math.log(2.0)

# recovered exponents this close to zero are snapped to zero (products ~1)
_EXPONENT_SNAP = 1e-12


@dataclass(frozen=True)
class StrengthExponents:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"{name} must be finite and non-negative, got {v!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class LinearChannel:
    h_d: float
    h_c: float
    h_r: float
    h_sr: float
    power: float

    def __post_init__(self):
        for name in ("h_d", "h_c", "h_r", "h_sr"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"{name} must be finite and non-negative, got {v!r}")
        if not math.isfinite(self.power) or self.power <= 0:
            raise DomainError(f"power must be finite and positive, got {self.power!r}")

    # Received SNR of each link at full power.
    @property
    def snr_d(self) -> float:
        return self.h_d**2 * self.power

    @property
    def snr_c(self) -> float:
        return self.h_c**2 * self.power

    @property
    def snr_r(self) -> float:
        return self.h_r**2 * self.power

    @property
    def snr_sr(self) -> float:
        return self.h_sr**2 * self.power


def capacity(x):
    """Gaussian capacity ``0.5 * log2(1 + x)``.

    Accepts scalars or numpy arrays; scalars come back as ``float``.
    Raises DomainError if any ``x <= -1``.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= -1.0) or np.any(np.isnan(arr)):
        raise DomainError(f"capacity undefined for x <= -1 (got {x!r})")
    out = 0.5 * np.log1p(arr) / _LN2
    return float(out) if out.ndim == 0 else out


def capacity_plus(x):
    """``max(0, capacity(x))``; zero on (-1, 0]."""
    out = np.maximum(capacity(x), 0.0)
    return float(out) if np.ndim(out) == 0 else out


def realize(e: StrengthExponents, snr: float) -> LinearChannel:
    """Canonical channel with ``h_d = 1`` and ``P = snr`` for the given exponents."""
    if not snr > 1:
        raise DomainError(f"snr must exceed 1, got {snr!r}")
    return LinearChannel(
        h_d=1.0,
        h_c=snr ** ((e.alpha - 1.0) / 2.0),
        h_r=snr ** ((e.beta - 1.0) / 2.0),
        h_sr=snr ** ((e.gamma - 1.0) / 2.0),
        power=float(snr),
    )


def _exponent(product: float, log_norm: float, name: str) -> float:
    if product <= 0:
        raise DomainError(f"{name} gain-power product is zero; exponent is -inf")
    v = math.log(product) / log_norm
    if abs(v) < _EXPONENT_SNAP:
        return 0.0
    if v < 0:
        raise DomainError(f"{name} exponent is negative ({v:.6g}); product below noise level")
    return v


def recover_exponents(ch: LinearChannel) -> StrengthExponents:
    """Invert :func:`realize`: read (alpha, beta, gamma) off a linear channel."""
    if ch.snr_d <= 1:
        raise DomainError("h_d^2 P must exceed 1 to normalise exponents")
    log_norm = math.log(ch.snr_d)
    return StrengthExponents(
        alpha=_exponent(ch.snr_c, log_norm, "cross"),
        beta=_exponent(ch.snr_r, log_norm, "relay"),
        gamma=_exponent(ch.snr_sr, log_norm, "source-relay"),
    )
