"""Functional decode-and-forward (FDF) achievable sum-rates.

Each user splits its message into a private part, a common part and ``K``
cooperative-public (CP) levels.  The relay decodes the lattice sum of the
two users' CP levels one at a time and forwards the combined index using a
two-layer Gaussian code (powers ``P_r^(1)`` and ``P_r^(2)``).  Receivers
decode backwards, cancelling the other user's CP level after each of their
own.

Two variants exist.  In the *weak* variant each receiver decodes its own
CP level first; in the *strong* variant (no private message) it decodes the
interfering one first.  All rates are asymptotic in the number of blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import LinearChannel, capacity, recover_exponents
from .errors import DomainError, InfeasibleAllocationError, RegimeError

WEAK = "weak"
STRONG = "strong"
VARIANTS = (WEAK, STRONG)

BUDGET_RTOL = 1e-9
# slack on the non-strict inequalities of the example regime
REGIME_TOL = 1e-9
# log-ratio this close to an integer is taken as that integer when choosing K
K_SNAP = 1e-9
LADDER_RTOL = 1e-9


@dataclass(frozen=True)
class PowerAllocation:
    p_private: float
    p_common: float
    p_cp: tuple[float, ...]
    p_relay_1: float
    p_relay_2: float

    def __post_init__(self):
        object.__setattr__(self, "p_cp", tuple(float(p) for p in self.p_cp))
        if len(self.p_cp) < 1:
            raise InfeasibleAllocationError("need at least one CP level (K >= 1)")
        parts = (self.p_private, self.p_common, self.p_relay_1, self.p_relay_2) + self.p_cp
        for p in parts:
            if not math.isfinite(p) or p < 0:
                raise InfeasibleAllocationError(f"powers must be finite and >= 0, got {p!r}")

    @property
    def K(self) -> int:
        return len(self.p_cp)

    def check(self, power: float) -> None:
        """Raise InfeasibleAllocationError unless this allocation fits ``power``."""
        total = self.p_private + self.p_common + math.fsum(self.p_cp)
        if abs(total - power) > BUDGET_RTOL * power:
            raise InfeasibleAllocationError(
                f"transmitter powers sum to {total!r}, budget is {power!r}"
            )
        if self.p_relay_1 + self.p_relay_2 > power * (1.0 + BUDGET_RTOL):
            raise InfeasibleAllocationError(
                f"relay powers sum to {self.p_relay_1 + self.p_relay_2!r}, budget is {power!r}"
            )


@dataclass(frozen=True)
class RateBreakdown:
    """Per-message rates (bits) of one FDF operating point.

    ``binding_constraints`` maps ``"common"``, ``"cp[k]"`` (1-based) and
    ``"cp_total"`` to the name of the constraint that was tight.
    """

    variant: str
    r_private: float
    r_common: float
    r_cp_levels: tuple[float, ...]
    r_cp_total: float
    sum_rate: float
    binding_constraints: dict[str, str] = field(default_factory=dict)


def _suffix_sums(pcp: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sums over levels i > k and i >= k along the last axis."""
    incl = np.cumsum(pcp[..., ::-1], axis=-1)[..., ::-1]
    # shift instead of incl - pcp: a weak level next to a huge one would cancel out
    after = np.zeros_like(incl)
    after[..., :-1] = incl[..., 1:]
    return after, incl


_HALF_LOG2E = 0.5 / math.log(2.0)


def _cap(x):
    # capacity without the domain check; every argument below is >= -0.5
    return np.log1p(x) * _HALF_LOG2E


def rate_constraints(ch: LinearChannel, variant: str, pp, pc, pcp, pr1, pr2) -> dict:
    """Every rate constraint of a variant, vectorised over leading axes.

    ``pcp`` has shape ``(..., K)``; the other powers broadcast against
    ``pcp[..., 0]``.
    """
    hd2, hc2, hr2, hsr2 = ch.h_d**2, ch.h_c**2, ch.h_r**2, ch.h_sr**2
    P = ch.power
    pp = np.asarray(pp, dtype=float)
    pc = np.asarray(pc, dtype=float)
    pr1 = np.asarray(pr1, dtype=float)
    pr2 = np.asarray(pr2, dtype=float)
    pcp = np.asarray(pcp, dtype=float)
    after, from_k = _suffix_sums(pcp)
    ppk, pck, pr2k = pp[..., None], pc[..., None], pr2[..., None]

    # power of the common and private layers seen at the receivers
    cp_floor = hd2 * pc + hc2 * pc + hd2 * pp + hc2 * pp

    if variant == WEAK:
        private = _cap(hd2 * pp / (1.0 + hc2 * pp))
        noise_c = 1.0 + hd2 * pp + hc2 * pp
        relay = np.maximum(0.0, _cap(
            hsr2 * pcp
            / (1.0 + 2.0 * hsr2 * after + 2.0 * hsr2 * pck + 2.0 * hsr2 * ppk)
            - 0.5
        ))
        receiver = _cap(
            hd2 * pcp
            / (1.0 + hd2 * after + hc2 * from_k + cp_floor[..., None] + hr2 * pr2k)
        )
    elif variant == STRONG:
        private = np.zeros_like(pp)
        noise_c = 1.0
        relay = np.maximum(0.0, _cap(
            hsr2 * pcp / (1.0 + 2.0 * hsr2 * after + 2.0 * hsr2 * pck) - 0.5
        ))
        # interfering CP level is decoded first
        receiver = _cap(
            hc2 * pcp
            / (1.0 + hc2 * after + hd2 * from_k + cp_floor[..., None] + hr2 * pr2k)
        )
    else:
        raise ValueError(f"unknown variant {variant!r}")

    common_single = _cap(min(hd2, hc2) * pc / noise_c)
    common_joint = _cap((hd2 + hc2) * pc / noise_c)
    forward_1 = _cap(hr2 * pr1 / (1.0 + hr2 * pr2 + hd2 * P + hc2 * P))
    forward_2 = _cap(hr2 * pr2 / (1.0 + cp_floor))

    common = np.minimum(common_single, 0.5 * common_joint)
    levels = np.minimum(relay, receiver)
    level_sum = levels.sum(axis=-1)
    forward = forward_1 + forward_2
    cp_total = np.minimum(level_sum, forward)
    if variant == WEAK:
        sum_rate = 2.0 * (private + common + cp_total)
    else:
        sum_rate = 2.0 * (common + cp_total)
    return {
        "private": private,
        "common_single": common_single,
        "common_joint": common_joint,
        "common": common,
        "relay": relay,
        "receiver": receiver,
        "levels": levels,
        "level_sum": level_sum,
        "forward_1": forward_1,
        "forward_2": forward_2,
        "forward": forward,
        "cp_total": cp_total,
        "sum_rate": sum_rate,
    }


def _evaluate(ch: LinearChannel, alloc: PowerAllocation, variant: str) -> RateBreakdown:
    alloc.check(ch.power)
    t = rate_constraints(
        ch, variant,
        alloc.p_private, alloc.p_common, np.array(alloc.p_cp),
        alloc.p_relay_1, alloc.p_relay_2,
    )
    binding = {
        "common": "single" if t["common_single"] <= 0.5 * t["common_joint"] else "joint",
    }
    for k in range(alloc.K):
        binding[f"cp[{k + 1}]"] = "relay" if t["relay"][k] <= t["receiver"][k] else "receiver"
    binding["cp_total"] = "levels" if t["level_sum"] <= t["forward"] else "forward"
    return RateBreakdown(
        variant=variant,
        r_private=float(t["private"]),
        r_common=float(t["common"]),
        r_cp_levels=tuple(float(r) for r in t["levels"]),
        r_cp_total=float(t["cp_total"]),
        sum_rate=float(t["sum_rate"]),
        binding_constraints=binding,
    )


def weak_rates(ch: LinearChannel, alloc: PowerAllocation) -> RateBreakdown:
    """Sum-rate ``2(R_p + R_c + R_cp)`` of the weak-interference variant."""
    return _evaluate(ch, alloc, WEAK)


def strong_rates(ch: LinearChannel, alloc: PowerAllocation) -> RateBreakdown:
    """Sum-rate ``2(R_c + R_cp)`` of the strong-interference variant."""
    if alloc.p_private > 0:
        raise InfeasibleAllocationError("strong variant carries no private message (p_private > 0)")
    return _evaluate(ch, alloc, STRONG)


def rates(ch: LinearChannel, alloc: PowerAllocation, variant: str) -> RateBreakdown:
    return weak_rates(ch, alloc) if variant == WEAK else strong_rates(ch, alloc)


def in_example_regime(alpha: float, beta: float, gamma: float, tol: float = REGIME_TOL) -> bool:
    """``beta - 1 < gamma <= alpha <= 1 <= beta`` and ``2 alpha > 1 + gamma``."""
    return (
        beta - 1.0 < gamma
        and gamma <= alpha + tol
        and alpha <= 1.0 + tol
        and 1.0 <= beta + tol
        and 2.0 * alpha > 1.0 + gamma
    )


def example_cp_levels(ch: LinearChannel) -> int:
    """Number of CP levels K of the example allocation."""
    hd2, hc2, hr2 = ch.h_d**2, ch.h_c**2, ch.h_r**2
    if not hd2 > hc2 > 0:
        raise RegimeError("example allocation needs 0 < h_c^2 < h_d^2")
    if hr2 <= 0:
        raise RegimeError("example allocation needs h_r > 0")
    ratio = math.log(hr2 / hd2) / math.log(hd2 / hc2)
    return max(1, math.ceil(ratio - K_SNAP))


def example_allocation(ch: LinearChannel, strict: bool = True) -> PowerAllocation:
    """Analytic allocation that reaches ``min(2 alpha, 1 + beta - alpha)`` GDoF.

    Private power sits at the interference noise floor (``1/h_c^2``), the
    common layer fills up to ``h_d^2 P / h_r^2``, and the CP levels form a
    geometric ladder with ratio ``h_c^2/h_d^2`` so that the next desired CP
    level arrives at the same power as the current interfering one.  The
    relay spends everything on its first layer.

    With ``strict=False`` the exponent regime is not checked, only the
    positivity of the resulting powers.
    """
    if strict:
        try:
            e = recover_exponents(ch)
        except DomainError as exc:
            raise RegimeError(f"example allocation needs recoverable exponents: {exc}") from exc
        if not in_example_regime(e.alpha, e.beta, e.gamma):
            raise RegimeError(
                "example allocation needs beta-1 < gamma <= alpha <= 1 <= beta and "
                f"2*alpha > 1+gamma (alpha={e.alpha:.6g}, beta={e.beta:.6g}, gamma={e.gamma:.6g})"
            )
    K = example_cp_levels(ch)
    hd2, hc2, hr2 = ch.h_d**2, ch.h_c**2, ch.h_r**2
    P = ch.power
    r = hc2 / hd2
    p_private = 1.0 / hc2
    p_common = ch.snr_d / hr2 - p_private
    if p_common < 0:
        raise InfeasibleAllocationError(
            f"common power h_d^2 P/h_r^2 - 1/h_c^2 is negative ({p_common!r})"
        )
    p_cp = [P * r ** (k - 1) * (1.0 - r) for k in range(1, K)]
    p_cp.append(P * r ** (K - 1) - p_common - p_private)
    if p_cp[-1] < 0:
        raise InfeasibleAllocationError(f"last CP level power is negative ({p_cp[-1]!r})")
    return PowerAllocation(p_private, p_common, tuple(p_cp), P, 0.0)


def cp_ladder_check(ch: LinearChannel, alloc: PowerAllocation) -> bool:
    """True if ``h_d^2 p_cp[k+1] == h_c^2 p_cp[k]`` for every level but the last two.

    The final level carries the ``- P_c - P_p`` correction and is exempt.
    """
    hd2, hc2 = ch.h_d**2, ch.h_c**2
    p = alloc.p_cp
    for k in range(alloc.K - 2):
        lhs, rhs = hd2 * p[k + 1], hc2 * p[k]
        if abs(lhs - rhs) > LADDER_RTOL * max(abs(lhs), abs(rhs)):
            return False
    return True


def relay_constraint_dominance(ch: LinearChannel, alloc: PowerAllocation) -> bool:
    """Check that the forwarding cap is no looser than the relay-only decoding
    constraints a receiver faces in the final block.

    Both forwarding terms carry extra interference in their noise, so this
    should hold for every channel.
    """
    hd2, hc2, hr2 = ch.h_d**2, ch.h_c**2, ch.h_r**2
    P = ch.power
    pr1, pr2 = alloc.p_relay_1, alloc.p_relay_2
    floor = hd2 * alloc.p_common + hc2 * alloc.p_common + hd2 * alloc.p_private + hc2 * alloc.p_private
    term_1 = capacity(hr2 * pr1 / (1.0 + hr2 * pr2 + hd2 * P + hc2 * P))
    term_2 = capacity(hr2 * pr2 / (1.0 + floor))
    return term_1 <= capacity(hr2 * pr1 / (1.0 + hr2 * pr2)) and term_2 <= capacity(hr2 * pr2)


# --- grid search -----------------------------------------------------------


def _power_fractions(ch: LinearChannel, resolution: int) -> list[float]:
    """Geometric fractions ``s^(-j/(resolution-1))`` of the budget, plus 0.

    ``s`` is the strongest link SNR, so the grid spans every power level
    that can matter at the receivers.
    """
    s = max(ch.snr_d, ch.snr_c, ch.snr_r, ch.snr_sr, 4.0)
    return [0.0] + [s ** (-j / (resolution - 1)) for j in range(resolution)]


def _grid(ch: LinearChannel, variant: str, K: int, resolution: int):
    """Deterministic batch of feasible allocations for one (variant, K)."""
    fracs = _power_fractions(ch, resolution)
    private_fracs = [0.0]
    if variant == WEAK:
        private_fracs = list(fracs)
        if ch.snr_c > 1:
            # private layer at the interference noise floor
            private_fracs.append(1.0 / ch.snr_c)
    ratios = [0.5]
    if K > 1:
        ratios = [f for f in fracs if 0.0 < f < 1.0]
        r_nat = ch.h_c**2 / ch.h_d**2 if ch.h_d > 0 else 0.0
        if 0.0 < r_nat < 1.0:
            ratios.append(r_nat)

    qa, qc, rho, qr = (
        g.ravel() for g in np.meshgrid(private_fracs, fracs, ratios, fracs, indexing="ij")
    )
    keep = qa + qc <= 1.0 + 1e-12
    qa, qc, rho, qr = qa[keep], qc[keep], rho[keep], qr[keep]
    rest = np.maximum(1.0 - qa - qc, 0.0)
    # level k gets rho^(k-1) (1 - rho) of the CP power, the last level the remainder
    k = np.arange(K)
    shares = rho[:, None] ** k * np.where(k < K - 1, 1.0 - rho[:, None], 1.0)
    P = ch.power
    pp, pc = qa * P, qc * P
    pcp = (rest * P)[:, None] * shares
    pr2 = qr * P
    pr1 = P - pr2
    return pp, pc, pcp, pr1, pr2


def best_sum_rate(
    ch: LinearChannel, k_max: int = 4, resolution: int = 6
) -> tuple[RateBreakdown, PowerAllocation, str]:
    """Best FDF sum-rate over both variants, ``K = 1..k_max`` and a power grid.

    The example allocation joins the candidates whenever its regime applies,
    so the result never falls below it.  Exact ties are broken by
    ``(variant, K, grid index)`` with the example allocation ahead of the grid.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")

    # (rate, sort key, allocation)
    candidates: list[tuple[float, tuple, PowerAllocation]] = []
    try:
        alloc = example_allocation(ch)
    except (RegimeError, InfeasibleAllocationError):
        alloc = None
    if alloc is not None:
        candidates.append((weak_rates(ch, alloc).sum_rate, (0, alloc.K, -1), alloc))

    for vi, variant in enumerate(VARIANTS):
        # one batch per variant: zero-power trailing levels carry no rate and
        # leave the other levels untouched, so every K pads to k_max columns
        batches = [_grid(ch, variant, K, resolution) for K in range(1, k_max + 1)]
        pp, pc, pr1, pr2 = (np.concatenate([b[j] for b in batches]) for j in (0, 1, 3, 4))
        pcp = np.concatenate(
            [np.pad(b[2], ((0, 0), (0, k_max - b[2].shape[1]))) for b in batches]
        )
        sums = rate_constraints(ch, variant, pp, pc, pcp, pr1, pr2)["sum_rate"]
        i = int(np.argmax(sums))
        offsets = np.cumsum([0] + [len(b[0]) for b in batches])
        K = int(np.searchsorted(offsets, i, side="right"))
        a = PowerAllocation(float(pp[i]), float(pc[i]), tuple(pcp[i, :K]), float(pr1[i]), float(pr2[i]))
        candidates.append((float(sums[i]), (vi, K, i - int(offsets[K - 1])), a))

    top = max(c[0] for c in candidates)
    _, key, alloc = min((c for c in candidates if c[0] == top), key=lambda c: c[1])
    variant = VARIANTS[key[0]]
    return rates(ch, alloc, variant), alloc, variant
