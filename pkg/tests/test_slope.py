import math

import mpmath
import pytest

from irc_gdof import (
    DomainError,
    RegimeError,
    StrengthExponents,
    bound_report,
    capacity,
    cutset_bounds,
    estimate_slope,
    gdof_upper_args,
    verify_theorem1,
)
from irc_gdof.bounds import BOUND_TO_TERM
from irc_gdof.slope import is_converged

E = StrengthExponents
LADDER = (1e10, 1e20, 1e30)


def test_constant_zero():
    est = estimate_slope(lambda ch: 0.0, E(1, 1, 1), LADDER, 0.1)
    assert est.slopes == (0.0, 0.0, 0.0)
    assert est.converged and est.final == 0.0


def test_cutset_mac_slope():
    est = estimate_slope(lambda ch: cutset_bounds(ch)[1], E(0.7, 1.1, 0.2), LADDER, 0.1)
    # 2C(s + s^0.2) / (0.5 log2 s) at s = 1e30, evaluated independently
    s = mpmath.mpf(10) ** 30
    ref = mpmath.log(1 + s + s ** mpmath.mpf("0.2"), 2) / (mpmath.log(s, 2) / 2)
    assert est.final == pytest.approx(float(ref), abs=1e-12)
    assert abs(est.final - 2.0) < 0.05


def test_point_to_point_slope():
    est = estimate_slope(lambda ch: 2 * capacity(ch.snr_d), E(0.3, 0.3, 0.3), LADDER, 0.1)
    assert abs(est.final - 2.0) < 0.05
    assert est.converged


@pytest.mark.parametrize("ladder", [(), (1.0, 10.0), (1e20, 1e10), (1e10, 1e10)])
def test_ladder_validation(ladder):
    with pytest.raises(DomainError):
        estimate_slope(lambda ch: 0.0, E(1, 1, 1), ladder, 0.1)


def test_tol_validation():
    with pytest.raises(DomainError):
        estimate_slope(lambda ch: 0.0, E(1, 1, 1), LADDER, 0.0)


def test_convergence_rule():
    assert is_converged([1.0, 1.2, 1.25], 0.1)
    assert not is_converged([1.0, 1.05, 1.2], 0.5)  # changes grow
    assert not is_converged([1.0, 1.5, 1.8], 0.1)   # last change too big
    assert is_converged([3.0], 0.1)


def test_deterministic():
    fn = lambda ch: bound_report(ch).tightest  # noqa: E731
    assert estimate_slope(fn, E(0.8, 1.2, 0.4), LADDER, 0.1) == estimate_slope(fn, E(0.8, 1.2, 0.4), LADDER, 0.1)


@pytest.mark.parametrize("e", [(0.7, 1.1, 0.2), (1.6, 0.9, 1.2), (2.2, 2.4, 0.3)])
def test_bound_slope_error_decreases_on_geometric_ladder(e):
    e = E(*e)
    terms = gdof_upper_args(e)
    ladder = tuple(10.0**p for p in range(10, 31, 4))
    for name, idx in BOUND_TO_TERM.items():
        est = estimate_slope(lambda ch: getattr(bound_report(ch), name), e, ladder, 0.1)
        errs = [abs(s - terms[idx - 1]) for s in est.slopes]
        assert all(b <= a + 1e-12 for a, b in zip(errs, errs[1:]))


def test_verify_example_regime():
    rep = verify_theorem1(E(0.7, 1.1, 0.2), LADDER, 4, 6, 0.1)
    assert rep.closed_form == 1.4
    assert not rep.flagged
    assert abs(rep.converse.final - 1.4) < 0.1
    assert abs(rep.achievable.final - 1.4) < 0.1
    assert rep.passed


def test_verify_equal_strengths():
    rep = verify_theorem1(E(1, 1, 1), LADDER, 2, 4, 0.1)
    # term 3 gives 1; the implementable bounds all sit at 2
    assert rep.closed_form == 1.0
    assert rep.flagged and rep.converse_target == 2.0
    assert abs(rep.converse.final - 2.0) < 0.05


def test_verify_flags_term_three():
    rep = verify_theorem1(E(0.2, 1.1, 0.2), LADDER, 2, 4, 0.1)
    assert rep.closed_form == 1.9 and rep.argmin_index == 3
    assert rep.flagged and rep.converse_target == 2.0
    assert rep.converse_ok and rep.ordered_ok


def test_verify_regime():
    with pytest.raises(RegimeError):
        verify_theorem1(E(0.1, 1, 0.5))


@pytest.mark.parametrize("e", [(0.5, 1.5, 0.5), (1.7, 0.8, 1.1), (3.0, 1.4, 1.2), (0.9, 1.25, 0.3)])
def test_achievable_never_above_converse(e):
    rep = verify_theorem1(E(*e), LADDER, 3, 5, 0.1)
    assert rep.ordered_ok
    for a, c in zip(rep.achievable.slopes, rep.converse.slopes):
        assert a <= c + 1e-9 / (0.5 * math.log2(1e10))
