import math
from fractions import Fraction

import mpmath
import pytest

from plastic.boundslab import (
    beta_limits,
    beta_limits_ok,
    bounds_report,
    convergence_ok,
    convergence_table,
    dominant_fit,
    eq10_forms,
    verify_eq9,
    verify_eq10,
    verify_eq11,
    verify_eq12,
    verify_theorem,
    window_maxima,
)
from plastic.errors import PrecisionEscalationError
from plastic.rootlab import RootEnclosure, all_roots, isolate_dominant
from plastic.seqcore import SequenceSpec, fibonacci_naive, lucas_naive, sequence_terms

PHI = (1 + math.sqrt(5)) / 2


def test_beta_phi_k3():
    check = verify_eq9(3)
    assert check.passed
    assert abs((3 + math.sqrt(41)) / 8 - 1.17539) < 1e-5
    assert check.lower_margin > 0 and check.upper_margin > 0


def test_beta_phi_k5_exact_lower_bound():
    check = verify_eq9(5)
    assert check.passed and check.lower == Fraction(4, 3)


def test_beta_phi_k64_margin_shrinks():
    c3, c64 = verify_eq9(3), verify_eq9(64)
    assert c64.passed
    assert 0 < c64.upper_margin < c3.upper_margin


def test_beta_phi_detects_violation():
    # an enclosure above phi must fail the upper bound
    bad = RootEnclosure(10, Fraction(162, 100), Fraction(163, 100))
    assert not verify_eq9(10, bad).passed


@pytest.mark.parametrize("k, lower, upper", [(3, 1, Fraction(3, 2)), (4, Fraction(5, 4), Fraction(5, 3))])
def test_fibonacci_ratio_bounds_examples(k, lower, upper):
    check = verify_theorem(k)
    assert check.passed and check.lower == lower and check.upper == upper


def test_fibonacci_ratio_bounds_k20():
    assert verify_theorem(20).passed


def test_bounds_sweep():
    for k in range(3, 65):
        report = bounds_report(k)
        assert report.passed, k


def test_enclosure_for_wrong_k_rejected():
    with pytest.raises(ValueError):
        verify_theorem(5, isolate_dominant(4))


def test_fib_lucas_bound_examples():
    c2 = verify_eq10(2)
    assert c2.k == 5 and c2.lower == Fraction(4, 3) and c2.passed
    # F5 = 5, L5 = 11, F6 = 8
    assert Fraction(5 + 11, 2 * 6) == Fraction(8, 6) == Fraction(4, 3)
    c3 = verify_eq10(3)
    assert c3.k == 13 and c3.lower == Fraction(21, 14) == Fraction(3, 2) and c3.passed


def test_fib_lucas_bound_forms_agree():
    for t in range(2, 9):
        lucas_form, fib_form = eq10_forms(t)
        n = 2 * t + 1
        f = fibonacci_naive
        assert lucas_form == Fraction(f(n) + lucas_naive(n), 2 * (f(n) + 1))
        assert lucas_form == fib_form == Fraction(f(n + 1), f(n) + 1)


def test_fib_lucas_bound_sweep():
    assert all(verify_eq10(t).passed for t in range(2, 7))


def test_fib_lucas_bound_rejects_small_t():
    with pytest.raises(ValueError):
        verify_eq10(1)


def test_bound_step_examples():
    # k = 3: r = 3/2, r^2 - r - 1 = -1/4 > -(2/3)^2 = -4/9
    r = Fraction(3, 2)
    assert r * r - r - 1 == Fraction(-1, 4) and Fraction(-1, 4) > -Fraction(4, 9)
    assert verify_eq11(3)
    r = Fraction(5, 3)
    assert r * r - r - 1 == Fraction(1, 9)
    assert verify_eq11(4)


def test_bound_step_sweeps():
    assert all(verify_eq11(k) for k in range(3, 201))
    assert all(verify_eq12(k) for k in range(4, 201))
    assert not verify_eq12(3)


def test_beta_limits_examples():
    rows = beta_limits(1000)
    assert abs(float(rows[0].phi_gap) - 0.4426) < 1e-4
    # independent float oracle; the gap decays like phi / k
    gap = PHI - (1000 + math.sqrt(5 * 1000**2 - 4)) / 2002
    assert rows[-1].k == 1000 and abs(float(rows[-1].phi_gap) - gap) < 1e-9
    assert rows[-1].phi_gap < 2e-3
    assert abs(float(rows[-1].beta2) - (1 - PHI)) < 1e-3
    assert beta_limits_ok(rows)


def test_beta_limits_to_10000():
    assert beta_limits_ok(beta_limits(10**4))


def test_convergence_examples():
    rows = convergence_table(64)
    assert convergence_ok(rows)
    assert abs(float(rows[0].midpoint) - 1.32472) < 1e-5
    assert abs(float(rows[0].gap_upper) - 0.29332) < 1e-5
    by_k = {r.k: r for r in rows}
    assert by_k[10].gap_upper < by_k[3].gap_lower
    assert by_k[64].gap_upper < Fraction(1, 100)
    for r in rows:
        assert r.gap_lower <= r.gap_upper and r.gap_lower > 0


def test_convergence_refines_loose_enclosures():
    rows = convergence_table(40, tol=Fraction(1, 2**10))
    assert convergence_ok(rows)


def test_dominant_fit_k3():
    fit = dominant_fit(3, 60)
    assert 0.7 <= fit.C <= 0.75
    # a_20 / rho^20 is a crude independent estimate of C
    assert abs(200 / float(all_roots(3).dominant) ** 20 - float(fit.C)) < 1e-3
    errs = dict(fit.errors)
    assert errs[30] < errs[10]
    assert abs(fit.decay_ratio - fit.predicted_ratio) < 0.1 * fit.predicted_ratio
    assert abs(float(fit.predicted_ratio) - 0.86884 / 1.32472) < 1e-4


def test_dominant_fit_constant_against_limit_oracle():
    fit = dominant_fit(3, 60)
    a = sequence_terms(SequenceSpec(3), 400)
    with mpmath.workdps(80):
        rho = mpmath.polyroots([1, 0, -1, -1], extraprec=200)
        rho = max(r.real for r in rho if abs(r.imag) < 1e-30)
        limit = a[400] / rho**400
        assert abs(limit - fit.C) < mpmath.mpf(10) ** -40


def test_envelope_bounds_error_and_decays():
    fit = dominant_fit(3, 120)
    errs = [e for _, e in fit.errors]
    env = [e for _, e in fit.envelope]
    assert all(e <= b for e, b in zip(errs, env))
    assert all(b < a for a, b in zip(env[10:], env[11:]))
    maxima = window_maxima(errs, 10, 8)
    assert all(b < a for a, b in zip(maxima, maxima[1:]))


def test_full_expansion_reconstructs_exactly():
    for k in range(3, 9):
        fit = dominant_fit(k, 200)
        a = sequence_terms(SequenceSpec(k), 200)
        assert all(fit.reconstruct(n) == a[n] for n in range(201))


def test_dominant_fit_preconditions():
    with pytest.raises(ValueError):
        dominant_fit(3, 11)
    with pytest.raises(ValueError):
        dominant_fit(3, 60, digits=40)


def test_dominant_fit_precision_escalation(monkeypatch):
    import plastic.boundslab as bl

    real = bl.all_roots(3)
    # collapse two roots so the power-basis matrix is singular
    fake = type(real)(**{**real.__dict__, "conjugates": (real.dominant, real.conjugates[1])})
    monkeypatch.setattr(bl, "all_roots", lambda k, digits=50: fake)
    with pytest.raises(PrecisionEscalationError):
        bl.dominant_fit(3, 60)
