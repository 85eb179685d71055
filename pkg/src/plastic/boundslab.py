"""Exact checks of the bounds on lambda_k, the limits of the critical points,
and the dominant-root approximation of the generalized Padovan sequence.

Pass/fail decisions are made with exact rational comparisons: the golden ratio
and beta1(k) are quadratic irrationals, so ``q < phi`` and ``q < beta1`` reduce
to integer comparisons of squares.  Margins are reported as certified lower
bounds (Fractions) for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import mpmath

from .errors import PrecisionEscalationError
from .polycore import (
    beta1_bracket,
    beta_exact,
    compare_beta1,
    compare_phi,
    phi_bracket,
)
from .rootlab import RootEnclosure, all_roots, isolate_dominant
from .seqcore import SequenceSpec, fibonacci, lucas, sequence_terms

Bound = Union[Fraction, str]

DEFAULT_TOL = Fraction(1, 2**60)
MARGIN_BITS = 256


@dataclass(frozen=True)
class BoundCheck:
    """One two-sided bound lower < lambda_k < upper tested against an enclosure.

    ``lower_margin`` and ``upper_margin`` are rational lower bounds on
    enclosure.lo - lower and upper - enclosure.hi.  ``lower``/``upper`` are
    Fractions when exact and descriptive strings for irrational bounds.
    """

    name: str
    k: int
    lower: Bound | None
    enclosure: RootEnclosure
    upper: Bound | None
    passed: bool
    lower_margin: Fraction | None
    upper_margin: Fraction | None


@dataclass
class BoundsReport:
    k: int
    checks: list[BoundCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _enclosure(k: int, enclosure: RootEnclosure | None, tol=DEFAULT_TOL) -> RootEnclosure:
    if enclosure is None:
        return isolate_dominant(k, tol)
    if enclosure.k != k:
        raise ValueError(f"enclosure is for k={enclosure.k}, not k={k}")
    return enclosure


def verify_eq9(k: int, enclosure: RootEnclosure | None = None) -> BoundCheck:
    """beta1(k) < lambda_k < phi, decided exactly."""
    enc = _enclosure(k, enclosure)
    exact = beta_exact(k)
    lower_ok = compare_beta1(k, enc.lo) < 0
    upper_ok = compare_phi(enc.hi) > 0
    _, b1_hi = beta1_bracket(k, MARGIN_BITS)
    phi_lo, _ = phi_bracket(MARGIN_BITS)
    return BoundCheck(
        name="beta1 < lambda < phi",
        k=k,
        lower=exact[0] if exact else f"({k} + sqrt({5 * k * k - 4}))/{2 * (k + 1)}",
        enclosure=enc,
        upper="(1 + sqrt(5))/2",
        passed=lower_ok and upper_ok,
        lower_margin=enc.lo - b1_hi,
        upper_margin=phi_lo - enc.hi,
    )


def verify_theorem(k: int, enclosure: RootEnclosure | None = None) -> BoundCheck:
    """F(k+1)/(F(k)+1) < lambda_k < F(k+1)/F(k) by exact comparison."""
    enc = _enclosure(k, enclosure)
    f_k, f_k1 = fibonacci(k), fibonacci(k + 1)
    lower, upper = Fraction(f_k1, f_k + 1), Fraction(f_k1, f_k)
    return BoundCheck(
        name="F(k+1)/(F(k)+1) < lambda < F(k+1)/F(k)",
        k=k,
        lower=lower,
        enclosure=enc,
        upper=upper,
        passed=lower < enc.lo and enc.hi < upper,
        lower_margin=enc.lo - lower,
        upper_margin=upper - enc.hi,
    )


def verify_eq10(t: int, tol=DEFAULT_TOL) -> BoundCheck:
    """Lower bound for k = F(2t+1) in its Fibonacci/Lucas form.

    Checks three things exactly: 5k^2 - 4 = L(2t+1)^2 (so beta1(k) is
    rational), (F(2t+1) + L(2t+1)) / (2(F(2t+1) + 1)) = F(2t+2) / (F(2t+1) + 1),
    and that this common value lies strictly below the enclosure of lambda_k.
    """
    if t < 2:
        raise ValueError("t must be >= 2 so that k = F(2t+1) >= 3")
    n = 2 * t + 1
    k = fibonacci(n)
    f_n, l_n, f_n1 = k, lucas(n), fibonacci(n + 1)
    lucas_form = Fraction(f_n + l_n, 2 * (f_n + 1))
    fib_form = Fraction(f_n1, f_n + 1)
    enc = isolate_dominant(k, tol)
    square_ok = 5 * k * k - 4 == l_n * l_n
    forms_ok = lucas_form == fib_form and beta_exact(k) is not None and beta_exact(k)[0] == fib_form
    return BoundCheck(
        name=f"lambda_F(2t+1) > F(2t+2)/(F(2t+1)+1), t={t}",
        k=k,
        lower=fib_form,
        enclosure=enc,
        upper=None,
        passed=square_ok and forms_ok and fib_form < enc.lo,
        lower_margin=enc.lo - fib_form,
        upper_margin=None,
    )


def eq10_forms(t: int) -> tuple[Fraction, Fraction]:
    """The Lucas form and the Fibonacci form of the bound, as exact rationals."""
    n = 2 * t + 1
    f_n = fibonacci(n)
    return Fraction(f_n + lucas(n), 2 * (f_n + 1)), Fraction(fibonacci(n + 1), f_n + 1)


def verify_eq11(k: int) -> bool:
    """Upper-bound step: r^2 - r - 1 = (-1)^k / F(k)^2 > -(1/r)^(k-1) for r = F(k+1)/F(k)."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    f_k, f_k1 = fibonacci(k), fibonacci(k + 1)
    r = Fraction(f_k1, f_k)
    lhs = r * r - r - 1
    cassini = lhs == Fraction((-1) ** k, f_k * f_k)
    return cassini and lhs > -(1 / r) ** (k - 1)


def verify_eq12(k: int) -> bool:
    """Lower-bound step: s^2 - s - 1 < -(1/s)^(k-1) for s = F(k+1)/(F(k)+1).

    Also checks the rewrite of s^2 - s - 1 as ((-1)^k - L(k+1) - 1)/(F(k)+1)^2.
    Holds for k >= 4; at k = 3 both sides equal -1.
    """
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    f_k, f_k1 = fibonacci(k), fibonacci(k + 1)
    s = Fraction(f_k1, f_k + 1)
    lhs = s * s - s - 1
    rewrite = lhs == Fraction((-1) ** k - lucas(k + 1) - 1, (f_k + 1) ** 2)
    return rewrite and lhs < -(1 / s) ** (k - 1)


def bounds_report(k: int, tol=DEFAULT_TOL) -> BoundsReport:
    enc = isolate_dominant(k, tol)
    return BoundsReport(k, [verify_eq9(k, enc), verify_theorem(k, enc)])


# --------------------------------------------------------------------------
# limits
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BetaRow:
    k: int
    beta1: mpmath.mpf
    phi_gap: mpmath.mpf
    beta2: mpmath.mpf
    beta2_gap: mpmath.mpf


def beta_limits(k_max: int, digits: int = 50) -> list[BetaRow]:
    """Rows (k, beta1, phi - beta1, beta2, beta2 - (1 - phi)) for k = 3..k_max."""
    if k_max < 3:
        raise ValueError("k_max must be >= 3")
    rows = []
    with mpmath.workdps(digits):
        phi = (1 + mpmath.sqrt(5)) / 2
        for k in range(3, k_max + 1):
            root = mpmath.sqrt(5 * k * k - 4)
            b1 = (k + root) / (2 * (k + 1))
            b2 = (k - root) / (2 * (k + 1))
            rows.append(BetaRow(k, b1, phi - b1, b2, b2 - (1 - phi)))
    return rows


def beta_limits_ok(rows: list[BetaRow]) -> bool:
    """Both gap columns positive and strictly shrinking."""
    for row in rows:
        if not (row.phi_gap > 0 and row.beta2_gap > 0):
            return False
    return all(
        b.phi_gap < a.phi_gap and b.beta2_gap < a.beta2_gap for a, b in zip(rows, rows[1:])
    )


@dataclass(frozen=True)
class ConvergenceRow:
    """``gap_upper`` and ``gap_lower`` are rationals bracketing phi - lambda_k."""

    k: int
    enclosure: RootEnclosure
    midpoint: Fraction
    gap_upper: Fraction
    gap_lower: Fraction
    beta1_below: bool


def convergence_table(k_max: int, tol=DEFAULT_TOL, max_refine: int = 64) -> list[ConvergenceRow]:
    """Certified gaps phi - lambda_k for k = 3..k_max.

    Each enclosure is refined until it lies certifiably below phi and is
    disjoint from the previous one, so that the ordering of the gaps is a
    certificate rather than a numeric observation.
    """
    if k_max < 3:
        raise ValueError("k_max must be >= 3")
    phi_lo, phi_hi = phi_bracket(MARGIN_BITS)
    rows: list[ConvergenceRow] = []
    prev: RootEnclosure | None = None
    for k in range(3, k_max + 1):
        enc = isolate_dominant(k, tol)
        for _ in range(max_refine):
            if phi_lo - enc.hi > 0 and (prev is None or prev.hi < enc.lo):
                break
            enc = enc.refine(enc.width / 4)
            if prev is not None and not prev.hi < enc.lo:
                prev_k = prev.k
                prev = prev.refine(prev.width / 4)
                rows[-1] = _convergence_row(prev_k, prev, phi_lo, phi_hi)
        rows.append(_convergence_row(k, enc, phi_lo, phi_hi))
        prev = enc
    return rows


def _convergence_row(k, enc, phi_lo, phi_hi) -> ConvergenceRow:
    return ConvergenceRow(
        k=k,
        enclosure=enc,
        midpoint=enc.midpoint,
        gap_upper=phi_hi - enc.lo,
        gap_lower=phi_lo - enc.hi,
        beta1_below=compare_beta1(k, enc.lo) < 0,
    )


def convergence_ok(rows: list[ConvergenceRow]) -> bool:
    """Gaps certified positive and strictly decreasing, beta1 below every lambda_k."""
    if not all(r.gap_lower > 0 and r.beta1_below for r in rows):
        return False
    # gap_k > gap_{k+1}  <=>  lambda_k < lambda_{k+1}
    return all(a.enclosure.hi < b.enclosure.lo for a, b in zip(rows, rows[1:]))


# --------------------------------------------------------------------------
# dominant-root fit
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticFit:
    """a_n ~ C lambda^n with the full root expansion kept alongside.

    ``errors`` holds (n, |a_n - C lambda^n| / a_n); ``envelope`` holds
    (n, sum_i |c_i| |mu_i|^n / a_n) over the non-dominant roots, a rigorous
    upper bound on the relative error that decays geometrically.
    ``decay_ratio`` is measured from the actual errors.
    """

    k: int
    C: mpmath.mpf
    coefficients: tuple
    roots: tuple
    errors: tuple
    envelope: tuple
    decay_ratio: mpmath.mpf
    predicted_ratio: mpmath.mpf
    digits: int

    def reconstruct(self, n: int) -> int:
        """a_n rebuilt from every root of F_k, rounded to the nearest integer."""
        with mpmath.workdps(2 * self.digits):
            total = mpmath.fsum(c * r**n for c, r in zip(self.coefficients, self.roots))
            return int(mpmath.nint(total.real))


def window_maxima(values: list, start: int, width: int) -> list:
    """Maxima of consecutive blocks values[start:start+width], ..."""
    out = []
    for i in range(start, len(values) - width + 1, width):
        out.append(max(values[i:i + width]))
    return out


def dominant_fit(k: int, n_max: int, digits: int = 50) -> AsymptoticFit:
    """Solve the power-basis system sum_i c_i r_i^n = a_n (n < k) over all roots of F_k.

    C is the coefficient of lambda_k.  Raises PrecisionEscalationError when the
    solve residual or the imaginary part of C exceeds 10^(-digits/2).
    """
    if n_max < 4 * k:
        raise ValueError(f"n_max must be >= 4k = {4 * k}")
    if digits < 50:
        raise ValueError("dominant_fit needs at least 50 digits")
    rs = all_roots(k, digits)
    roots = rs.roots()
    spec = SequenceSpec(k)
    terms = sequence_terms(spec, n_max)
    wp = 2 * digits
    with mpmath.workdps(wp):
        separation = min(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1 :])
        if separation < mpmath.mpf(10) ** (-(digits / 2)):
            raise PrecisionEscalationError(
                f"roots of F_{k} are not separated at {digits} digits; the power-basis"
                " matrix is singular"
            )
        vander = mpmath.matrix([[mpmath.mpc(r) ** i for r in roots] for i in range(k)])
        rhs = mpmath.matrix([terms[i] for i in range(k)])
        try:
            coeffs = mpmath.lu_solve(vander, rhs)
        except ZeroDivisionError as exc:
            raise PrecisionEscalationError(
                f"power-basis matrix for k={k} is numerically singular at {digits} digits"
            ) from exc
        residual = mpmath.mnorm(vander * coeffs - rhs, "inf")
        threshold = mpmath.mpf(10) ** (-(digits / 2))
        C = coeffs[0]
        if residual > threshold or abs(C.imag) > threshold:
            raise PrecisionEscalationError(
                f"power-basis solve for k={k} is too ill-conditioned at {digits} digits"
                f" (residual {mpmath.nstr(residual, 5)}); increase digits"
            )
        lam = roots[0]
        Creal = C.real
        errors, envelope = [], []
        for n, a in enumerate(terms):
            errors.append((n, abs(a - Creal * lam**n) / a))
            envelope.append(
                (n, mpmath.fsum(abs(c) * abs(r) ** n for c, r in zip(coeffs[1:], roots[1:])) / a)
            )
        predicted = max(abs(r) for r in roots[1:]) / lam
        start = min(2 * k, n_max // 4)
        width = max(2 * k, 8)
        maxima = window_maxima([e for _, e in errors], start, width)
        if len(maxima) < 2:
            raise ValueError("n_max too small to measure a decay ratio")
        span = (len(maxima) - 1) * width
        ratio = (maxima[-1] / maxima[0]) ** (mpmath.mpf(1) / span)
    with mpmath.workdps(digits):
        return AsymptoticFit(
            k=k,
            C=+Creal,
            coefficients=tuple(coeffs[i] for i in range(k)),
            roots=tuple(roots),
            errors=tuple(errors),
            envelope=tuple(envelope),
            decay_ratio=+ratio,
            predicted_ratio=+predicted,
            digits=digits,
        )
