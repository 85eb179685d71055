"""Roots of F_k: certified isolation of the dominant root, all complex roots,
Pisot/Salem classification, the cube-root iteration for the plastic number,
and a finite-field irreducibility probe.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from . import gfpoly
from .errors import CertificationError, IndeterminateError, RootFindingError
from .polycore import (
    IntPolynomial,
    build_fk,
    sign_at,
    synthetic_divide,
)
from .seqcore import fibonacci


# --------------------------------------------------------------------------
# dominant root
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RootEnclosure:
    """Exact interval [lo, hi] with F_k(lo) < 0 < F_k(hi)."""

    k: int
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def midpoint_decimal(self, digits: int = 30) -> str:
        with mpmath.workdps(digits + 5):
            mid = mpmath.mpf(self.midpoint.numerator) / self.midpoint.denominator
            return mpmath.nstr(mid, digits, strip_zeros=False)

    def verify(self) -> None:
        p = build_fk(self.k)
        if not (1 < self.lo < self.hi < 2):
            raise CertificationError(f"enclosure {self} is not inside (1, 2)")
        if sign_at(p, self.lo) >= 0 or sign_at(p, self.hi) <= 0:
            raise CertificationError(f"no sign change of F_{self.k} across {self}")

    def refine(self, tol) -> "RootEnclosure":
        lo, hi = _bisect(build_fk(self.k), self.lo, self.hi, Fraction(tol))
        return RootEnclosure(self.k, lo, hi)


def bracket_dominant(k: int) -> tuple[Fraction, Fraction]:
    """[F(k+1)/(F(k)+1), F(k+1)/F(k)], checked to straddle a sign change of F_k."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    f_k, f_k1 = fibonacci(k), fibonacci(k + 1)
    lo, hi = Fraction(f_k1, f_k + 1), Fraction(f_k1, f_k)
    p = build_fk(k)
    if sign_at(p, lo) >= 0 or sign_at(p, hi) <= 0:
        raise CertificationError(f"Fibonacci bracket for k={k} shows no sign change")
    return lo, hi


def _bisect(p: IntPolynomial, lo: Fraction, hi: Fraction, tol: Fraction,
            strict: tuple[Fraction, Fraction] | None = None) -> tuple[Fraction, Fraction]:
    # strict: original endpoints that must both be moved off before stopping
    while hi - lo > tol or (strict and (lo == strict[0] or hi == strict[1])):
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            raise CertificationError(f"exact rational root {mid} of an irreducible-root bracket")
        if s < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


@functools.lru_cache(maxsize=512)
def _isolate_cached(k: int, tol: Fraction) -> RootEnclosure:
    lo0, hi0 = bracket_dominant(k)
    lo, hi = _bisect(build_fk(k), lo0, hi0, tol, strict=(lo0, hi0))
    enc = RootEnclosure(k, lo, hi)
    enc.verify()
    return enc


def isolate_dominant(k: int, tol=Fraction(1, 2**60)) -> RootEnclosure:
    """Bisect the Fibonacci bracket with exact rational signs down to width <= tol.

    Both endpoints of the result lie strictly inside the starting bracket.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return _isolate_cached(k, tol)


def mpf_to_fraction(x) -> Fraction:
    """Exact value of a finite mpf."""
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(man) * Fraction(2) ** exp


# --------------------------------------------------------------------------
# all roots
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexRootSet:
    """All k roots of F_k.

    ``conjugates`` holds the non-real roots as (z, conj z) pairs with
    Im z > 0 first; ``unit_roots`` is (-1,) for even k and empty otherwise.
    """

    k: int
    dominant: mpmath.mpf
    unit_roots: tuple
    conjugates: tuple
    residual_bound: mpmath.mpf
    vieta_sum: mpmath.mpf
    vieta_product_error: mpmath.mpf
    digits: int
    iterations: int

    def roots(self) -> list:
        return [self.dominant, *self.unit_roots, *self.conjugates]

    def conjugate_moduli(self) -> list:
        return [abs(z) for z in self.conjugates]


def _horner_with_derivative(coeffs_high: Sequence, z):
    p = coeffs_high[0]
    dp = 0
    for c in coeffs_high[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth(coeffs_high: Sequence, start: Sequence, max_iter: int, tol) -> tuple[list, int]:
    """Aberth-Ehrlich simultaneous iteration (Gauss-Seidel updates).

    Works at the current mpmath precision.  Returns the root approximations
    and the number of sweeps; raises RootFindingError when the largest
    relative correction is still above ``tol`` after ``max_iter`` sweeps.
    """
    z = [mpmath.mpc(s) for s in start]
    n = len(z)
    worst = None
    for sweep in range(1, max_iter + 1):
        worst = mpmath.mpf(0)
        for i in range(n):
            p, dp = _horner_with_derivative(coeffs_high, z[i])
            if p == 0:
                continue
            ratio = p / dp
            s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
            w = ratio / (1 - ratio * s)
            z[i] -= w
            rel = abs(w) / max(1, abs(z[i]))
            if rel > worst:
                worst = rel
        if worst < tol:
            return z, sweep
    raise RootFindingError(
        f"Aberth iteration did not converge in {max_iter} sweeps",
        diagnostics={"last_correction": str(worst), "degree": n},
    )


def _solve_numeric(poly: IntPolynomial, radius, budget: int, wp: int) -> tuple[list, int]:
    m = poly.degree
    coeffs_high = [mpmath.mpf(c) for c in reversed(poly.coeffs)]
    start = [
        radius * mpmath.expj(2 * mpmath.pi * (j + mpmath.mpf(1) / 4) / m + mpmath.mpf(1) / 7)
        for j in range(m)
    ]
    tol = mpmath.mpf(10) ** (-(wp - 8))
    roots, sweeps = aberth(coeffs_high, start, budget, tol)
    # one extra sweep at converged precision
    roots, extra = aberth(coeffs_high, roots, 3, tol)
    return roots, sweeps + extra


@functools.lru_cache(maxsize=256)
def all_roots(k: int, digits: int = 50) -> ComplexRootSet:
    """All k roots of F_k at ``digits`` precision, solved at twice that.

    For even k the exact root -1 is divided out first.  Every root satisfies
    |F_k(root)| < 10^(-digits/2) and the Vieta residuals (sum of roots, product
    of roots against (-1)^(k+1)) obey the same bound, or RootFindingError is
    raised.
    """
    if digits < 30:
        raise ValueError("all_roots needs at least 30 digits")
    fk = build_fk(k)
    if k % 2 == 0:
        target, rem = synthetic_divide(fk, -1)
        if rem != 0:
            raise CertificationError(f"-1 is not a root of F_{k}")
        unit = (mpmath.mpf(-1),)
    else:
        target, unit = fk, ()

    wp = 2 * digits
    enclosure = isolate_dominant(k, Fraction(1, 2**40))
    with mpmath.workdps(wp):
        lam0 = mpmath.mpf(enclosure.midpoint.numerator) / enclosure.midpoint.denominator
        radius = mpmath.sqrt(max(mpmath.mpf(1), lam0))
        roots, sweeps = _solve_numeric(target, radius, 200 * k, wp)

        threshold = mpmath.mpf(10) ** (-digits)
        reals = [z for z in roots if abs(z.imag) <= threshold]
        upper = sorted((z for z in roots if z.imag > threshold), key=lambda z: z.real)
        lower = [z for z in roots if z.imag < -threshold]
        if len(reals) != 1 or len(upper) != len(lower):
            raise RootFindingError(
                f"unexpected root layout for F_{k}",
                diagnostics={"real": len(reals), "upper": len(upper), "lower": len(lower)},
            )
        dominant = reals[0].real
        if not enclosure.contains(mpf_to_fraction(dominant)):
            raise RootFindingError(f"numeric dominant root of F_{k} left its certified enclosure")

        pairs = []
        for z in upper:
            partner = min(lower, key=lambda w: abs(w - mpmath.conj(z)))
            lower.remove(partner)
            avg = (z + mpmath.conj(partner)) / 2
            pairs.extend([avg, mpmath.conj(avg)])

        every = [dominant, *unit, *pairs]
        if len(every) != k:
            raise RootFindingError(f"found {len(every)} roots of F_{k}, expected {k}")
        residual = max(abs(fk(z)) for z in every)
        vsum = abs(mpmath.fsum(every))
        vprod = abs(mpmath.fprod(every) - (-1) ** (k + 1))
        bound = mpmath.mpf(10) ** (-(digits / 2))
        if residual >= bound or vsum >= bound or vprod >= bound:
            raise RootFindingError(
                f"root set of F_{k} fails validation",
                diagnostics={"residual": str(residual), "sum": str(vsum), "product": str(vprod)},
            )
    return ComplexRootSet(
        k=k,
        dominant=dominant,
        unit_roots=unit,
        conjugates=tuple(pairs),
        residual_bound=residual,
        vieta_sum=vsum,
        vieta_product_error=vprod,
        digits=digits,
        iterations=sweeps,
    )


def spectral_gap(k: int, digits: int = 50) -> tuple:
    """(lambda_k, largest modulus among the non-real roots)."""
    rs = all_roots(k, digits)
    second = max(rs.conjugate_moduli())
    if not second < 1:
        raise CertificationError(f"F_{k} has a non-real root of modulus {second} >= 1")
    return rs.dominant, second


# --------------------------------------------------------------------------
# irreducibility
# --------------------------------------------------------------------------


class Verdict(str, enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ProbeResult:
    """Verdict plus the evidence behind it.

    ``patterns`` maps each usable prime to the sorted degrees of the
    irreducible factors modulo that prime.  ``certificate`` says which rule
    decided the verdict.
    """

    verdict: Verdict
    certificate: str
    patterns: dict = field(default_factory=dict)


def _subset_sums(degrees: Iterable[int], n: int) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return {s for s in sums if 0 < s < n}


def factor_degree_patterns(poly: IntPolynomial, primes: Sequence[int]) -> dict[int, list[int]]:
    """Factor degrees of a monic poly modulo each prime where it stays squarefree."""
    patterns = {}
    for p in primes:
        f = gfpoly.reduce_mod(poly.coeffs, p)
        if len(f) - 1 != poly.degree or not gfpoly.is_squarefree(f, p):
            continue
        patterns[p] = gfpoly.distinct_degree_degrees(f, p)
    return patterns


def probe_polynomial(poly: IntPolynomial, primes: Sequence[int]) -> ProbeResult:
    """Certify irreducibility of a monic integer polynomial from factorizations mod p.

    A degree-d factor over Z reduces to a degree-d product of factors modulo
    every prime, so if no d in (0, n) is a sum of factor degrees for every
    listed prime the polynomial is irreducible.  A single prime with one
    factor is the special case.  Never returns REDUCIBLE.
    """
    if not primes or any(p < 2 for p in primes):
        raise ValueError("need a nonempty list of primes >= 2")
    if poly.leading != 1:
        raise ValueError("probe needs a monic polynomial")
    n = poly.degree
    patterns = factor_degree_patterns(poly, primes)
    for p, degs in patterns.items():
        if degs == [n]:
            return ProbeResult(Verdict.IRREDUCIBLE, f"irreducible mod {p}", patterns)
    if patterns:
        common = set(range(1, n))
        for degs in patterns.values():
            common &= _subset_sums(degs, n)
        if not common:
            used = ", ".join(str(p) for p in patterns)
            return ProbeResult(
                Verdict.IRREDUCIBLE, f"incompatible factor degrees mod {used}", patterns
            )
    return ProbeResult(Verdict.UNKNOWN, "no certificate from the listed primes", patterns)


def irreducibility_probe(k: int, primes: Sequence[int] = (2, 3, 5, 7)) -> ProbeResult:
    """REDUCIBLE when X + 1 divides F_k exactly; otherwise try the finite-field certificate."""
    if not primes or any(p < 2 for p in primes):
        raise ValueError("need a nonempty list of primes >= 2")
    fk = build_fk(k)
    _, rem = synthetic_divide(fk, -1)
    if rem == 0:
        return ProbeResult(Verdict.REDUCIBLE, "divisible by X + 1")
    return probe_polynomial(fk, primes)


# --------------------------------------------------------------------------
# classification
# --------------------------------------------------------------------------


class Kind(str, enum.Enum):
    PISOT = "pisot"
    SALEM = "salem"


@dataclass(frozen=True)
class ClassificationResult:
    k: int
    kind: Kind
    max_conjugate_modulus: mpmath.mpf
    unit_modulus_count: int
    minimal_poly_note: str


def _deflated_note(k: int, rs: ComplexRootSet) -> str:
    quotient, _ = synthetic_divide(build_fk(k), -1)
    probe = probe_polynomial(quotient, (2, 3, 5, 7, 11, 13))
    others = max(rs.conjugate_moduli())
    status = (
        f"certified irreducible ({probe.certificate})"
        if probe.verdict is Verdict.IRREDUCIBLE
        else "irreducibility not certified"
    )
    return (
        f"F_{k} = (X + 1)({quotient}); the factor without -1 is {status}. "
        f"Its other roots have modulus at most {mpmath.nstr(others, 12)} < 1, so with that "
        f"factor as minimal polynomial lambda_{k} meets the Pisot condition; the Salem verdict "
        f"comes from the unit root -1 of F_{k} itself."
    )


def classify(k: int, digits: int = 50) -> ClassificationResult:
    """Pisot or Salem, judged on the full root set of F_k.

    A non-deflated root whose modulus is within 10^(-digits/4) of 1 raises
    IndeterminateError rather than being assigned to either side.
    """
    rs = all_roots(k, digits)
    moduli = rs.conjugate_moduli()
    band = mpmath.mpf(10) ** (-(digits / 4))
    for m in moduli:
        if abs(m - 1) <= band:
            raise IndeterminateError(f"root modulus {mpmath.nstr(m, 20)} of F_{k} is too close to 1")
    unit_count = len(rs.unit_roots)
    largest = max(moduli)
    if unit_count == 0 and largest < 1:
        kind = Kind.PISOT
        probe = irreducibility_probe(k, (2, 3, 5, 7, 11, 13))
        note = (
            f"F_{k} has no factor X + 1; irreducibility {probe.verdict.value} "
            f"({probe.certificate}), so F_{k} is the minimal polynomial when certified."
        )
    elif unit_count >= 1 and largest <= 1:
        kind = Kind.SALEM
        note = _deflated_note(k, rs)
    else:
        raise CertificationError(
            f"F_{k} has a conjugate of modulus {mpmath.nstr(largest, 20)} > 1"
        )
    return ClassificationResult(
        k=k,
        kind=kind,
        max_conjugate_modulus=max([largest, *(abs(u) for u in rs.unit_roots)]),
        unit_modulus_count=unit_count,
        minimal_poly_note=note,
    )


# --------------------------------------------------------------------------
# nested cube roots
# --------------------------------------------------------------------------


def nested_radical_iterates(iterations: int, digits: int = 50) -> list:
    """x_0 = 1, x_{n+1} = (1 + x_n)^(1/3); returns x_0..x_iterations."""
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    with mpmath.workdps(digits):
        xs = [mpmath.mpf(1)]
        for _ in range(iterations):
            xs.append(mpmath.cbrt(1 + xs[-1]))
    return xs


def nested_radical(iterations: int, digits: int = 50):
    return nested_radical_iterates(iterations, digits)[-1]
