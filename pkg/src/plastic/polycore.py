"""Dense integer polynomials and the exact machinery around F_k(X).

F_k(X) = X^k - X^(k-2) - ... - X - 1.  Coefficients are stored lowest degree
first.  Exact rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence, Union

import mpmath

from .errors import InsufficientPrecisionError

Number = Union[int, Fraction]


@dataclass(frozen=True)
class IntPolynomial:
    """Immutable dense polynomial with int coefficients, lowest degree first.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree -1.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_high(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        """Build from coefficients listed highest degree first."""
        return cls(tuple(reversed(list(coeffs))))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return eval_exact(self, x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "X" if i == 1 else f"X^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


X_PLUS_1 = IntPolynomial((1, 1))
X_MINUS_1 = IntPolynomial((-1, 1))


def _check_order(k: int) -> None:
    if not isinstance(k, int) or k < 3:
        raise ValueError(f"k must be an int >= 3, got {k!r}")


def build_fk(k: int) -> IntPolynomial:
    """X^k - X^(k-2) - ... - X - 1."""
    _check_order(k)
    return IntPolynomial((-1,) * (k - 1) + (0, 1))


def build_extended(k: int) -> IntPolynomial:
    """(X - 1) F_k(X) = X^(k+1) - X^k - X^(k-1) + 1, checked against the product."""
    _check_order(k)
    coeffs = [0] * (k + 2)
    coeffs[0] = 1
    coeffs[k - 1] = -1
    coeffs[k] = -1
    coeffs[k + 1] = 1
    p = IntPolynomial(tuple(coeffs))
    assert p == X_MINUS_1 * build_fk(k)
    return p


def derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(tuple(i * c for i, c in enumerate(p.coeffs) if i > 0))


def eval_exact(p: IntPolynomial, x: Number) -> Fraction:
    """Exact value of p at a rational point.

    With x = a/b the sum  sum c_i a^i b^(d-i)  is accumulated in integers and
    divided by b^d once, which is much cheaper than Fraction arithmetic per
    Horner step.
    """
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    if p.is_zero():
        return Fraction(0)
    acc = 0
    bpow = 1
    for c in reversed(p.coeffs):
        acc = acc * a + c * bpow
        bpow *= b
    # loop multiplied bpow one time too many
    return Fraction(acc, bpow // b)


def sign_at(p: IntPolynomial, x: Number) -> int:
    """Sign of p(x), exact.  Denominators are positive so only the numerator matters."""
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    acc = 0
    bpow = 1
    for c in reversed(p.coeffs):
        acc = acc * a + c * bpow
        bpow *= b
    return (acc > 0) - (acc < 0)


@dataclass(frozen=True)
class HighPrecValue:
    """Value of a high-precision evaluation together with a rigorous error bound."""

    value: mpmath.mpf
    error: mpmath.mpf
    digits: int

    def contains(self, y) -> bool:
        return abs(self.value - y) <= self.error


def _to_interval(x, iv):
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    if isinstance(x, mpmath.ctx_iv.ivmpf):
        return x
    return iv.mpf(x)


def eval_highprec(p: IntPolynomial, x, digits: int, max_guard: int = 200) -> HighPrecValue:
    """Evaluate p(x) with outward-rounded interval Horner steps.

    ``x`` is treated as exact (an mpf, int or Fraction; a Fraction is first
    enclosed in a tight interval).  The result's ``error`` bounds the distance
    to the true value and is at most one unit in the ``digits``-th significant
    digit.  If that cannot be reached with up to ``max_guard`` extra digits,
    InsufficientPrecisionError is raised.
    """
    if digits < 20:
        raise ValueError("eval_highprec needs at least 20 digits")
    iv = mpmath.iv
    guard = 10
    while True:
        old = iv.dps
        iv.dps = digits + guard
        try:
            xi = _to_interval(x, iv)
            acc = iv.mpf(0)
            for c in reversed(p.coeffs):
                acc = acc * xi + c
        finally:
            iv.dps = old
        with mpmath.workdps(digits + guard):
            lo, hi = mpmath.mpf(acc.a), mpmath.mpf(acc.b)
            mid = (lo + hi) / 2
            radius = (hi - lo) / 2
            # one unit in the last requested significant digit
            ulp = mpmath.mpf(10) ** (1 - digits) * max(mpmath.mpf(1), abs(mid))
            if radius <= ulp / 2:
                return HighPrecValue(value=mid, error=ulp, digits=digits)
        guard *= 2
        if guard > max_guard:
            raise InsufficientPrecisionError(
                f"could not reach {digits} digits for degree {p.degree} evaluation"
            )


def sign_changes(p: IntPolynomial) -> int:
    """Descartes count: sign changes along the coefficient list, zeros skipped."""
    if p.is_zero():
        raise ValueError("sign_changes of the zero polynomial is undefined")
    signs = [c > 0 for c in p.coeffs if c != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def synthetic_divide(p: IntPolynomial, root: Number) -> tuple[IntPolynomial, Fraction]:
    """Divide p by (X - root); return (quotient, remainder) with p = (X - root) q + r.

    The quotient must have integer coefficients (always true for an integer
    root); otherwise ValueError is raised.
    """
    root = Fraction(root)
    if p.degree < 1:
        return IntPolynomial(()), Fraction(p.leading)
    high = list(reversed(p.coeffs))
    out = [Fraction(high[0])]
    for c in high[1:]:
        out.append(c + out[-1] * root)
    remainder = out.pop()
    if any(q.denominator != 1 for q in out):
        raise ValueError(f"quotient by (X - {root}) is not integral")
    return IntPolynomial.from_high([int(q) for q in out]), remainder


def content(p: IntPolynomial) -> int:
    return reduce(math.gcd, p.coeffs, 0)


def primitive_part(p: IntPolynomial) -> IntPolynomial:
    """p divided by its content, with a positive leading coefficient."""
    if p.is_zero():
        return p
    g = content(p)
    if p.leading < 0:
        g = -g
    return IntPolynomial(tuple(c // g for c in p.coeffs))


def pseudo_remainder(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """prem(p, q) = lc(q)^(deg p - deg q + 1) p mod q, computed in integers."""
    if q.is_zero():
        raise ZeroDivisionError("pseudo-remainder by the zero polynomial")
    r = list(p.coeffs)
    dq, lq = q.degree, q.leading
    e = p.degree - dq + 1
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        lr = r[-1]
        r = [c * lq for c in r]
        for i, qc in enumerate(q.coeffs):
            r[i + shift] -= lr * qc
        e -= 1
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    # scale so the result is exactly lc(q)^(deg p - deg q + 1) p mod q
    scale = lq ** max(e, 0)
    return IntPolynomial(tuple(c * scale for c in r))


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """GCD over the rationals via the primitive remainder sequence.

    The result is primitive with a positive leading coefficient; a constant
    result is returned as the polynomial 1.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = primitive_part(p), primitive_part(q)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, primitive_part(r)
    if a.degree == 0:
        return IntPolynomial((1,))
    return primitive_part(a)


def isqrt_bracket(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rationals lo <= sqrt(n) <= hi with hi - lo <= 2^-bits (lo == hi when exact)."""
    if n < 0:
        raise ValueError("square root of a negative number")
    scale = 1 << bits
    s = math.isqrt(n * scale * scale)
    lo = Fraction(s, scale)
    hi = lo if s * s == n * scale * scale else Fraction(s + 1, scale)
    return lo, hi


def phi_bracket(bits: int = 256) -> tuple[Fraction, Fraction]:
    """Rational enclosure of the golden ratio of width at most 2^-(bits+1)."""
    lo, hi = isqrt_bracket(5, bits)
    return (1 + lo) / 2, (1 + hi) / 2


def compare_phi(q: Number) -> int:
    """Exact sign of phi - q."""
    # phi > q  <=>  sqrt(5) > 2q - 1
    t = 2 * Fraction(q) - 1
    if t < 0:
        return 1
    return (5 > t * t) - (5 < t * t)


@dataclass(frozen=True)
class CriticalPoints:
    """Nonzero critical points of (X - 1) F_k(X), the roots of (k+1)X^2 - kX - (k-1)."""

    k: int
    discriminant: int
    beta1: mpmath.mpf
    beta2: mpmath.mpf
    exact_flag: bool
    beta1_exact: Fraction | None
    beta2_exact: Fraction | None
    residual: mpmath.mpf
    digits: int


def beta_exact(k: int) -> tuple[Fraction, Fraction] | None:
    """(beta1, beta2) as rationals when 5k^2 - 4 is a perfect square, else None."""
    disc = 5 * k * k - 4
    s = math.isqrt(disc)
    if s * s != disc:
        return None
    return Fraction(k + s, 2 * (k + 1)), Fraction(k - s, 2 * (k + 1))


def compare_beta1(k: int, q: Number) -> int:
    """Exact sign of beta1(k) - q."""
    # beta1 > q  <=>  sqrt(5k^2-4) > 2(k+1)q - k
    t = 2 * (k + 1) * Fraction(q) - k
    disc = 5 * k * k - 4
    if t < 0:
        return 1
    return (disc > t * t) - (disc < t * t)


def beta1_bracket(k: int, bits: int = 256) -> tuple[Fraction, Fraction]:
    """Rational enclosure of beta1(k); degenerate when the discriminant is a square."""
    lo, hi = isqrt_bracket(5 * k * k - 4, bits)
    d = 2 * (k + 1)
    return (k + lo) / d, (k + hi) / d


def critical_points(k: int, digits: int = 50) -> CriticalPoints:
    """beta_{1,2}(k) = (k +- sqrt(5k^2 - 4)) / (2(k+1)) at ``digits`` precision.

    The residual is the largest |derivative of (X-1)F_k| at the three critical
    points 0, beta1, beta2, evaluated at twice the precision.
    """
    _check_order(k)
    disc = 5 * k * k - 4
    exact = beta_exact(k)
    with mpmath.workdps(2 * digits):
        root = mpmath.sqrt(disc)
        b1 = (k + root) / (2 * (k + 1))
        b2 = (k - root) / (2 * (k + 1))
        if exact is not None:
            b1 = mpmath.mpf(exact[0].numerator) / exact[0].denominator
            b2 = mpmath.mpf(exact[1].numerator) / exact[1].denominator
        dpoly = derivative(build_extended(k))
        residual = max(abs(dpoly(mpmath.mpf(0))), abs(dpoly(b1)), abs(dpoly(b2)))
        tol = mpmath.mpf(10) ** (-digits)
        if residual > tol:
            raise AssertionError(f"critical point residual {residual} exceeds {tol}")
    with mpmath.workdps(digits):
        return CriticalPoints(
            k=k,
            discriminant=disc,
            beta1=+b1,
            beta2=+b2,
            exact_flag=exact is not None,
            beta1_exact=exact[0] if exact else None,
            beta2_exact=exact[1] if exact else None,
            residual=+residual,
            digits=digits,
        )
