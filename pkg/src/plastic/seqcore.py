"""Exact integer sequences: Fibonacci, Lucas and the generalized Padovan family.

Everything here works on Python ints, so values never round.  The residual
helpers return the signed difference of the two sides of an identity; a
correct identity gives 0.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import mpmath

from .errors import InsufficientPrecisionError

LOG10_PHI = math.log10((1 + math.sqrt(5)) / 2)


def _check_index(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"index must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"negative index {n} is not supported")


def _fib_pair(n: int) -> tuple[int, int]:
    """Return (F(n), F(n+1)) by fast doubling."""
    a, b = 0, 1
    for bit in bin(n)[2:]:
        # F(2m) = F(m)(2F(m+1) - F(m)),  F(2m+1) = F(m)^2 + F(m+1)^2
        c = a * (2 * b - a)
        d = a * a + b * b
        if bit == "1":
            a, b = d, c + d
        else:
            a, b = c, d
    return a, b


def fibonacci(n: int) -> int:
    """Exact F(n) with F(0) = 0, F(1) = 1."""
    _check_index(n)
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    """Exact L(n) with L(0) = 2, L(1) = 1."""
    _check_index(n)
    f, g = _fib_pair(n)
    # L(n) = F(n-1) + F(n+1) = 2F(n+1) - F(n)
    return 2 * g - f


def fibonacci_naive(n: int) -> int:
    """Plain iteration; kept as an independent oracle for :func:`fibonacci`."""
    _check_index(n)
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def lucas_naive(n: int) -> int:
    _check_index(n)
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class SequenceSpec:
    """Order and initial data of a_n = a_{n-2} + ... + a_{n-k}."""

    k: int
    initial: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.k < 3:
            raise ValueError(f"order k must be >= 3, got {self.k}")
        if not self.initial:
            object.__setattr__(self, "initial", (1,) * self.k)
        else:
            object.__setattr__(self, "initial", tuple(int(v) for v in self.initial))
        if len(self.initial) != self.k:
            raise ValueError(
                f"need exactly k={self.k} initial values, got {len(self.initial)}"
            )


def iter_sequence(spec: SequenceSpec, n: int):
    """Yield a_0, ..., a_n using a window of the last k terms."""
    _check_index(n)
    window = deque(maxlen=spec.k)
    running = 0  # sum of the window
    for i in range(n + 1):
        if i < spec.k:
            value = spec.initial[i]
        else:
            # every window term except a_{i-1}
            value = running - window[-1]
        if len(window) == spec.k:
            running -= window[0]
        window.append(value)
        running += value
        yield value


def gen_sequence(spec: SequenceSpec, n: int) -> int:
    """Exact a_n of the generalized Padovan recurrence."""
    value = 0
    for value in iter_sequence(spec, n):
        pass
    return value


def sequence_terms(spec: SequenceSpec, n: int) -> list[int]:
    return list(iter_sequence(spec, n))


def cassini_residual(n: int) -> int:
    """F(n+1)F(n-1) - F(n)^2 - (-1)^n, which is always 0."""
    if n < 1:
        raise ValueError("Cassini's identity needs n >= 1")
    f_prev, f_n = _fib_pair(n - 1)
    f_next = f_prev + f_n
    return f_next * f_prev - f_n * f_n - (-1) ** n


def fib_lucas_residual(n: int) -> int:
    """5F(n)^2 - L(n)^2 + 4(-1)^n, which is always 0."""
    f, l = fibonacci(n), lucas(n)
    return 5 * f * f - l * l + 4 * (-1) ** n


def fib_lucas_sum_residual(n: int) -> int:
    """F(n) + L(n) - 2F(n+1), which is always 0."""
    return fibonacci(n) + lucas(n) - 2 * fibonacci(n + 1)


def growth_margin(k: int) -> int:
    """F(2(k+1)) - (F(k)+1)^2, positive for every k >= 3."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    return fibonacci(2 * (k + 1)) - (fibonacci(k) + 1) ** 2


def lucas_power_margin(k: int) -> int:
    """L(k+1) F(k+1)^(k-1) - (F(k)+1)^(k+1).

    Positive for k >= 4.  At k = 3 the value is -18; that case of the bound is
    settled by direct evaluation instead, so callers assert positivity only
    from k = 4 on.
    """
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    f_k, f_k1 = _fib_pair(k)
    return lucas(k + 1) * f_k1 ** (k - 1) - (f_k + 1) ** (k + 1)


def binet_digits(n: int) -> int:
    """Default working precision for :func:`binet_check`."""
    return int(2 * n * LOG10_PHI) + 30


def binet_check(n: int, digits: int | None = None) -> bool:
    """Evaluate both Binet forms at ``digits`` and compare with the recurrence.

    Raises InsufficientPrecisionError when ``digits`` cannot resolve F(n) and
    L(n) to the nearest integer, instead of returning an unreliable verdict.
    """
    _check_index(n)
    if digits is None:
        digits = binet_digits(n)
    if digits < 20:
        raise ValueError("binet_check needs at least 20 digits")
    # integer part of L(n) has about n*log10(phi) digits; keep 10 guard digits
    needed = int(n * LOG10_PHI) + 11
    if digits < needed:
        raise InsufficientPrecisionError(
            f"n={n} needs at least {needed} digits, got {digits}"
        )
    with mpmath.workdps(digits):
        sqrt5 = mpmath.sqrt(5)
        phi = (1 + sqrt5) / 2
        psi = 1 - phi
        f_val = (phi**n - psi**n) / sqrt5
        l_val = phi**n + psi**n
        f_round = int(mpmath.nint(f_val))
        l_round = int(mpmath.nint(l_val))
        if abs(f_val - f_round) > 0.25 or abs(l_val - l_round) > 0.25:
            raise InsufficientPrecisionError(
                f"Binet values for n={n} are not within 1/4 of an integer at {digits} digits"
            )
    return f_round == fibonacci(n) and l_round == lucas(n)
