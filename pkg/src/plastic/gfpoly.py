"""Polynomials over GF(p) as lists of ints, lowest degree first.

Only what the irreducibility probe needs: remainder, gcd, modular powers and
distinct-degree factorization.
"""

from __future__ import annotations


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_mod(coeffs, p: int) -> list[int]:
    return trim([c % p for c in coeffs])


def sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        factor = a[-1] * inv % p
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - factor * c) % p
        trim(a)
    return trim(q), a


def mod(a: list[int], b: list[int], p: int) -> list[int]:
    return divmod_(a, b, p)[1]


def monic(a: list[int], p: int) -> list[int]:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = mod(base, f, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), f, p)
        base = mod(mul(base, base, p), f, p)
        e >>= 1
    return result


def derivative(a: list[int], p: int) -> list[int]:
    return trim([(i * c) % p for i, c in enumerate(a)][1:])


def is_squarefree(f: list[int], p: int) -> bool:
    return len(gcd(f, derivative(f, p), p)) == 1


def distinct_degree_degrees(f: list[int], p: int) -> list[int]:
    """Degrees of the irreducible factors of a monic squarefree f over GF(p)."""
    f = monic(trim(list(f)), p)
    degrees: list[int] = []
    x = [0, 1]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            degrees.extend([d] * ((len(g) - 1) // d))
            f = divmod_(f, g, p)[0]
            h = mod(h, f, p)
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return sorted(degrees)
