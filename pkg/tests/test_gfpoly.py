import sympy
from hypothesis import given, strategies as st

from plastic import gfpoly

PRIMES = [2, 3, 5, 7, 11]


def _sympy_degrees(coeffs, p):
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    degs = []
    for factor, mult in poly.factor_list()[1]:
        degs.extend([factor.degree()] * mult)
    return sorted(degs)


@given(
    st.sampled_from(PRIMES),
    st.lists(st.integers(0, 10), min_size=2, max_size=14),
)
def test_ddf_degrees_match_sympy(p, body):
    f = gfpoly.reduce_mod(body + [1], p)
    if len(f) < 2 or not gfpoly.is_squarefree(f, p):
        return
    assert gfpoly.distinct_degree_degrees(f, p) == _sympy_degrees(f, p)


@given(
    st.sampled_from(PRIMES),
    st.lists(st.integers(0, 10), min_size=1, max_size=8),
    st.lists(st.integers(0, 10), min_size=1, max_size=8),
)
def test_divmod_reconstructs(p, a, b):
    a, b = gfpoly.reduce_mod(a, p), gfpoly.reduce_mod(b, p)
    if not b:
        return
    q, r = gfpoly.divmod_(a, b, p)
    assert len(r) < len(b)
    rebuilt = gfpoly.sub(gfpoly.mul(q, b, p), [(-c) % p for c in r], p)
    assert rebuilt == a


def test_cubic_mod_two_is_irreducible():
    # X^3 - X - 1 = X^3 + X + 1 over GF(2): no root, degree 3
    f = gfpoly.reduce_mod([-1, -1, 0, 1], 2)
    assert f == [1, 1, 0, 1]
    assert all(sum(c * x**i for i, c in enumerate(f)) % 2 for x in (0, 1))
    assert gfpoly.distinct_degree_degrees(f, 2) == [3]


def test_squarefree_detection():
    # (X + 1)^2 over GF(3)
    assert not gfpoly.is_squarefree([1, 2, 1], 3)
    assert gfpoly.is_squarefree([1, 1, 0, 1], 2)
