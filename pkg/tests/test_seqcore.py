import pytest
from hypothesis import given, settings, strategies as st

from plastic.errors import InsufficientPrecisionError
from plastic.seqcore import (
    SequenceSpec,
    binet_check,
    cassini_residual,
    fib_lucas_residual,
    fib_lucas_sum_residual,
    fibonacci,
    fibonacci_naive,
    gen_sequence,
    growth_margin,
    lucas,
    lucas_naive,
    lucas_power_margin,
    sequence_terms,
)

PADOVAN_HAND = [1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12]


def _unroll(k, n, initial=None):
    # independent oracle: list-based unrolling of a_n = a_{n-2} + ... + a_{n-k}
    a = list(initial or [1] * k)
    while len(a) <= n:
        m = len(a)
        a.append(sum(a[m - l] for l in range(2, k + 1)))
    return a[: n + 1]


@pytest.mark.parametrize("n, expected", [(0, 0), (1, 1), (4, 3), (10, 55)])
def test_fibonacci_values(n, expected):
    assert fibonacci(n) == expected


@pytest.mark.parametrize("n, expected", [(0, 2), (1, 1), (5, 11)])
def test_lucas_values(n, expected):
    assert lucas(n) == expected


@pytest.mark.parametrize("func", [fibonacci, lucas, fibonacci_naive, lucas_naive])
def test_negative_index_rejected(func):
    with pytest.raises(ValueError):
        func(-1)


def test_fast_matches_naive_up_to_2000():
    f, l = fibonacci_naive, lucas_naive
    assert all(fibonacci(n) == f(n) for n in range(2001))
    assert all(lucas(n) == l(n) for n in range(2001))


@pytest.mark.parametrize("k, n, expected", [(3, 2, 1), (3, 10, 12), (4, 7, 7)])
def test_gen_sequence_examples(k, n, expected):
    assert gen_sequence(SequenceSpec(k), n) == expected


def test_padovan_prefix():
    assert sequence_terms(SequenceSpec(3), 10) == PADOVAN_HAND


def test_initial_values_returned_below_k():
    spec = SequenceSpec(5, (3, 1, 4, 1, 5))
    assert [gen_sequence(spec, n) for n in range(5)] == [3, 1, 4, 1, 5]


def test_sequence_spec_validation():
    with pytest.raises(ValueError):
        SequenceSpec(2)
    with pytest.raises(ValueError):
        SequenceSpec(4, (1, 1, 1))
    assert SequenceSpec(4).initial == (1, 1, 1, 1)


def test_recurrence_resum_all_orders():
    for k in range(3, 33):
        a = sequence_terms(SequenceSpec(k), 2000)
        assert all(a[n] == sum(a[n - l] for l in range(2, k + 1)) for n in range(k, 2001))


@given(
    k=st.integers(3, 12),
    n=st.integers(0, 200),
    seed=st.lists(st.integers(-10**6, 10**6), min_size=12, max_size=12),
)
def test_window_matches_unrolled_oracle(k, n, seed):
    spec = SequenceSpec(k, tuple(seed[:k]))
    assert sequence_terms(spec, n) == _unroll(k, n, seed[:k])


@pytest.mark.parametrize("n", [1, 5, 100])
def test_cassini_examples(n):
    assert cassini_residual(n) == 0


@pytest.mark.parametrize("n", [0, 4, 5])
def test_fib_lucas_examples(n):
    assert fib_lucas_residual(n) == 0


def test_identities_sweep_to_1000():
    assert all(cassini_residual(n) == 0 for n in range(1, 1001))
    assert all(fib_lucas_residual(n) == 0 for n in range(0, 1001))
    assert all(fib_lucas_sum_residual(n) == 0 for n in range(0, 1001))


def test_cassini_rejects_zero():
    with pytest.raises(ValueError):
        cassini_residual(0)


def test_growth_margin_examples():
    assert growth_margin(3) == 12
    assert growth_margin(4) == 39
    f = fibonacci_naive
    assert growth_margin(10) == f(22) - (f(10) + 1) ** 2 == 14575


def test_growth_margin_positive_to_500():
    assert all(growth_margin(k) > 0 for k in range(3, 501))


def test_lucas_power_margin_examples():
    assert lucas_power_margin(4) == 11 * 5**3 - 4**5 == 351
    assert lucas_power_margin(5) == 18 * 8**4 - 6**6 == 27072
    assert lucas_power_margin(3) == 7 * 3**2 - 3**4 == -18


def test_lucas_power_margin_positive_from_4():
    assert all(lucas_power_margin(k) > 0 for k in range(4, 201))


@pytest.mark.parametrize("n, digits", [(2, None), (10, None), (500, 200), (0, 20)])
def test_binet(n, digits):
    assert binet_check(n, digits) is True


def test_binet_reports_precision_shortfall():
    with pytest.raises(InsufficientPrecisionError):
        binet_check(500, 60)
    with pytest.raises(ValueError):
        binet_check(5, 10)


@settings(max_examples=30)
@given(st.integers(0, 3000))
def test_binet_default_precision_is_enough(n):
    assert binet_check(n)
