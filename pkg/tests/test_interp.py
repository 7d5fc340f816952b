import pytest
from hypothesis import given, strategies as st

from qtetra.interp import CountingPolynomial, InterpolationError, fit, interpolate_count


@given(st.lists(st.integers(-20, 20), max_size=4))
def test_fit_recovers_polynomial(coeffs):
    p = CountingPolynomial(coeffs)
    assert fit([(q, p(q)) for q in (2, 3, 5, 7, 11)]) == p
    assert interpolate_count(p, 3) == p
    assert interpolate_count(p, 3, points=(2, 3, 5, 7), holdout=11) == p


def test_grassmannian_counts():
    lines = interpolate_count(lambda q: q + 1, 1)
    assert lines == CountingPolynomial([1, 1])
    assert str(lines) == "1 + q"
    gr = interpolate_count(lambda q: 1 + q + q * q + q ** 3, 3)
    assert gr.coeffs == (1, 1, 1, 1)
    assert gr.to_laurent().coefficient(12) == 1


def test_holdout_detects_wrong_bound():
    with pytest.raises(InterpolationError):
        interpolate_count(lambda q: q ** 4, 1, points=(2, 3), holdout=5)
    with pytest.raises(InterpolationError):
        fit([(2, 1), (3, 2), (4, 4)])
