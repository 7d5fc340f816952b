from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qtetra.coeff import ScalarFraction
from qtetra.qtorus import (
    CommutationForm, TorusElt, bar_monomial, compatibility_check, right_divide,
    solve_compatible_lambda, torus_mul,
)
from qtetra.serialize import load_example

LAM = [[0, 1, -1], [-1, 0, 2], [1, -2, 0]]
FORM = CommutationForm.from_lambda(LAM)
exps = st.tuples(*[st.integers(-2, 2)] * 3)
coefs = st.integers(-3, 3).map(ScalarFraction.from_int)
elts = st.dictionaries(exps, coefs, max_size=3).map(lambda t: TorusElt(FORM, t))


def test_word_polynomial_ring(a2):
    form = CommutationForm.from_word(a2.cartan_data, (1, 2))
    t1, t2 = TorusElt.gen(form, 0), TorusElt.gen(form, 1)
    assert t2 * t1 == (t1 * t2).vshift(-2)
    x = bar_monomial(form, (1, 1))
    # X^(1,1) = v^(-1/2) t_1 t_2
    assert x == (t1 * t2).vshift(-1)
    assert x.ordered_coefficients() == {(1, 1): ScalarFraction.vpow(-1)}
    with pytest.raises(ValueError):
        bar_monomial(form, (-1, 0))


def test_generators_quasi_commute():
    for i in range(3):
        for j in range(3):
            xi, xj = TorusElt.gen(FORM, i), TorusElt.gen(FORM, j)
            assert xi * xj == (xj * xi).vshift(2 * FORM.c[i][j])


@given(elts, elts, elts)
def test_associative_and_distributive(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(elts, elts)
def test_bar_antiautomorphism(x, y):
    assert (x * y).bar() == y.bar() * x.bar()


@given(exps)
def test_monomials_bar_invariant_and_invertible(a):
    x = bar_monomial(FORM, a)
    assert x.is_bar_invariant()
    assert x * x.monomial_inverse() == TorusElt.one(FORM)


@given(elts, st.dictionaries(exps, coefs.filter(lambda c: not c.is_zero()), min_size=1, max_size=2).map(lambda t: TorusElt(FORM, t)))
def test_right_divide(p, d):
    assert right_divide(p * d, d) == p


def test_right_divide_rejects_non_multiple():
    x = TorusElt.gen(FORM, 0) + TorusElt.one(FORM)
    with pytest.raises(ArithmeticError):
        right_divide(TorusElt.gen(FORM, 1), x)


def test_torus_mul_checks_form():
    other = CommutationForm.from_lambda([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    with pytest.raises(ValueError):
        torus_mul(FORM, TorusElt.gen(other, 0), TorusElt.gen(FORM, 0))


def test_compatibility():
    seed = load_example("a2")["seed"]
    bt, d = seed["Btilde"], seed["d"]
    lam = [[Fraction(x) for x in row] for row in seed["Lambda"]]
    assert compatibility_check(bt, lam, d)
    assert not compatibility_check(bt, [[0] * 4 for _ in range(4)], d)
    bumped = [row[:] for row in lam]
    bumped[0][1] += 1
    bumped[1][0] -= 1
    assert not compatibility_check(bt, bumped, d)
    sol, dim = solve_compatible_lambda(bt, d)
    assert sol is not None and compatibility_check(bt, sol, d)
    assert dim >= 0


def test_form_validation():
    with pytest.raises(ValueError):
        CommutationForm([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        TorusElt(FORM, {(1, 0): 1})


def test_json_round_trip():
    x = TorusElt(FORM, {(1, -1, 0): ScalarFraction.vpow(3), (0, 0, 2): ScalarFraction.from_int(-2)})
    assert TorusElt.from_json(FORM, x.to_json()) == x
