import pytest
from hypothesis import given, settings, strategies as st

from conftest import quiver
from qtetra.coeff import LaurentScalar, SqrtQScalar, qfact_bar
from qtetra.feigin import psi_bar
from qtetra.finrep import classes_up_to, context, parse_rep
from qtetra.hall import (
    HallElt, SymbolicRep, delta_mul, dual_comul, dual_mul, hall_comul, hall_mul, omega,
    omega_symbolic, omega_tensor, psi_tilde, psi_tilde_symbolic,
)
from qtetra.interp import InterpolationError
from qtetra.shuffle import ShuffleElt, comult, shuffle_mul

A2_Q3 = classes_up_to(context(quiver("a2"), 3), 2)
B2_Q2 = classes_up_to(context(quiver("b2"), 2), 4)


def _fq(cls):
    return sum(d * x for d, x in zip(cls.ctx.quiver.d, cls.dims))


def test_iso_products(a2):
    ctx = context(a2, 2)
    s1, s2, split = (HallElt.of(parse_rep(ctx, n)) for n in ("S1", "S2", "S1+S2"))
    assert hall_mul(s2, s1) == split
    half = SqrtQScalar.vpow(2, -2)
    assert hall_mul(s1, s2) == split.scale(half) + HallElt.of(parse_rep(ctx, "I2")).scale(half)
    assert hall_mul(HallElt.unit(ctx), s1) == s1


def test_bases(a2):
    ctx = context(a2, 3)
    x = HallElt.of(parse_rep(ctx, "S1+S1"), "dual")
    assert x.to_basis("delta").to_basis("dual") == x
    with pytest.raises(ValueError):
        hall_mul(x, x.to_basis("delta"))
    with pytest.raises(ValueError):
        HallElt.of(parse_rep(ctx, "S1")).to_basis("dual")
    d = x.to_basis("delta")
    assert not delta_mul(d, d).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(A2_Q3), st.sampled_from(A2_Q3), st.sampled_from(A2_Q3))
def test_associative_a2(x, y, z):
    X, Y, Z = (HallElt.of(c) for c in (x, y, z))
    assert hall_mul(hall_mul(X, Y), Z) == hall_mul(X, hall_mul(Y, Z))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(B2_Q2), st.sampled_from(B2_Q2))
def test_green_b2(x, y):
    if _fq(x) + _fq(y) > 4:
        return
    X, Y = HallElt.of(x), HallElt.of(y)
    assert hall_comul(hall_mul(X, Y)) == hall_comul(X) * hall_comul(Y)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(A2_Q3), st.sampled_from(A2_Q3))
def test_omega_is_a_bialgebra_map(x, y):
    X, Y = HallElt.of(x, "dual"), HallElt.of(y, "dual")
    assert omega(dual_mul(X, Y)) == shuffle_mul(omega(x), omega(y))
    assert comult(omega(x)) == omega_tensor(dual_comul(X))


@pytest.mark.parametrize("name", ["a2", "b2"])
def test_tetrahedron_fixed(name):
    qv = quiver(name)
    word = qv.source_adapted_word() * 2
    for cls in classes_up_to(context(qv, 3), 3):
        assert psi_tilde(word, cls) == psi_bar(qv.cartan_data, word, omega(cls))


def test_symbolic_omega(b2):
    x = omega_symbolic(SymbolicRep(b2, "I2"))
    c = b2.cartan_data
    assert x == ShuffleElt(c, {(1, 1, 2): LaurentScalar({-2: 1, 2: 1})})
    assert x.specialize(3) == omega(parse_rep(context(b2, 3), "I2"))
    word = (1, 2, 1, 2)
    rep = SymbolicRep(b2, "M(1,1)+S2")
    assert psi_tilde_symbolic(word, rep) == psi_bar(c, word, omega_symbolic(rep))


@pytest.mark.parametrize("name,r", [("a2", 1), ("b2", 2), ("g2", 3)])
def test_klr_example(name, r):
    qv = quiver(name)
    c = qv.cartan_data
    coef = qfact_bar(r)
    assert omega_symbolic(SymbolicRep(qv, "I2")) == ShuffleElt(c, {(1,) * r + (2,): coef})
    assert omega_symbolic(SymbolicRep(qv.opposite(), "P2")) == ShuffleElt(c, {(2,) + (1,) * r: coef})


def test_non_rigid_symbolic_rejected(kronecker):
    with pytest.raises((InterpolationError, ValueError)):
        omega_symbolic(SymbolicRep(kronecker, "R(1,1)"))
