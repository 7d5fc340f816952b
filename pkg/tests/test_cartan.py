import pytest
from hypothesis import given, strategies as st

from qtetra.cartan import CartanData, ValuedQuiver, euler_form, positive_roots, simple_reflection, star, sym_form

vecs = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


def test_a2_forms(a2):
    c = a2.cartan_data
    assert sym_form(c, (1, 0), (0, 1)) == -1
    assert euler_form(a2, (1, 0), (0, 1)) == -1
    assert euler_form(a2, (0, 1), (1, 0)) == 0
    assert star(a2, (0, 1)) == (-1, 1)
    assert simple_reflection(c, 1, (0, 1)) == (1, 1)


def test_valued_cartan_matrices(b2, g2, kronecker):
    assert b2.cartan_data.cartan == ((2, -2), (-1, 2))
    assert g2.cartan_data.cartan == ((2, -3), (-1, 2))
    assert kronecker.cartan_data.cartan == ((2, -2), (-2, 2))


def test_positive_roots(a2, b2, g2, kronecker):
    assert positive_roots(a2.cartan_data) == [(0, 1), (1, 0), (1, 1)]
    assert len(positive_roots(b2.cartan_data)) == 4
    assert len(positive_roots(g2.cartan_data)) == 6
    with pytest.raises(ValueError):
        positive_roots(kronecker.cartan_data, limit=20)


@pytest.mark.parametrize("name", ["a2", "b2", "g2", "kronecker"])
@given(a=vecs, b=vecs)
def test_euler_symmetrizes_to_cartan(name, a, b):
    from conftest import quiver
    q = quiver(name)
    assert euler_form(q, a, b) + euler_form(q, b, a) == sym_form(q.cartan_data, a, b)


@pytest.mark.parametrize("name", ["a2", "b2", "g2"])
@given(a=vecs)
def test_reflection_is_an_isometric_involution(name, a):
    from conftest import quiver
    c = quiver(name).cartan_data
    for i in c.labels:
        s = simple_reflection(c, i, a)
        assert simple_reflection(c, i, s) == a
        assert sym_form(c, s, s) == sym_form(c, a, a)


def test_invalid_data_rejected():
    with pytest.raises(ValueError):
        CartanData((1, 2), ((2, -1), (-2, 2)), (1, 1))
    with pytest.raises(ValueError):
        ValuedQuiver((1, 2), (1, 1), ((1, 2, 1), (2, 1, 1)))
    with pytest.raises(ValueError):
        ValuedQuiver((1, 2, 3), (1, 1, 1), ((1, 2, 1), (2, 3, 1), (3, 1, 1)))


def test_quiver_json_round_trip(b2):
    assert ValuedQuiver.from_json(b2.to_json()) == b2
    assert b2.opposite().opposite() == b2
