import pytest
from hypothesis import given, settings, strategies as st

from conftest import quiver
from qtetra.coeff import ScalarFraction, qfact_bar
from qtetra.feigin import decompositions, kappa, psi_bar, psi_classical, psi_generator
from qtetra.qtorus import CommutationForm, TorusElt
from qtetra.shuffle import ShuffleElt, shuffle_mul

WORD = (1, 2, 1, 2)
words = st.lists(st.sampled_from([1, 2]), max_size=4).map(tuple)


def test_decompositions():
    assert decompositions((1, 2, 1), (1, 2)) == [(1, 1, 0)]
    assert sorted(decompositions((1, 2, 1), (1, 1))) == [(0, 0, 2), (1, 0, 1), (2, 0, 0)]
    assert decompositions((1, 2), (2, 1)) == []
    assert decompositions((1,), ()) == [(0,)]


def test_divided_square_image(a2):
    c = a2.cartan_data
    form = CommutationForm.from_word(c, (1, 1))
    inv = ScalarFraction.from_int(1) / ScalarFraction(qfact_bar(2))
    expected = TorusElt(form, {(2, 0): inv, (1, 1): 1, (0, 2): inv})
    assert psi_bar(c, (1, 1), ShuffleElt.word(c, (1, 1))) == expected


@pytest.mark.parametrize("name", ["a2", "b2"])
@settings(max_examples=40, deadline=None)
@given(a=words, b=words)
def test_homomorphism(name, a, b):
    c = quiver(name).cartan_data
    x, y = ShuffleElt.word(c, a), ShuffleElt.word(c, b)
    assert psi_bar(c, WORD, shuffle_mul(x, y)) == psi_bar(c, WORD, x) * psi_bar(c, WORD, y)


@pytest.mark.parametrize("name", ["a2", "b2"])
def test_agrees_with_classical_map(name):
    c = quiver(name).cartan_data
    for factors in ([(1, 1)], [(2, 1), (1, 2)], [(1, 1), (2, 1), (1, 1)], [(2, 2), (1, 1)]):
        assert psi_bar(c, WORD, kappa(c, factors)) == psi_classical(c, WORD, factors)


def test_generator_image(b2):
    c = b2.cartan_data
    g = psi_generator(c, WORD, 2)
    form = g.form
    assert g == TorusElt.gen(form, 1) + TorusElt.gen(form, 3)


def test_kappa_sums(a2):
    c = a2.cartan_data
    two = ScalarFraction.from_int(2)
    x = kappa(c, [(two, [(1, 1)]), (ScalarFraction.from_int(1), [(2, 1)])])
    assert x == ShuffleElt.word(c, (1,)).scale(two) + ShuffleElt.word(c, (2,))
