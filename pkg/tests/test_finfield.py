import random

import pytest
from hypothesis import given, settings, strategies as st

from qtetra import linalg
from qtetra.finfield import FiniteField, embedding, factor_prime_power, is_prime_power
from qtetra.linalg import Fq

ORDERS = [2, 3, 4, 5, 8, 9, 16, 25, 27]


def test_prime_powers():
    assert factor_prime_power(27) == (3, 3)
    assert is_prime_power(16) and not is_prime_power(12) and not is_prime_power(1)
    with pytest.raises(ValueError):
        FiniteField.of_order(6)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    F = FiniteField.of_order(q)
    rng = random.Random(q)
    for _ in range(200):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, q) == a
    assert F.frobenius(F.gen()) == F.pow(F.gen(), F.p)


@pytest.mark.parametrize("q,d", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_extension_embeds_base(q, d):
    F = FiniteField.of_order(q)
    K = F.extension(d)
    assert K.q == q ** d
    emb = embedding(F, K)
    for a in range(q):
        for b in range(q):
            assert K.mul(emb[a], emb[b]) == emb[F.mul(a, b)]
            assert K.add(emb[a], emb[b]) == emb[F.add(a, b)]


def _matrices(q, n, m):
    return st.lists(st.lists(st.integers(0, q - 1), min_size=m, max_size=m), min_size=n, max_size=n)


@settings(max_examples=60, deadline=None)
@given(q=st.sampled_from([2, 3, 4, 9]), data=st.data())
def test_backends_agree(q, data):
    F = FiniteField.of_order(q)
    rows = data.draw(_matrices(q, 4, 5))
    other = data.draw(_matrices(q, 5, 3))
    results = []
    for name in linalg.available_backends():
        k = linalg.kernel_for(F, name)
        results.append((k.rref([r[:] for r in rows], 5), k.rank([r[:] for r in rows], 5), k.matmul(rows, other)))
    assert all(r == results[0] for r in results)


@settings(max_examples=60, deadline=None)
@given(q=st.sampled_from([2, 3, 4, 5]), data=st.data())
def test_nullspace_and_inverse(backend, q, data):
    F = FiniteField.of_order(q)
    la = Fq(F)
    rows = data.draw(_matrices(q, 3, 4))
    null = la.nullspace(rows, 4)
    assert len(null) == 4 - la.rank(rows, 4)
    for v in null:
        assert la.matvec(rows, v) == [0, 0, 0]
    sq = data.draw(_matrices(q, 3, 3))
    if la.is_invertible(sq):
        assert la.matmul(sq, la.inverse(sq)) == la.identity(3)


def test_backend_switch():
    assert linalg.backend_name() in linalg.available_backends()
    with pytest.raises(ValueError):
        linalg.use_backend("nope")
    prev = linalg.use_backend("python")
    assert linalg.backend_name() == "python"
    linalg.use_backend(prev)
