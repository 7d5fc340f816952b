from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import quiver
from qtetra.cluster import (
    CharacterContext, Seed, check_quasi_commuting, cluster_character, cluster_character_symbolic,
    exhaustive_mutation, laurent_check, mutate, mutate_matrix, noninitial_variables_via_characters,
    transported_psi_tilde,
)
from qtetra.finrep import context, parse_rep
from qtetra.hall import SymbolicRep
from qtetra.qtorus import TorusElt, compatibility_check
from qtetra.serialize import load_example

SEEDS = {name: Seed.from_json(load_example(name)["seed"]) for name in ("a2", "b2", "g2", "kronecker")}
sequences = st.lists(st.sampled_from([1, 2]), max_size=6)


def test_matrix_mutation():
    assert mutate_matrix([[0, 1], [-1, 0]], 0, 0) == ((0, -1), (1, 0))
    b = [[0, 2], [-1, 0], [1, 0], [0, 1]]
    once = mutate_matrix(b, 1, 1)
    assert mutate_matrix(once, 1, 1) == tuple(map(tuple, b))
    assert once[2] == (1, 0)
    assert once[0] == (0, -2)


def test_exchange_relation():
    s = SEEDS["a2"]
    t = mutate(s, 1)
    x1, x1p = s.variable(1), t.variable(1)
    # the new variable differs from the old and leaves the others alone
    assert x1p != x1
    assert all(t.variable(j) == s.variable(j) for j in s.J if j != 1)
    assert check_quasi_commuting(t)


@pytest.mark.parametrize("name", sorted(SEEDS))
@settings(max_examples=25, deadline=None)
@given(seq=sequences)
def test_mutation_preserves_structure(name, seq):
    s = SEEDS[name]
    cur = s
    for k in seq:
        cur = mutate(cur, k)
    assert compatibility_check(cur.btilde, cur.lam, cur.d)
    assert check_quasi_commuting(cur)
    assert all(x.is_laurent() for x in cur.cluster)
    for k in cur.I:
        back = mutate(mutate(cur, k), k)
        assert back.cluster == cur.cluster and back.btilde == cur.btilde and back.lam == cur.lam


@pytest.mark.parametrize("name", sorted(SEEDS))
def test_laurent_check(name):
    assert laurent_check(SEEDS[name], [1, 2, 1, 2, 1, 2, 1, 2])
    assert laurent_check(SEEDS[name], [])


@pytest.mark.parametrize("name,clusters,variables", [("a2", 5, 5), ("b2", 6, 6), ("g2", 8, 8)])
def test_finite_type_mutation_class(name, clusters, variables):
    seeds, found = exhaustive_mutation(SEEDS[name])
    assert len(seeds) == clusters
    assert len(found) == variables


def test_infinite_type_hits_limit():
    with pytest.raises(RuntimeError):
        exhaustive_mutation(SEEDS["kronecker"], limit=20)
    seeds, _ = exhaustive_mutation(SEEDS["kronecker"], depth=3)
    assert len(seeds) == 7


def test_seed_validation_and_json():
    s = SEEDS["b2"]
    assert Seed.from_json(s.to_json()) == s
    t = mutate(mutate(s, 2), 1)
    assert Seed.from_json(t.to_json()) == t
    with pytest.raises(ValueError):
        mutate(s, 3)
    bad = [list(r) for r in s.lam]
    bad[0][1] += Fraction(1, 2)
    bad[1][0] -= Fraction(1, 2)
    with pytest.raises(ValueError):
        Seed(s.J, s.I, s.btilde, bad, s.d)


@pytest.mark.parametrize("name,matched", [
    ("a2", ["M(0,1)", "M(1,0)", "M(1,1)"]),
    ("b2", ["M(0,1)", "M(1,0)", "M(1,1)", "M(2,1)"]),
])
def test_characters_identify_variables(name, matched):
    ctx = CharacterContext(quiver(name))
    report = noninitial_variables_via_characters(ctx)
    assert sorted(report["variables"].values()) == matched


def test_character_context(b2):
    ctx = CharacterContext(b2)
    assert ctx.word == (1, 2, 1, 2)
    assert compatibility_check(ctx.btilde, ctx.lam, b2.d)
    with pytest.raises(ValueError):
        CharacterContext(b2, word=(1, 2, 2, 1))
    with pytest.raises(ValueError):
        CharacterContext(b2, btilde=[[0, 1], [-1, 0], [-1, 0], [0, -1]])


@pytest.mark.parametrize("name", ["a2", "b2"])
def test_character_transport(name):
    qv = quiver(name)
    ctx = CharacterContext(qv)
    for rep_name in ("S1", "S2", "I2", "S1+S2"):
        rep = SymbolicRep(qv, rep_name)
        sym = cluster_character_symbolic(ctx, rep)
        assert sym == transported_psi_tilde(ctx, rep)
        for q in (2, 3):
            V = parse_rep(context(qv, q), rep_name)
            assert cluster_character(ctx, V) == sym.specialize(q)


def test_simple_character_is_exchange_binomial(a2):
    ctx = CharacterContext(a2)
    x = cluster_character_symbolic(ctx, SymbolicRep(a2, "S1"))
    assert len(x.terms) == 2
    assert isinstance(x, TorusElt) and x.is_bar_invariant()
