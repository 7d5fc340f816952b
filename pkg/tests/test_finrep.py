import pytest

from qtetra.cartan import euler_form
from qtetra.finrep import (
    NoRigidError, QuiverRep, aut_count, aut_count_by_units, classes_up_to, context, flag_count,
    hall_number, hom_dim, injective_dims, is_rigid, parse_rep, projective_dims, rep_classes,
    repclass_of, rigid_rep, subrep_count, typed_flag_count,
)
from qtetra.interp import interpolate_count


def test_semisimple_counts(a2, backend):
    ctx = context(a2, 2)
    s1 = QuiverRep.simple(ctx, 0)
    v = s1.direct_sum(s1)
    assert subrep_count(v, (1, 0)) == 3
    assert flag_count(v, (1, 1)) == 3
    assert aut_count(v) == 6
    assert aut_count_by_units(v) == 6


def test_hom_between_injective_and_simple(a2, backend):
    ctx = context(a2, 3)
    assert injective_dims(a2, 1) == (1, 1)
    assert projective_dims(a2, 0) == (1, 1)
    assert hom_dim(parse_rep(ctx, "I2"), parse_rep(ctx, "S1")) == 1
    assert hom_dim(parse_rep(ctx, "S1"), parse_rep(ctx, "I2")) == 0


def test_class_enumeration(a2, kronecker, backend):
    ctx = context(a2, 2)
    assert sorted(c.name for c in rep_classes(ctx, (1, 1))) == ["M(1,1)", "S2+S1"]
    # Kronecker (1,1): the split one plus one regular class per point of P^1(F_q)
    for q in (2, 3):
        kc = context(kronecker, q)
        classes = rep_classes(kc, (1, 1))
        assert len(classes) == q + 2
        assert not any(is_rigid(c.rep) for c in classes)
    # total orbit sizes fill the representation space
    kc = context(kronecker, 3)
    assert sum(c.orbit_size for c in rep_classes(kc, (1, 1))) == 3 ** 2


def test_orbit_stabilizer(b2, backend):
    ctx = context(b2, 2)
    for cls in classes_up_to(ctx, 4):
        assert cls.aut == aut_count(cls.rep)
        assert repclass_of(cls.rep) == cls


def test_kronecker_not_rigid_with_both_maps(kronecker):
    ctx = context(kronecker, 2)
    v = QuiverRep.from_maps_dict(ctx, (1, 1), {0: [[1]], 1: [[1]]})
    assert not is_rigid(v)
    assert euler_form(kronecker, (1, 1), (1, 1)) == 0


def test_rigid_rep(b2, kronecker):
    v = rigid_rep(b2, (1, 1), 3)
    assert is_rigid(v) and v.dims == (1, 1)
    with pytest.raises(NoRigidError):
        rigid_rep(kronecker, (1, 1), 2)


def test_hall_numbers(a2):
    ctx = context(a2, 2)
    s1, s2, i2 = (parse_rep(ctx, n) for n in ("S1", "S2", "I2"))
    assert hall_number(s1, s2, i2) == 1
    assert hall_number(s2, s1, i2) == 0
    assert hall_number(s2, s1, s1.direct_sum(s2)) == 1


def test_counting_polynomials(a2, b2):
    # lines in F_q^2
    assert interpolate_count(lambda q: subrep_count(parse_rep(context(a2, q), "S1+S1"), (1, 0)), 1).coeffs == (1, 1)
    # F_{q^2}-lines in F_{q^2}^2 at the valued vertex
    poly = interpolate_count(lambda q: subrep_count(parse_rep(context(b2, q), "S2+S2"), (0, 1)), 2)
    assert poly.coeffs == (1, 0, 1)


def test_typed_flags(b2):
    ctx = context(b2, 2)
    v = parse_rep(ctx, "M(1,1)+S2")
    for word in [(2, 1, 2), (1, 2, 2), (2, 2, 1)]:
        assert typed_flag_count(v, word, (1, 1, 1)) == flag_count(v, word)
    w = parse_rep(ctx, "S2+S2")
    # full flags of F_4^2 versus the single semisimple step
    assert flag_count(w, (2, 2)) == 5
    assert typed_flag_count(w, (2,), (2,)) == 1


@pytest.mark.parametrize("q", [2, 3])
def test_json_round_trips(b2, q):
    ctx = context(b2, q)
    for cls in rep_classes(ctx, (2, 2)):
        v = cls.rep
        assert QuiverRep.from_json(ctx, v.to_json()) == v
        assert QuiverRep.from_json(ctx, v.to_gfield_json()) == v


def test_invalid_reps(a2, b2):
    ctx = context(a2, 2)
    with pytest.raises(ValueError):
        QuiverRep(ctx, (1, 1), [[[2]]])
    with pytest.raises(ValueError):
        QuiverRep(ctx, (1, 1), [])
    with pytest.raises(ValueError):
        context(a2, 6)
    with pytest.raises(ValueError):
        parse_rep(ctx, "Q7")
