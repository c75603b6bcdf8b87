from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from k3lattice.constructors import GLUE_SPECS, a2_glue_spec, e6_glue_spec, glued_piece
from k3lattice.discriminant import discriminant_group
from k3lattice.lattice import LatticeError, determinant, direct_sum, make_standard
from k3lattice.overlattice import (
    GlueError,
    GlueSpec,
    glue,
    is_divisible,
    lift,
    orthogonal_complement,
    primitive_closure,
)


def test_l6_glue():
    res = glue(a2_glue_spec(6))
    assert res.index == 3
    assert determinant(res.lattice) == 81
    assert res.lattice.is_even


def test_l_prime_glue_norm():
    spec = e6_glue_spec()
    assert spec.vectors[0].norm == -4
    res = glue(spec)
    assert (res.index, abs(determinant(res.lattice))) == (3, 3)


@pytest.mark.parametrize("name", sorted(GLUE_SPECS))
def test_glue_determinant_law(name):
    spec = GLUE_SPECS[name]()
    res = glue(spec)
    assert abs(determinant(res.lattice)) * res.index**2 == abs(determinant(spec.base))


@pytest.mark.parametrize("name", sorted(GLUE_SPECS))
def test_glue_length_drop(name):
    spec = GLUE_SPECS[name]()
    before = len(discriminant_group(spec.base).invariant_factors)
    after = len(discriminant_group(glued_piece(name).lattice).invariant_factors)
    assert before - after == 2


def test_glue_rejections():
    a2 = make_standard("A2")
    with pytest.raises(GlueError):
        glue(GlueSpec(a2, (a2.vector([Fraction(1, 2), 0]),)))  # not in the dual
    with pytest.raises(GlueError):
        glue(GlueSpec(a2, (a2.vector([Fraction(1, 3), Fraction(2, 3)]),)))  # norm -2/3
    three = direct_sum([a2] * 3)
    v = three.vector([Fraction(1, 3), Fraction(2, 3)] * 3)  # norm -2, a valid glue
    res = glue(GlueSpec(three, (v,)))
    assert res.index == 3


def test_empty_glue_is_identity():
    a2 = make_standard("A2")
    assert glue(GlueSpec(a2, ())).index == 1


def test_lift_roundtrip():
    res = glue(a2_glue_spec(6))
    v = [Fraction(1, 3), Fraction(2, 3)] * 6
    c = lift(res, v)
    assert all(x.denominator == 1 for x in c)


def test_closure_and_complement_e8():
    e8 = make_standard("E8")
    res = primitive_closure(e8, [[2, 0, 0, 0, 0, 0, 0, 0]])
    assert res.index == 2
    assert res.complement.rank == 7
    assert abs(determinant(res.complement)) == 2
    comp = orthogonal_complement(e8, [])
    assert comp.rank == 8


def test_is_divisible():
    u = make_standard("U")
    assert is_divisible(u, [3, 6], 3) == (True, u.vector([1, 2]))
    assert is_divisible(u, [3, 5], 3) == (False, None)
    with pytest.raises(ValueError):
        is_divisible(u, [1, 1], 1)
    with pytest.raises(LatticeError):
        is_divisible(u, [Fraction(1, 2), 0], 3)


vec = st.lists(st.integers(-4, 4), min_size=4, max_size=4)


@settings(max_examples=80)
@given(st.lists(vec, min_size=1, max_size=3))
def test_closure_idempotent(rows):
    amb = direct_sum([make_standard("U"), make_standard("A2")])
    from k3lattice import _linalg

    if _linalg.rank_rational(rows) != len(rows):
        with pytest.raises(LatticeError):
            primitive_closure(amb, rows)
        return
    first = primitive_closure(amb, rows)
    again = primitive_closure(amb, first.closure_basis)
    assert again.index == 1
    assert again.closure_basis == first.closure_basis
