import pytest

from k3lattice.constructors import glued_piece, parse_expression
from k3lattice.lattice import LatticeError, determinant, signature


def test_simple_terms():
    assert parse_expression("U").rank == 2
    assert parse_expression("U(3)").gram == ((0, 3), (3, 0))
    assert determinant(parse_expression("E8(3)")) == 3**8


def test_sum_with_multiplicity():
    lat = parse_expression("U(3)+6A2")
    assert lat.rank == 14
    assert signature(lat) == (1, 13, 0)


def test_glued_aliases():
    assert parse_expression("L").gram == glued_piece("L6").lattice.gram
    assert parse_expression("L'").rank == 18
    assert parse_expression("L9").rank == 18
    assert parse_expression("U ⊕ E_8").rank == 10


@pytest.mark.parametrize("bad", ["", "U +", "X7", "0A2", "L5"])
def test_bad_expressions(bad):
    with pytest.raises(LatticeError):
        parse_expression(bad)
