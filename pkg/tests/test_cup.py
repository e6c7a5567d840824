import pytest

from src.cup import canonical_level, cup_product, get_ring, ring_table, yoneda_product
from src.errors import DegreeOutsideWindow


def test_canonical_level():
    assert canonical_level(3) == 0
    assert canonical_level(-2) == 2


def test_sweedler_ring_dims(h4):
    ring = get_ring(h4)
    assert [ring.dim(n) for n in range(-4, 5)] == [1, 0, 1, 0, 1, 0, 1, 0, 1]
    assert ring.basis(1) == []
    assert get_ring(h4) is ring


def test_identity_acts_trivially(h4):
    ring = get_ring(h4)
    one = ring.identity()
    a = ring.basis(2)[0]
    assert ring.coordinates(a) == [ring.field.one]
    assert ring.coordinates(ring.cup(one, a)) == ring.coordinates(a)
    assert ring.coordinates(ring.cup(a, one)) == ring.coordinates(a)


def test_periodicity_class_is_invertible(h4):
    ring = get_ring(h4)
    z, z_inv = ring.basis(2)[0], ring.basis(-2)[0]
    assert not ring.is_zero(cup_product(ring, z, z_inv))
    assert not ring.is_zero(cup_product(ring, z, z))
    assert cup_product(ring, z, z).degree == 4


def test_raise_to_cannot_lower(h4):
    ring = get_ring(h4)
    b = ring.basis(-2)[0]
    assert b.level == 2
    with pytest.raises(DegreeOutsideWindow):
        ring.raise_to(b, 0)


def test_shifted_class_keeps_coordinates(h4):
    ring = get_ring(h4)
    z = ring.basis(2)[0]
    assert ring.coordinates(ring.raise_to(z, 2)) == ring.coordinates(z)


def test_sweedler_ring_table(h4):
    table = ring_table(h4, -2, 2)
    assert table.ok
    assert table.dims == {-2: 1, -1: 0, 0: 1, 1: 0, 2: 1}
    assert table.associativity_checked > 0
    entry = table.product(2, 0, -2, 0)
    assert entry is not None and entry != ["0"]
    assert table.product(1, 0, 1, 0) is None
    assert "identity: ok" in table.to_text()


def test_modular_group_algebra_ring(f2z2):
    ring = get_ring(f2z2)
    x = ring.basis(1)[0]
    assert [ring.dim(n) for n in range(-2, 3)] == [1, 1, 1, 1, 1]
    assert not ring.is_zero(ring.cup(x, x))


def test_yoneda_products(h4, f2z2):
    _, nonzero = yoneda_product(h4, 2, 2)
    assert nonzero
    _, nonzero = yoneda_product(f2z2, 1, 1)
    assert nonzero
    with pytest.raises(DegreeOutsideWindow):
        yoneda_product(h4, -1, 2)
