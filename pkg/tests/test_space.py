import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from preriesz import cones, exact
from preriesz.errors import InputError, NotFullDimensionalError, NotPointedError
from preriesz.space import (OrderedSpace, anti_lattice_verdict, determines_positivity,
                            disjoint_vectors, is_order_unit, leq, no_disjoint_pair_verdict,
                            order_unit_norm, space_from_doc, space_to_doc)


def test_wedge_rejected():
    with pytest.raises(NotPointedError):
        OrderedSpace.from_inequalities(2, [(1, 0)])


def test_leq(quadrant, four_ray):
    assert leq(quadrant, (0, 0), (1, 2))
    assert not leq(quadrant, (1, 0), (0, 1))
    assert leq(four_ray, (0, 0, 0), (1, 1, 1))
    assert [exact.dot(f, (1, 1, 1)) for f in four_ray.ext_dual] == [2, 2, 0, 0]


def test_order_units(quadrant, four_ray):
    assert is_order_unit(quadrant, (1, 1))
    assert not is_order_unit(quadrant, (1, 0))
    assert is_order_unit(four_ray, (0, 0, 1))
    ray = OrderedSpace.from_generators(2, [(1, 0)])
    with pytest.raises(NotFullDimensionalError):
        is_order_unit(ray, (1, 0))


def test_order_unit_norm(quadrant, pentagon):
    assert order_unit_norm(quadrant, (1, 1), (3, -2)) == 3
    assert order_unit_norm(quadrant, (2, 1), (3, -2)) == 2
    assert order_unit_norm(pentagon, (0, 0, 1), (0, 0, 0)) == 0
    with pytest.raises(InputError):
        order_unit_norm(quadrant, (1, 0), (1, 1))


def test_norm_is_infimum(pentagon):
    v, x = exact.vec((0, 0, 1)), exact.vec((1, -1, 0))
    n = order_unit_norm(pentagon, v, x)
    assert leq(pentagon, exact.scale(-n, v), x) and leq(pentagon, x, exact.scale(n, v))
    m = n - Fraction(1, 1000)
    assert not (leq(pentagon, exact.scale(-m, v), x) and leq(pentagon, x, exact.scale(m, v)))


vec3 = st.tuples(*[st.integers(-4, 4)] * 3)


@settings(max_examples=50, deadline=None)
@given(vec3, vec3, st.integers(-3, 3))
def test_norm_axioms(x, y, c):
    S = OrderedSpace.from_generators(3, [(2, 0, 1), (1, 2, 1), (-1, 2, 1), (-2, 0, 1), (0, -2, 1)])
    v = (0, 0, 1)
    nx, ny = order_unit_norm(S, v, x), order_unit_norm(S, v, y)
    assert order_unit_norm(S, v, exact.add(x, y)) <= nx + ny
    assert order_unit_norm(S, v, exact.scale(c, x)) == abs(c) * nx
    assert (nx == 0) == exact.is_zero(x)


def test_determines_positivity(quadrant, four_ray):
    assert determines_positivity(quadrant, [(1, 0), (0, 1)])
    assert not determines_positivity(quadrant, [(1, 0)])
    assert determines_positivity(four_ray, four_ray.ext_dual)
    with pytest.raises(InputError):
        determines_positivity(quadrant, [(-1, 0)])


def test_disjoint_vectors(quadrant, four_ray):
    assert disjoint_vectors(quadrant, (1, 0), (0, 1))
    assert not disjoint_vectors(quadrant, (1, 1), (0, 1))
    assert disjoint_vectors(four_ray, (1, 1, 1), (-1, -1, 1))


def _disjoint_positive(S, u, v):
    return (cones.membership(S.cone, u) and cones.membership(S.cone, v)
            and not exact.is_zero(u) and not exact.is_zero(v) and disjoint_vectors(S, u, v))


def test_anti_lattice(quadrant, four_ray, pentagon):
    v = anti_lattice_verdict(quadrant)
    assert not v.is_anti_lattice and v.witness == ((1, 0), (0, 1))
    v = anti_lattice_verdict(four_ray)
    assert not v.is_anti_lattice and _disjoint_positive(four_ray, *v.witness)
    assert set(v.witness) == {exact.vec((1, 1, 1)), exact.vec((-1, -1, 1))}
    assert anti_lattice_verdict(pentagon).is_anti_lattice
    assert anti_lattice_verdict(pentagon.dual_space()).is_anti_lattice
    assert v.to_doc()["witness"] == [["1", "1", "1"], ["-1", "-1", "1"]]


def test_no_disjoint(quadrant, four_ray, pentagon):
    v = no_disjoint_pair_verdict(quadrant)
    assert not v.holds
    z1, z2 = v.witness
    assert not exact.is_zero(z1) and not exact.is_zero(z2) and disjoint_vectors(quadrant, z1, z2)
    assert not no_disjoint_pair_verdict(four_ray).holds
    assert no_disjoint_pair_verdict(pentagon).holds
    assert no_disjoint_pair_verdict(OrderedSpace.from_generators(1, [(1,)])).holds


def test_no_disjoint_brute_force(pentagon):
    # three of the five facet normals always have rank three
    for A in itertools.combinations(pentagon.ext_dual, 3):
        assert exact.rank(A) == 3


def test_no_disjoint_implies_anti_lattice(quadrant, four_ray, pentagon):
    for S in (quadrant, four_ray, pentagon, pentagon.dual_space()):
        if no_disjoint_pair_verdict(S).holds:
            assert anti_lattice_verdict(S).is_anti_lattice


def test_space_doc_round_trip(pentagon):
    assert space_from_doc(space_to_doc(pentagon)) == pentagon
    with pytest.raises(InputError):
        space_from_doc({"dim": 2})
