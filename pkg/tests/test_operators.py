import random
from fractions import Fraction

import pytest

from preriesz import cones, exact
from preriesz.errors import InputError, NotFullDimensionalError, NotPointedError
from preriesz.operators import (apply, interior_from_cones, interior_verdict,
                                is_positive, operator_from_doc, operator_to_doc, phi,
                                phi_preimage, unvec, vec_op)
from preriesz.space import OrderedSpace, order_unit_norm

from conftest import E, op


def test_vec_is_column_major():
    T = op([[1, 2], [3, 4]])
    assert vec_op(T) == (1, 3, 2, 4)
    assert unvec(vec_op(T), 2, 2) == T
    T = op([[1, 2], [3, 4], [5, 6]])
    assert unvec(vec_op(T), 3, 2) == T


def test_interior_quadrant(quadrant):
    v = interior_verdict(quadrant, quadrant)
    assert v.nonempty and v.witness == op([[1, 1], [1, 1]])


def test_interior_false_and_rejected(quadrant):
    ray = OrderedSpace.from_generators(2, [(1, 1)])
    assert not interior_verdict(quadrant, ray).nonempty
    half = cones.dd_h_to_v(2, [(1, 0)])
    with pytest.raises(NotPointedError):
        OrderedSpace(half)
    # a wedge domain has a degenerate dual cone
    v = interior_from_cones(half, quadrant.cone)
    assert not v.nonempty and "dual" in v.reason
    with pytest.raises(NotPointedError):
        interior_from_cones(quadrant.cone, half)
    with pytest.raises(NotFullDimensionalError):
        interior_from_cones(ray.cone, quadrant.cone)


def test_build_quadrant(qq):
    assert len(qq.sprime) == 4
    assert all(a.scale == 1 for a in qq.sprime)
    assert [(a.i, a.j) for a in qq.sprime] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    T = op([[11, 12], [21, 22]])
    assert phi(qq, T) == (11, 21, 12, 22)
    assert phi(qq, op([[1, 0], [0, 1]])) == (1, 0, 0, 1)
    assert phi(qq, op([[1, -1], [0, 0]])) == (1, 0, -1, 0)


def test_sizes(qf, pp, dpp):
    assert len(qf.sprime) == 8 and qf.op_dim == 6
    assert len(pp.sprime) == 25 and pp.op_dim == 9
    assert len(dpp.sprime) == 25


def test_scales(qf, pp):
    for ctx in (qf, pp):
        for a in ctx.sprime:
            assert a.scale > 0
            assert a.scale * exact.dot(a.yprime, ctx.y0) * exact.dot(ctx.x0_dual, a.x) == 1


def test_z0_normalized(pp):
    assert phi(pp, pp.z0) == (1,) * 25


def test_preimage(qq, pp):
    assert phi_preimage(qq, (1, 3, 2, 4)) == op([[1, 2], [3, 4]])
    assert phi_preimage(pp, (0,) * 25) == op([[0] * 3] * 3)
    for k in range(25):
        w = tuple(int(i == k) for i in range(25))
        assert phi_preimage(pp, w) is None
    with pytest.raises(InputError):
        phi_preimage(qq, (1, 2))


def test_bipositivity_and_injectivity(qq, qf, pp):
    rng = random.Random(7)
    for ctx in (qq, qf, pp):
        for _ in range(200):
            T = unvec([Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                       for _ in range(ctx.op_dim)], ctx.rows, ctx.cols)
            direct = all(cones.membership(ctx.Y.cone, apply(T, x)) for x in ctx.X.ext_primal)
            assert cones.membership(ctx.op_cone, vec_op(T)) == is_positive(ctx, T) == direct
            assert phi_preimage(ctx, phi(ctx, T)) == T


def test_positive_rays_of_op_cone(qf, pp):
    for ctx in (qf, pp):
        for r in ctx.op_cone.rays:
            assert is_positive(ctx, unvec(r, ctx.rows, ctx.cols))


def test_z0_is_order_unit(qq, qf, pp):
    for ctx in (qq, qf, pp):
        S = ctx.as_space()
        z0 = vec_op(ctx.z0)
        for k in range(ctx.op_dim):
            e = tuple(int(i == k) for i in range(ctx.op_dim))
            assert order_unit_norm(S, z0, e) >= 0


def test_shape_errors(qq):
    with pytest.raises(InputError):
        phi(qq, op([[1, 2, 3]]))
    with pytest.raises(InputError):
        operator_from_doc({"rows": 3, "entries": [[1, 0], [0, 1]]})
    assert operator_from_doc(operator_to_doc(E(1, 2)), qq) == E(1, 2)
