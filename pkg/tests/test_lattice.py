import random

import pytest

from preriesz import exact
from preriesz.lattice import (band_closure, disjoint_complement, disjoint_ops,
                              enumerate_bands, is_band, modulus, modulus_via_bands,
                              op_anti_lattice_verdict, op_no_disjoint_verdict, support,
                              zero_subspace)
from preriesz.errors import CapExceeded, InputError
from preriesz.operators import (build_ctx, is_positive, op_add, op_sub, phi, unvec,
                                vec_op, zero_op)
from preriesz.space import OrderedSpace

from conftest import E, modulus_samples, op

I2 = op([[1, 0], [0, 1]])


def same_subspace(ctx, basis, ops):
    return exact.same_span(list(basis), [vec_op(T) for T in ops])


def test_disjoint_ops_examples(qq, pp):
    assert disjoint_ops(qq, E(1, 1), E(2, 2))
    assert not disjoint_ops(qq, E(1, 1), I2)
    rng = random.Random(3)
    for _ in range(20):
        A = unvec([rng.randint(-2, 2) for _ in range(9)], 3, 3)
        B = unvec([rng.randint(-2, 2) for _ in range(9)], 3, 3)
        if not exact.is_zero(vec_op(A)) and not exact.is_zero(vec_op(B)):
            assert not disjoint_ops(pp, A, B)


def test_disjoint_ops_symmetric_and_self(qf):
    rng = random.Random(5)
    for _ in range(50):
        A = unvec([rng.randint(-1, 1) for _ in range(6)], 3, 2)
        B = unvec([rng.randint(-1, 1) for _ in range(6)], 3, 2)
        assert disjoint_ops(qf, A, B) == disjoint_ops(qf, B, A)
        assert disjoint_ops(qf, A, A) == exact.is_zero(vec_op(A))


def test_complement_examples(qq, pp):
    d = disjoint_complement(qq, [E(1, 1)])
    assert len(d.basis) == 3
    assert all(T[0][0] == 0 for T in d.operators(qq))
    assert len(disjoint_complement(qq, []).basis) == 4
    assert disjoint_complement(qq, [qq.z0]).basis == ()
    assert disjoint_complement(pp, [pp.z0]).basis == ()


def test_band_examples(qq):
    assert is_band(qq, [E(1, 1)])
    assert same_subspace(qq, band_closure(qq, [E(1, 1)]).basis, [E(1, 1)])
    diag = op_add(E(1, 1), E(2, 2))
    assert not is_band(qq, [diag])
    assert same_subspace(qq, band_closure(qq, [diag]).basis, [E(1, 1), E(2, 2)])
    assert is_band(qq, [E(1, 1), E(1, 2), E(2, 1), E(2, 2)])
    assert is_band(qq, [])


def test_galois_connection(qf):
    rng = random.Random(11)
    for _ in range(30):
        B = [unvec([rng.randint(-1, 1) for _ in range(6)], 3, 2) for _ in range(rng.randint(0, 2))]
        d = disjoint_complement(qf, B)
        dd = band_closure(qf, B)
        ddd = disjoint_complement(qf, dd.operators(qf))
        # B is contained in B^dd, and B^d = B^ddd
        assert all(exact.in_span(list(dd.basis), vec_op(T)) is not None for T in B)
        assert exact.same_span(list(d.basis), list(ddd.basis))
        assert is_band(qf, dd.operators(qf))


def test_quadrant_bands(qq):
    en = enumerate_bands(qq)
    assert len(en.bands) == 16 and not en.truncated
    assert {b.support for b in en.bands} == {frozenset(s) for s in _subsets(range(4))}


def _subsets(xs):
    xs = list(xs)
    for m in range(1 << len(xs)):
        yield [x for i, x in enumerate(xs) if m >> i & 1]


def test_trivial_bands():
    ray = OrderedSpace.from_generators(1, [(1,)])
    ctx = build_ctx(ray, ray)
    assert len(enumerate_bands(ctx).bands) == 2
    assert op_no_disjoint_verdict(ctx, "direct").value
    assert op_no_disjoint_verdict(ctx, "compositional").value


def test_pentagon_bands(pp):
    en = enumerate_bands(pp)
    assert [len(b.support) for b in en.bands] == [0, 25]


def test_band_enumeration_truncates(pp):
    en = enumerate_bands(pp, limit=50)
    assert en.truncated
    assert len(en.bands) >= 2


def test_modulus_examples(qq, pp):
    T = op([[1, -1], [0, 0]])
    m = modulus(qq, T)
    assert m.M == op([[1, 1], [0, 0]])
    assert m.T1 == E(1, 1) and m.T2 == E(1, 2)
    P = op([[1, 2], [0, 3]])
    m = modulus(qq, P)
    assert m.M == P and m.T1 == P and m.T2 == zero_op(qq)
    rng = random.Random(0)
    none = sum(modulus(pp, unvec([rng.randint(-3, 3) for _ in range(9)], 3, 3)) is None
               for _ in range(20))
    assert none >= 18


def test_modulus_via_bands_examples(qq):
    bands = enumerate_bands(qq).bands
    dec = modulus_via_bands(qq, op([[1, -1], [0, 0]]), bands)
    assert dec.T1 == E(1, 1) and dec.T2 == E(1, 2)
    assert dec.band.support == frozenset({0})
    dec = modulus_via_bands(qq, I2, bands)
    assert dec.T2 == zero_op(qq)


def _check_modulus(ctx, T, m):
    assert is_positive(ctx, op_sub(m.M, T)) and is_positive(ctx, op_add(m.M, T))
    assert is_positive(ctx, m.T1) and is_positive(ctx, m.T2)
    assert disjoint_ops(ctx, m.T1, m.T2) and op_sub(m.T1, m.T2) == T


@pytest.mark.parametrize("name", ["qq", "qf"])
def test_modulus_equivalence(name, request):
    ctx = request.getfixturevalue(name)
    bands = enumerate_bands(ctx).bands
    for T in modulus_samples(ctx, 100, seed=1):
        m = modulus(ctx, T)
        dec = modulus_via_bands(ctx, T, bands)
        assert (m is None) == (dec is None)
        if m is not None:
            assert dec.M == m.M
            _check_modulus(ctx, T, m)


def test_modulus_is_least_upper_bound(qf):
    rng = random.Random(2)
    for T in modulus_samples(qf, 30, seed=4):
        m = modulus(qf, T)
        if m is None:
            continue
        for _ in range(40):
            U = unvec([rng.randint(-4, 4) for _ in range(6)], 3, 2)
            U = op_add(U, m.M) if rng.random() < 0.5 else U
            if all(u >= abs(t) for u, t in zip(phi(qf, U), phi(qf, T))):
                assert is_positive(qf, op_sub(U, m.M))


def test_op_anti_lattice(qq, dpp, quadrant, pentagon):
    for mode in ("compositional", "direct"):
        v = op_anti_lattice_verdict(qq, mode)
        assert not v.value
        A, B = v.witness
        assert is_positive(qq, A) and is_positive(qq, B) and disjoint_ops(qq, A, B)
        assert op_anti_lattice_verdict(dpp, mode).value
    qp = build_ctx(quadrant, pentagon)
    assert not op_anti_lattice_verdict(qp, "compositional").value
    assert not op_anti_lattice_verdict(qp, "direct").value
    with pytest.raises(InputError):
        op_anti_lattice_verdict(qq, "other")


def test_op_no_disjoint(qq, dpp):
    for mode in ("compositional", "direct"):
        v = op_no_disjoint_verdict(qq, mode)
        assert not v.value
        A, B = v.witness
        assert not exact.is_zero(vec_op(A)) and not exact.is_zero(vec_op(B))
        assert disjoint_ops(qq, A, B)
        assert op_no_disjoint_verdict(dpp, mode).value


def test_no_disjoint_cap(pp):
    with pytest.raises(CapExceeded):
        op_no_disjoint_verdict(pp, "direct", max_subsets=10)


def test_support_and_zero_subspace(qq):
    assert support(qq, E(2, 1)) == {1}
    z = zero_subspace(qq, [0, 3])
    assert z.support == frozenset({1, 2}) and len(z.basis) == 2
