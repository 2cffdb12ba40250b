"""Definition-level brute-force checks.

Nothing here uses the representation-based shortcuts it is meant to audit:
disjointness is decided from upper-bound sets, extremality from a double
description of the operator cone, and order density by vertex enumeration.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import cones, exact
from .cones import PolyhedronRep
from .lattice import disjoint_ops, zero_subspace
from .operators import OperatorSpaceCtx, phi_vec, unvec, vec_op
from .space import OrderedSpace


def upper_bounds(facets: Sequence[Sequence], a: Sequence, b: Sequence,
                 max_rows=None) -> PolyhedronRep:
    """``{u : u >= a and u >= b}`` for the cone cut out by ``facets``."""
    hs = [(f, max(exact.dot(f, a), exact.dot(f, b))) for f in facets]
    return cones.poly_generators(len(a), hs, max_rows)


def _generators_inside(P: PolyhedronRep, Q: PolyhedronRep) -> bool:
    return (all(Q.contains_hom(r, t) for r, t in P.hom_vertices)
            and all(Q.contains_hom(r, 0) for r in P.int_rays)
            and all(Q.contains_line(l) for l in P.int_lineality))


def _inequalities_valid(P: PolyhedronRep, Q: PolyhedronRep) -> bool:
    """Every inequality of ``P`` holds on all of ``Q``."""
    for a, beta in P.inequalities:
        m = Q.min_of(a)
        if m is None or m < beta:
            return False
    return True


def same_polyhedron(P: PolyhedronRep, Q: PolyhedronRep) -> bool:
    """Set equality by cross-membership of generators and cross-validity of inequalities."""
    if P.empty or Q.empty:
        return P.empty and Q.empty
    return (_generators_inside(P, Q) and _generators_inside(Q, P)
            and _inequalities_valid(P, Q) and _inequalities_valid(Q, P))


def _disjoint_by_upper_bounds(facets, v1, v2, max_rows=None) -> bool:
    s = exact.add(v1, v2)
    d = exact.sub(v1, v2)
    return same_polyhedron(upper_bounds(facets, s, exact.neg(s), max_rows),
                           upper_bounds(facets, d, exact.neg(d), max_rows))


def disjoint_by_definition(S: OrderedSpace, v1: Sequence, v2: Sequence, max_rows=None) -> bool:
    """``{v1+v2, -v1-v2}`` and ``{v1-v2, v2-v1}`` have the same upper bounds."""
    S._require_solid("disjointness by definition")
    return _disjoint_by_upper_bounds(S.ext_dual, exact.vec(v1), exact.vec(v2), max_rows)


def disjoint_by_definition_ops(ctx: OperatorSpaceCtx, T1, T2, max_rows=None) -> bool:
    """Same test in the operator space, against the facets of the operator cone."""
    ctx.check_shape(T1)
    ctx.check_shape(T2)
    return _disjoint_by_upper_bounds(ctx.op_cone.facets, vec_op(T1), vec_op(T2), max_rows)


@dataclass
class Report:
    check: str
    context: str
    passed: bool
    samples: int = 0
    seed: Optional[int] = None
    failures: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {"check": self.check, "context": self.context, "passed": self.passed,
                "samples": self.samples, "seed": self.seed, "failures": self.failures,
                **self.detail}


def extremality_audit(ctx: OperatorSpaceCtx, context: str = "", max_rows=None) -> Report:
    """Compare S' with the extremal rays of the dual of the operator cone.

    The operator cone is recomputed from scratch by double description from
    the unnormalized functionals ``T -> <y', T x>``; the extremal rays of its
    dual are then matched, up to positive scaling, against the rows of Phi in
    both directions.
    """
    raw = [vec_op(tuple(tuple(a * b for b in x) for a in yp))
           for x in ctx.X.ext_primal for yp in ctx.Y.ext_dual]
    cone = cones.from_inequalities(ctx.op_dim, raw, max_rows)
    dual_rays = {tuple(r) for r in cones.dual_cone(cone).rays}
    rows = {exact.primitive(r): k for k, r in enumerate(ctx.phi_matrix)}
    missing = [k for r, k in rows.items() if r not in dual_rays]
    extra = [exact.fmt_vec(r) for r in dual_rays if r not in rows]
    failures = ([{"sprime_atom_not_extremal": k} for k in sorted(missing)]
                + [{"extremal_ray_not_in_sprime": r} for r in sorted(extra)])
    if len(rows) != len(ctx.sprime):
        failures.append({"duplicate_sprime_rows": len(ctx.sprime) - len(rows)})
    return Report("extremality", context, not failures, len(ctx.sprime), None, failures,
                  {"sprime_size": len(ctx.sprime), "dual_extremal_rays": len(dual_rays),
                   "operator_cone_rays": len(cone.rays)})


def density_samples(ctx: OperatorSpaceCtx, samples: int, seed: int) -> list:
    """Seeded test vectors indexed by S'.

    Cycles through unit vectors, images of random operators, and random
    integer vectors, so that both image and non-image vectors occur.
    """
    rng = random.Random(seed)
    n = len(ctx.sprime)
    out = []
    for s in range(samples):
        kind = s % 3
        if kind == 0:
            k = rng.randrange(n)
            w = tuple(exact.Q(int(i == k)) for i in range(n))
        elif kind == 1:
            T = [rng.randint(-3, 3) for _ in range(ctx.op_dim)]
            w = phi_vec(ctx, exact.vec(T))
        else:
            w = tuple(exact.Q(rng.randint(-3, 3)) for _ in range(n))
        out.append(w)
    return out


def order_density_spot_check(ctx: OperatorSpaceCtx, samples: int = 50, seed: int = 0,
                             context: str = "", max_rows=None) -> Report:
    """Check that each sampled ``w`` is the pointwise infimum of the Phi-images above it.

    For each ``w``, the polyhedron ``{z : Phi z >= w}`` is enumerated and the
    minimum of every coordinate ``(Phi z)_k`` over it must equal ``w_k``.
    """
    failures = []
    for s, w in enumerate(density_samples(ctx, samples, seed)):
        P = cones.poly_generators(ctx.op_dim, list(zip(ctx.phi_matrix, w)), max_rows)
        if P.empty:
            failures.append({"sample": s, "w": exact.fmt_vec(w), "reason": "no dominating image"})
            continue
        for k, row in enumerate(ctx.phi_matrix):
            m = P.min_of(row)
            if m is None:
                ray = next((r for r in P.rays if exact.dot(row, r) < 0), None)
                failures.append({"sample": s, "w": exact.fmt_vec(w), "atom": k,
                                 "reason": "unbounded below",
                                 "ray": None if ray is None else exact.fmt_vec(ray)})
            elif m != w[k]:
                failures.append({"sample": s, "w": exact.fmt_vec(w), "atom": k,
                                 "infimum": exact.fmt(m), "expected": exact.fmt(w[k])})
    return Report("order_density", context, not failures, samples, seed, failures)


def random_operator(ctx: OperatorSpaceCtx, rng: random.Random, lo=-3, hi=3) -> tuple:
    v = [rng.randint(lo, hi) for _ in range(ctx.op_dim)]
    return unvec(v, ctx.rows, ctx.cols)


def _random_in(ctx: OperatorSpaceCtx, M, rng: random.Random) -> tuple:
    """Random integer combination of a basis of ``Z(M)``."""
    v = exact.zeros(ctx.op_dim)
    for b in zero_subspace(ctx, M).basis:
        v = exact.add(v, exact.scale(rng.randint(-3, 3), b))
    return unvec(v, ctx.rows, ctx.cols)


def structured_pair(ctx: OperatorSpaceCtx, rng: random.Random) -> tuple:
    """A pair drawn from ``Z(K) x Z(K')`` for random atom sets covering all atoms.

    Uniform random operators are almost never disjoint; these pairs are
    disjoint, or nearly so when ``K'`` also takes one atom of ``K``.
    """
    n = len(ctx.sprime)
    K = {k for k in range(n) if rng.random() < 0.5}
    K2 = set(range(n)) - K
    if rng.random() < 0.3 and K:
        K2.add(rng.choice(sorted(K)))
    return _random_in(ctx, K, rng), _random_in(ctx, K2, rng)


def disjointness_comparison(ctx: OperatorSpaceCtx, pairs: int = 100, seed: int = 0,
                            context: str = "", max_rows=None,
                            structured: Optional[int] = None) -> Report:
    """Compare the Phi-support test with the upper-bound definition on seeded pairs.

    ``pairs`` uniform random integer pairs with entries in ``[-3, 3]`` are
    followed by ``structured`` pairs from :func:`structured_pair` (as many
    as ``pairs`` by default).
    """
    rng = random.Random(seed)
    structured = pairs if structured is None else structured
    failures = []
    n_disjoint = 0
    for s in range(pairs + structured):
        if s < pairs:
            T1, T2 = random_operator(ctx, rng), random_operator(ctx, rng)
        else:
            T1, T2 = structured_pair(ctx, rng)
        fast = disjoint_ops(ctx, T1, T2)
        slow = disjoint_by_definition_ops(ctx, T1, T2, max_rows)
        n_disjoint += fast
        if fast != slow:
            failures.append({"sample": s, "fast": fast, "definition": slow,
                             "T1": exact.fmt_mat(T1), "T2": exact.fmt_mat(T2)})
    return Report("disjointness", context, not failures, pairs + structured, seed, failures,
                  {"uniform_pairs": pairs, "structured_pairs": structured,
                   "disjoint_pairs": n_disjoint})
