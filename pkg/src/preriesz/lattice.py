"""Disjointness, bands and moduli of operators, read off the representation Phi.

Two operators are disjoint iff their Phi-values never both differ from zero.
Consequently the disjoint complement of a set depends only on its *support*
(the atoms where some member has a nonzero Phi-value) and is the subspace
``Z(M) = {T : Phi(T)_k = 0 for k in M}`` cut out by the rows in the support.
Bands are the fixed points of taking the complement twice.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import exact, splits
from .errors import CapExceeded, ConsistencyError, InputError
from .operators import (OperatorSpaceCtx, op_add, op_scale, op_sub, operator_to_doc,
                        outer, phi, phi_preimage, phi_vec, unvec, vec_op)
from .space import anti_lattice_verdict, no_disjoint_pair_verdict


def support(ctx: OperatorSpaceCtx, T: Sequence[Sequence]) -> frozenset:
    return frozenset(k for k, v in enumerate(phi(ctx, T)) if v != 0)


def disjoint_ops(ctx: OperatorSpaceCtx, T1, T2) -> bool:
    return all(a == 0 or b == 0 for a, b in zip(phi(ctx, T1), phi(ctx, T2)))


@dataclass(frozen=True)
class BandDescriptor:
    """A subspace ``Z(atoms - support)`` together with a basis of it.

    ``support`` is the set of atoms where some member of the subspace is
    nonzero; ``basis`` holds vectorized operators.
    """

    support: frozenset
    basis: tuple = field(compare=False)

    def operators(self, ctx: OperatorSpaceCtx) -> list:
        return [unvec(b, ctx.rows, ctx.cols) for b in self.basis]

    def to_doc(self, ctx: OperatorSpaceCtx) -> dict:
        return {"support": sorted(self.support), "dimension": len(self.basis),
                "basis": [operator_to_doc(T) for T in self.operators(ctx)]}


def zero_subspace(ctx: OperatorSpaceCtx, M: Iterable[int]) -> BandDescriptor:
    """``Z(M)``: the operators whose Phi-values vanish on the atoms ``M``."""
    rows = [ctx.phi_matrix[k] for k in sorted(M)]
    basis = tuple(exact.nullspace(rows, ncols=ctx.op_dim))
    supp = frozenset(k for k, row in enumerate(ctx.phi_matrix)
                     if any(exact.dot(row, b) != 0 for b in basis))
    return BandDescriptor(supp, basis)


def _support_of_vecs(ctx, vecs) -> frozenset:
    out = set()
    for v in vecs:
        out.update(k for k, x in enumerate(phi_vec(ctx, v)) if x != 0)
    return frozenset(out)


def disjoint_complement(ctx: OperatorSpaceCtx, B: Sequence) -> BandDescriptor:
    """``B^d`` for a list of operators ``B``."""
    for T in B:
        ctx.check_shape(T)
    return zero_subspace(ctx, _support_of_vecs(ctx, [vec_op(T) for T in B]))


def band_closure(ctx: OperatorSpaceCtx, B: Sequence) -> BandDescriptor:
    """``B^dd``, the smallest band containing ``B``."""
    first = disjoint_complement(ctx, B)
    return zero_subspace(ctx, first.support)


def is_band(ctx: OperatorSpaceCtx, B: Sequence) -> bool:
    """Whether ``span(B)`` equals its double disjoint complement."""
    closure = band_closure(ctx, B)
    vecs = [vec_op(T) for T in B]
    vecs = [v for v in vecs if not exact.is_zero(v)]
    if not vecs:
        return not closure.basis
    if not closure.basis:
        return False
    return exact.same_span(vecs, closure.basis)


def _close_zero_set(ctx, M) -> BandDescriptor:
    """The band ``Z(M)^dd``."""
    return zero_subspace(ctx, zero_subspace(ctx, M).support)


@dataclass
class BandEnumeration:
    bands: list
    truncated: bool
    nodes_cap: int

    def to_doc(self, ctx) -> dict:
        return {"count": len(self.bands), "truncated": self.truncated,
                "bands": [b.to_doc(ctx) for b in self.bands]}


def enumerate_bands(ctx: OperatorSpaceCtx, limit: Optional[int] = None) -> BandEnumeration:
    """All bands of the operator space.

    Besides ``{0}`` and the whole space, every band ``B`` has a nonzero
    complement, so its zero set ``M`` splits the atoms into two rank-deficient
    halves ``(M, rest)``.  The split search visits those partitions; each leaf
    contributes ``Z(M)^dd`` and ``Z(rest)^dd``.  If the search exceeds
    ``limit`` nodes, the bands found so far are returned with
    ``truncated=True``.
    """
    cap = splits.DEFAULT_MAX_SUBSETS if limit is None else limit
    found = {}

    def record(band: BandDescriptor):
        found.setdefault(band.support, band)

    record(zero_subspace(ctx, range(len(ctx.sprime))))
    record(zero_subspace(ctx, ()))
    truncated = False
    seen_zero_sets = set()
    try:
        for A, B in splits.iter_splits(ctx.phi_matrix, ctx.op_dim, cap):
            for M in (A, B):
                key = frozenset(M)
                if key in seen_zero_sets:
                    continue
                seen_zero_sets.add(key)
                record(_close_zero_set(ctx, M))
    except CapExceeded:
        truncated = True
    bands = sorted(found.values(), key=lambda b: (len(b.support), sorted(b.support)))
    for b in bands:
        if not is_band(ctx, [unvec(v, ctx.rows, ctx.cols) for v in b.basis]):
            raise ConsistencyError(f"enumerated subspace with support {sorted(b.support)} "
                                   "is not a band")
    return BandEnumeration(bands, truncated, cap)


@dataclass(frozen=True)
class Modulus:
    M: tuple
    T1: tuple
    T2: tuple

    def to_doc(self) -> dict:
        return {"modulus": operator_to_doc(self.M), "positive_part": operator_to_doc(self.T1),
                "negative_part": operator_to_doc(self.T2)}


def _nonneg(ctx, T) -> bool:
    return all(v >= 0 for v in phi(ctx, T))


def modulus(ctx: OperatorSpaceCtx, T: Sequence[Sequence]) -> Optional[Modulus]:
    """The modulus of ``T``, if it exists, with its disjoint positive parts.

    ``T`` has a modulus iff the pointwise absolute value of ``Phi(T)`` lies
    in the range of ``Phi``; its preimage is the modulus.
    """
    ctx.check_shape(T)
    T = tuple(tuple(exact.Q(x) for x in r) for r in T)
    w = tuple(abs(v) for v in phi(ctx, T))
    M = phi_preimage(ctx, w)
    if M is None:
        return None
    half = Fraction(1, 2)
    T1 = op_scale(half, op_add(M, T))
    T2 = op_scale(half, op_sub(M, T))
    if not (_nonneg(ctx, T1) and _nonneg(ctx, T2) and disjoint_ops(ctx, T1, T2)
            and op_sub(T1, T2) == T):
        raise ConsistencyError("modulus decomposition failed its checks")
    return Modulus(M, T1, T2)


@dataclass(frozen=True)
class BandDecomposition:
    band: BandDescriptor
    T1: tuple
    T2: tuple

    @property
    def M(self) -> tuple:
        return op_add(self.T1, self.T2)

    def to_doc(self, ctx) -> dict:
        return {"band": self.band.to_doc(ctx), "positive_part": operator_to_doc(self.T1),
                "negative_part": operator_to_doc(self.T2),
                "modulus": operator_to_doc(self.M)}


def modulus_via_bands(ctx: OperatorSpaceCtx, T: Sequence[Sequence],
                      bands: Sequence[BandDescriptor]) -> Optional[BandDecomposition]:
    """Write ``T = b - c`` with ``b >= 0`` in a band and ``c >= 0`` in its complement.

    Bands are tried by increasing support size.  Every success must give the
    same ``b + c``; this is checked rather than assumed.
    """
    ctx.check_shape(T)
    T = tuple(tuple(exact.Q(x) for x in r) for r in T)
    t = vec_op(T)
    result = None
    for band in sorted(bands, key=lambda b: (len(b.support), sorted(b.support))):
        comp = zero_subspace(ctx, band.support)
        coeffs = exact.in_span(list(band.basis) + list(comp.basis), t)
        if coeffs is None:
            continue
        b = exact.zeros(ctx.op_dim)
        for a, v in zip(coeffs[:len(band.basis)], band.basis):
            b = exact.add(b, exact.scale(a, v))
        c = exact.sub(b, t)
        if all(v >= 0 for v in phi_vec(ctx, b)) and all(v >= 0 for v in phi_vec(ctx, c)):
            dec = BandDecomposition(band, unvec(b, ctx.rows, ctx.cols),
                                    unvec(c, ctx.rows, ctx.cols))
            if result is None:
                result = dec
            elif dec.M != result.M:
                raise ConsistencyError("two bands certify different moduli")
    return result


@dataclass(frozen=True)
class OpVerdict:
    value: bool
    mode: str
    witness: Optional[tuple] = None
    detail: dict = field(default_factory=dict, compare=False)

    def to_doc(self, key: str) -> dict:
        return {key: self.value, "mode": self.mode,
                "witness": None if self.witness is None
                else [operator_to_doc(T) for T in self.witness],
                **self.detail}


def _check_mode(mode: str):
    if mode not in ("compositional", "direct"):
        raise InputError(f"unknown mode {mode!r}; use 'compositional' or 'direct'")


def op_anti_lattice_verdict(ctx: OperatorSpaceCtx, mode: str = "compositional") -> OpVerdict:
    """Whether no two nonzero positive operators are disjoint.

    ``compositional`` combines the verdicts for ``X'`` and ``Y``, lifting a
    witness ``(f1, f2)`` in ``X'`` to ``(y0 f1^T, y0 f2^T)`` and ``(y1, y2)`` in
    ``Y`` to ``(y1 x0'^T, y2 x0'^T)``.  ``direct`` tests all pairs of extremal
    rays of the operator cone.
    """
    _check_mode(mode)
    if mode == "compositional":
        vx = anti_lattice_verdict(ctx.X.dual_space())
        vy = anti_lattice_verdict(ctx.Y)
        detail = {"x_dual_anti_lattice": vx.is_anti_lattice,
                  "y_anti_lattice": vy.is_anti_lattice}
        if not vx.is_anti_lattice:
            f1, f2 = vx.witness
            return OpVerdict(False, mode, (outer(ctx.y0, f1), outer(ctx.y0, f2)), detail)
        if not vy.is_anti_lattice:
            y1, y2 = vy.witness
            return OpVerdict(False, mode, (outer(y1, ctx.x0_dual), outer(y2, ctx.x0_dual)),
                             detail)
        return OpVerdict(True, mode, None, detail)
    rays = ctx.op_cone.rays
    masks = []
    for r in rays:
        m = 0
        for k, v in enumerate(phi_vec(ctx, r)):
            if v != 0:
                m |= 1 << k
        masks.append(m)
    for i, j in combinations(range(len(rays)), 2):
        if not masks[i] & masks[j]:
            return OpVerdict(False, mode, (unvec(rays[i], ctx.rows, ctx.cols),
                                           unvec(rays[j], ctx.rows, ctx.cols)),
                             {"extremal_rays": len(rays)})
    return OpVerdict(True, mode, None, {"extremal_rays": len(rays)})


def op_no_disjoint_verdict(ctx: OperatorSpaceCtx, mode: str = "compositional",
                           max_subsets: Optional[int] = None) -> OpVerdict:
    """Whether no two nonzero operators at all are disjoint."""
    _check_mode(mode)
    if mode == "compositional":
        vx = no_disjoint_pair_verdict(ctx.X.dual_space(), max_subsets)
        vy = no_disjoint_pair_verdict(ctx.Y, max_subsets)
        detail = {"x_dual_holds": vx.holds, "y_holds": vy.holds}
        if not vx.holds:
            f1, f2 = vx.witness
            return OpVerdict(False, mode, (outer(ctx.y0, f1), outer(ctx.y0, f2)), detail)
        if not vy.holds:
            y1, y2 = vy.witness
            return OpVerdict(False, mode, (outer(y1, ctx.x0_dual), outer(y2, ctx.x0_dual)),
                             detail)
        return OpVerdict(True, mode, None, detail)
    split = splits.find_split(ctx.phi_matrix, ctx.op_dim, max_subsets)
    if split is None:
        return OpVerdict(True, mode)
    z1, z2 = splits.split_witness(ctx.phi_matrix, ctx.op_dim, split)
    return OpVerdict(False, mode, (unvec(z1, ctx.rows, ctx.cols), unvec(z2, ctx.rows, ctx.cols)))
