"""The ordered space of operators ``L(X, Y)`` and its functional representation.

In finite dimensions every operator has finite rank, so ``L(X, Y)`` and the
closure of the finite-rank operators coincide; this module calls both the
operator space.

Operators are ``dim(Y) x dim(X)`` matrices.  They are vectorized column-major:
``vec(T)`` stacks the columns ``T e_1, T e_2, ...``, so entry ``c*dim(Y) + r``
of ``vec(T)`` is ``T[r][c]``.

The representation ``Phi`` evaluates an operator against the normalized
functionals ``T -> scale * <y', T x>``, one per pair of an extremal ray ``x``
of ``X_+`` and an extremal ray ``y'`` of ``Y'_+``.  These pairs are ordered
``x``-major.  The scale normalizes each functional to take the value 1 at the
rank-one interior operator ``z0 = y0 x0'^T``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import cones, exact
from .cones import ConeRep
from .errors import ConsistencyError, InputError, NotFullDimensionalError, NotPointedError
from .space import OrderedSpace


def vec_op(T: Sequence[Sequence]) -> tuple:
    rows = len(T)
    cols = len(T[0])
    return tuple(exact.Q(T[r][c]) for c in range(cols) for r in range(rows))


def unvec(v: Sequence, rows: int, cols: int) -> tuple:
    if len(v) != rows * cols:
        raise InputError(f"vector of length {len(v)} is not a {rows}x{cols} operator")
    return tuple(tuple(exact.Q(v[c * rows + r]) for c in range(cols)) for r in range(rows))


def outer(y: Sequence, xp: Sequence) -> tuple:
    """The rank-one operator ``x -> <xp, x> y``."""
    return tuple(tuple(exact.Q(a) * exact.Q(b) for b in xp) for a in y)


def apply(T: Sequence[Sequence], x: Sequence) -> tuple:
    return exact.matvec(T, x)


@dataclass(frozen=True)
class InteriorVerdict:
    nonempty: bool
    witness: Optional[tuple] = None
    reason: str = ""

    def to_doc(self) -> dict:
        return {"nonempty": self.nonempty, "reason": self.reason,
                "witness": None if self.witness is None else operator_to_doc(self.witness)}


def interior_from_cones(xcone: ConeRep, ycone: ConeRep) -> InteriorVerdict:
    """Whether the positive operators ``X -> Y`` have interior points.

    Holds iff ``Y_+`` is full-dimensional and ``X'_+`` is full-dimensional;
    in finite dimensions the latter is the existence of an equivalent norm
    additive on ``X_+``.  ``X_+`` must span ``X`` and ``Y_+`` must be pointed.
    When the verdict is positive the witness ``y0 x0'^T`` is returned, with
    ``y0`` the sum of the extremal rays of ``Y_+`` and ``x0'`` that of ``X'_+``;
    it is checked to be strictly positive on every defining functional.
    """
    if not ycone.is_pointed:
        raise NotPointedError("the codomain cone must be pointed")
    if not xcone.is_full_dimensional:
        raise NotFullDimensionalError("the domain cone must span the domain")
    if not ycone.is_full_dimensional:
        return InteriorVerdict(False, None, "the codomain cone has empty interior")
    xdual = cones.dual_cone(xcone)
    if not xdual.is_full_dimensional:
        return InteriorVerdict(False, None, "the dual of the domain cone has empty interior")
    y0 = _sum(ycone.rays, ycone.dim)
    x0 = _sum(xdual.rays, xcone.dim)
    W = outer(y0, x0)
    for x in xcone.rays:
        Wx = apply(W, x)
        if not all(exact.dot(f, Wx) > 0 for f in ycone.facets):
            raise ConsistencyError("rank-one witness is not interior")
    return InteriorVerdict(True, W, "")


def interior_verdict(X: OrderedSpace, Y: OrderedSpace) -> InteriorVerdict:
    return interior_from_cones(X.cone, Y.cone)


def _sum(vs, dim) -> tuple:
    out = exact.zeros(dim)
    for v in vs:
        out = exact.add(out, v)
    return out


@dataclass(frozen=True)
class SPrimeAtom:
    i: int  # index into X.ext_primal
    j: int  # index into Y.ext_dual
    scale: Fraction
    x: tuple
    yprime: tuple

    def to_doc(self) -> dict:
        return {"i": self.i, "j": self.j, "scale": exact.fmt(self.scale),
                "x": exact.fmt_vec(self.x), "yprime": exact.fmt_vec(self.yprime)}


@dataclass(frozen=True)
class OperatorSpaceCtx:
    X: OrderedSpace
    Y: OrderedSpace
    op_cone: ConeRep
    x0_dual: tuple
    y0: tuple
    sprime: tuple
    phi_matrix: tuple

    @property
    def rows(self) -> int:
        return self.Y.dim

    @property
    def cols(self) -> int:
        return self.X.dim

    @property
    def op_dim(self) -> int:
        return self.X.dim * self.Y.dim

    @property
    def z0(self) -> tuple:
        return outer(self.y0, self.x0_dual)

    def check_shape(self, T: Sequence[Sequence]):
        if len(T) != self.rows or any(len(r) != self.cols for r in T):
            raise InputError(f"operator must be {self.rows}x{self.cols}")

    def as_space(self) -> OrderedSpace:
        """The operator space as an ordered space on vectorized matrices."""
        return OrderedSpace(self.op_cone)


def build_ctx(X: OrderedSpace, Y: OrderedSpace, max_rows=None) -> OperatorSpaceCtx:
    """Assemble ``S'`` and ``Phi`` and verify them.

    Verified at build time: ``Phi`` is injective; the cone cut out by the rows
    of ``Phi`` (via double description) is pointed and full-dimensional; each
    of its extremal rays maps every extremal ray of ``X_+`` into ``Y_+``; and
    ``Phi(z0)`` is the all-ones vector.
    """
    verdict = interior_verdict(X, Y)
    if not verdict.nonempty:
        raise InputError(f"operator cone has empty interior: {verdict.reason}")
    y0 = _sum(Y.ext_primal, Y.dim)
    x0 = _sum(X.ext_dual, X.dim)
    atoms, rows = [], []
    for i, x in enumerate(X.ext_primal):
        for j, yp in enumerate(Y.ext_dual):
            lam = 1 / (exact.dot(yp, y0) * exact.dot(x0, x))
            atoms.append(SPrimeAtom(i, j, lam, x, yp))
            rows.append(exact.scale(lam, vec_op(outer(yp, x))))
    n = X.dim * Y.dim
    if exact.rank(rows) != n:
        raise ConsistencyError("Phi is not injective")
    op_cone = cones.from_inequalities(n, rows, max_rows)
    if not (op_cone.is_pointed and op_cone.is_full_dimensional):
        raise ConsistencyError("operator cone is not pointed and full-dimensional")
    for r in op_cone.rays:
        T = unvec(r, Y.dim, X.dim)
        if not all(cones.membership(Y.cone, apply(T, x)) for x in X.ext_primal):
            raise ConsistencyError("an extremal ray of the operator cone is not positive")
    ctx = OperatorSpaceCtx(X, Y, op_cone, x0, y0, tuple(atoms), tuple(rows))
    if any(v != 1 for v in phi(ctx, ctx.z0)):
        raise ConsistencyError("S' is not normalized at z0")
    return ctx


def phi(ctx: OperatorSpaceCtx, T: Sequence[Sequence]) -> tuple:
    ctx.check_shape(T)
    v = vec_op(T)
    return tuple(exact.dot(row, v) for row in ctx.phi_matrix)


def phi_vec(ctx: OperatorSpaceCtx, v: Sequence) -> tuple:
    """``Phi`` on an already vectorized operator."""
    return tuple(exact.dot(row, v) for row in ctx.phi_matrix)


def phi_preimage(ctx: OperatorSpaceCtx, w: Sequence) -> Optional[tuple]:
    if len(w) != len(ctx.sprime):
        raise InputError(f"expected {len(ctx.sprime)} entries, got {len(w)}")
    res = exact.solve(ctx.phi_matrix, [exact.Q(x) for x in w])
    if res is None:
        return None
    return unvec(res[0], ctx.rows, ctx.cols)


def is_positive(ctx: OperatorSpaceCtx, T: Sequence[Sequence]) -> bool:
    return all(v >= 0 for v in phi(ctx, T))


def zero_op(ctx: OperatorSpaceCtx) -> tuple:
    return tuple((Fraction(0),) * ctx.cols for _ in range(ctx.rows))


def op_add(A, B) -> tuple:
    return tuple(exact.add(a, b) for a, b in zip(A, B))


def op_sub(A, B) -> tuple:
    return tuple(exact.sub(a, b) for a, b in zip(A, B))


def op_scale(c, A) -> tuple:
    return tuple(exact.scale(c, a) for a in A)


def operator_from_doc(doc: dict, ctx: Optional[OperatorSpaceCtx] = None) -> tuple:
    if not isinstance(doc, dict) or "entries" not in doc:
        raise InputError("operator document needs 'entries'")
    T = exact.mat(doc["entries"])
    if not T:
        raise InputError("empty operator")
    if "rows" in doc and doc["rows"] != len(T):
        raise InputError("'rows' does not match entries")
    if "cols" in doc and doc["cols"] != len(T[0]):
        raise InputError("'cols' does not match entries")
    if ctx is not None:
        ctx.check_shape(T)
    return T


def operator_to_doc(T: Sequence[Sequence]) -> dict:
    return {"rows": len(T), "cols": len(T[0]), "entries": exact.fmt_mat(T)}


def sprime_to_doc(ctx: OperatorSpaceCtx) -> list:
    return [a.to_doc() for a in ctx.sprime]
