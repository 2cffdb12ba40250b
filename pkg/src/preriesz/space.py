"""Finite-dimensional ordered vector spaces with polyhedral cones."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import cones, exact, splits
from .cones import ConeRep
from .errors import InputError, NotFullDimensionalError, NotPointedError


@dataclass(frozen=True)
class OrderedSpace:
    """``(R^n, K)`` for a pointed polyhedral cone ``K``.

    ``ext_primal`` are the extremal rays of ``K`` and ``ext_dual`` those of
    the dual cone, both canonical.  Non-full-dimensional cones are allowed;
    operations that need interior points refuse them.
    """

    cone: ConeRep

    def __post_init__(self):
        if not self.cone.is_pointed:
            raise NotPointedError("ordered spaces need a pointed cone, got a wedge "
                                  f"with lineality {exact.fmt_mat(self.cone.lineality)}")

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def dual(self) -> ConeRep:
        return cones.dual_cone(self.cone)

    @property
    def ext_primal(self) -> tuple:
        return self.cone.rays

    @property
    def ext_dual(self) -> tuple:
        return self.cone.facets

    @property
    def is_full_dimensional(self) -> bool:
        return self.cone.is_full_dimensional

    def dual_space(self) -> "OrderedSpace":
        """``(X', X'_+)`` in dual coordinates.  Needs a full-dimensional cone."""
        return OrderedSpace(self.dual)

    @classmethod
    def from_generators(cls, dim, generators, max_rows=None) -> "OrderedSpace":
        return cls(cones.from_generators(dim, [exact.vec(g) for g in generators], max_rows))

    @classmethod
    def from_inequalities(cls, dim, inequalities, max_rows=None) -> "OrderedSpace":
        return cls(cones.from_inequalities(dim, [exact.vec(a) for a in inequalities], max_rows))

    def _require_solid(self, what: str):
        if not self.is_full_dimensional:
            raise NotFullDimensionalError(f"{what} needs a full-dimensional cone")


def space_from_doc(doc: dict, max_rows=None) -> OrderedSpace:
    if not isinstance(doc, dict) or "cone" not in doc:
        raise InputError("space document needs a 'cone' field")
    cone_doc = dict(doc["cone"])
    if "dim" in doc:
        if cone_doc.setdefault("dim", doc["dim"]) != doc["dim"]:
            raise InputError("space and cone dimensions differ")
    return OrderedSpace(cones.cone_from_doc(cone_doc, max_rows))


def space_to_doc(S: OrderedSpace) -> dict:
    return {"dim": S.dim, "cone": cones.cone_to_doc(S.cone)}


def _check_dim(S: OrderedSpace, *vs):
    for v in vs:
        if len(v) != S.dim:
            raise InputError(f"vector of dimension {len(v)} in a space of dimension {S.dim}")


def leq(S: OrderedSpace, x: Sequence, y: Sequence) -> bool:
    _check_dim(S, x, y)
    return cones.membership(S.cone, exact.sub(y, x))


def is_order_unit(S: OrderedSpace, v: Sequence) -> bool:
    S._require_solid("order units")
    _check_dim(S, v)
    return all(exact.dot(f, v) > 0 for f in S.ext_dual)


def order_unit_norm(S: OrderedSpace, v: Sequence, x: Sequence) -> Fraction:
    """``inf{t >= 0 : -t v <= x <= t v}``, exactly."""
    if not is_order_unit(S, v):
        raise InputError(f"{exact.fmt_vec(v)} is not an order unit")
    _check_dim(S, x)
    return max((abs(exact.dot(f, x)) / exact.dot(f, v) for f in S.ext_dual),
               default=Fraction(0))


def determines_positivity(S: OrderedSpace, F: Sequence[Sequence]) -> bool:
    """Whether ``{x : <f, x> >= 0 for f in F}`` is exactly the cone."""
    for f in F:
        _check_dim(S, f)
        if not cones.membership(S.dual, f):
            raise InputError(f"{exact.fmt_vec(f)} is not a positive functional")
    return cones.from_inequalities(S.dim, [exact.vec(f) for f in F]) == S.cone


def dual_support(S: OrderedSpace, z: Sequence) -> frozenset:
    """Indices of extremal functionals that do not vanish at ``z``."""
    return frozenset(k for k, f in enumerate(S.ext_dual) if exact.dot(f, z) != 0)


def disjoint_vectors(S: OrderedSpace, z1: Sequence, z2: Sequence) -> bool:
    S._require_solid("disjointness via extremal functionals")
    _check_dim(S, z1, z2)
    return all(exact.dot(f, z1) == 0 or exact.dot(f, z2) == 0 for f in S.ext_dual)


@dataclass(frozen=True)
class AntiLatticeVerdict:
    is_anti_lattice: bool
    witness: Optional[tuple] = None  # a disjoint pair of nonzero positive elements

    def to_doc(self) -> dict:
        return {"is_anti_lattice": self.is_anti_lattice,
                "witness": None if self.witness is None else exact.fmt_mat(self.witness)}


@dataclass(frozen=True)
class NoDisjointVerdict:
    holds: bool
    witness: Optional[tuple] = None  # a disjoint pair of nonzero elements

    def to_doc(self) -> dict:
        return {"holds": self.holds,
                "witness": None if self.witness is None else exact.fmt_mat(self.witness)}


def anti_lattice_verdict(S: OrderedSpace) -> AntiLatticeVerdict:
    """No two extremal rays have disjoint dual supports.

    The support of a positive element is the union of the supports of the
    rays it combines, so pairs of extremal rays suffice.
    """
    S._require_solid("the anti-lattice test")
    supports = [dual_support(S, r) for r in S.ext_primal]
    for i, j in combinations(range(len(supports)), 2):
        if not supports[i] & supports[j]:
            return AntiLatticeVerdict(False, (S.ext_primal[i], S.ext_primal[j]))
    return AntiLatticeVerdict(True)


def no_disjoint_pair_verdict(S: OrderedSpace, max_subsets=None) -> NoDisjointVerdict:
    S._require_solid("the disjoint-pair search")
    split = splits.find_split(S.ext_dual, S.dim, max_subsets)
    if split is None:
        return NoDisjointVerdict(True)
    return NoDisjointVerdict(False, splits.split_witness(S.ext_dual, S.dim, split))
