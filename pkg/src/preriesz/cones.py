"""Polyhedral cones by the double description method.

A :class:`ConeRep` always carries both descriptions in canonical form:

* ``rays`` and ``lineality`` generate the cone, ``cone(rays) + span(lineality)``;
* ``facets`` and ``equations`` cut it out,
  ``{x : <f, x> >= 0 for f in facets, <e, x> = 0 for e in equations}``.

``equations`` is a basis of the orthogonal complement of the cone's span, so
the dual cone is obtained by swapping the two halves.  For a pointed
full-dimensional cone, ``lineality`` and ``equations`` are empty and the lists
``generators`` / ``inequalities`` are just the extremal rays / facet normals.

All vectors are primitive integer vectors stored as Fractions.  When the
lineality (resp. equation) space is nontrivial, rays (resp. facets) are
projected onto its orthogonal complement, which makes them unique.  Lists are
ordered by *decreasing* lexicographic order, so that e.g. the standard basis
comes out as ``e1, e2, ...``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Optional, Sequence

from . import exact
from .errors import CapExceeded, InputError

DEFAULT_MAX_DD_ROWS = 200_000


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _iprim(v) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)


def _to_int_rows(rows: Sequence[Sequence], dim: int) -> list:
    out = []
    for r in rows:
        if len(r) != dim:
            raise InputError(f"expected vectors of length {dim}, got {len(r)}")
        out.append(exact.primitive(r))
    return out


def _rank_of(rows) -> int:
    ech = exact.IntEchelon()
    for r in rows:
        ech.add(r)
    return len(ech)


def double_description(dim: int, constraints: Sequence[Sequence[int]],
                       max_rows: Optional[int] = None):
    """Extremal rays and lineality of ``{x : <a, x> >= 0 for a in constraints}``.

    Integer-only incremental DD.  Rays are primitive and each carries the
    bitmask of processed constraints it saturates.  A positive ray ``p`` and
    a negative ray ``n`` are adjacent iff their common zero set has at least
    ``dim - dim(lineality) - 2`` members and no third ray saturates all of it;
    the current ray set is always minimal, so this combinatorial test is exact.

    Returns ``(rays, lineality)`` as lists of int tuples, not yet canonical.
    """
    cap = DEFAULT_MAX_DD_ROWS if max_rows is None else max_rows
    A = [tuple(a) for a in constraints]
    lin = [tuple(int(i == j) for i in range(dim)) for j in range(dim)]
    rays: list = []  # (vector, zero-set bitmask over processed constraints)

    for k, a in enumerate(A):
        bit = 1 << k
        piv = next((i for i, l in enumerate(lin) if _idot(a, l)), None)
        if piv is not None:
            # a cuts the lineality space: one lineality direction becomes a ray
            l = lin.pop(piv)
            s = _idot(a, l)
            if s < 0:
                l, s = tuple(-x for x in l), -s
            lin = [_iprim([s * x - _idot(a, m) * y for x, y in zip(m, l)]) for m in lin]
            new_rays = []
            for r, z in rays:
                v = _idot(a, r)
                nr = _iprim([s * x - v * y for x, y in zip(r, l)]) if v else r
                new_rays.append((nr, z | bit))
            new_rays.append((l, bit - 1))
            rays = new_rays
            continue

        pos, neg, out = [], [], []
        for r, z in rays:
            v = _idot(a, r)
            if v > 0:
                pos.append((r, z, v))
                out.append((r, z))
            elif v < 0:
                neg.append((r, z, v))
            else:
                out.append((r, z | bit))
        target = dim - len(lin) - 2
        if target < 0:
            pos = neg = ()
        zs = [z for _, z in rays]
        for p, zp, vp in pos:
            for n, zn, vn in neg:
                common = zp & zn
                if common.bit_count() < target:
                    continue
                for z in zs:
                    if z & common == common and z != zp and z != zn:
                        break
                else:
                    new = _iprim([vp * x - vn * y for x, y in zip(n, p)])
                    out.append((new, common | bit))
        if len(out) > cap:
            raise CapExceeded("double description intermediate rays", cap)
        rays = out

    return [r for r, _ in rays], lin


def _sort_desc(vs) -> tuple:
    return tuple(sorted(set(vs), reverse=True))


def _project_out(v, basis):
    """Orthogonal projection of ``v`` onto the complement of span(basis)."""
    if not basis:
        return tuple(Fraction(x) for x in v)
    gram = [[exact.dot(b, c) for c in basis] for b in basis]
    rhs = [exact.dot(b, v) for b in basis]
    coeffs = exact.solve(gram, rhs)[0]
    out = [Fraction(x) for x in v]
    for c, b in zip(coeffs, basis):
        out = [x - c * y for x, y in zip(out, b)]
    return tuple(out)


def _extreme(dim: int, rows: Sequence[Sequence], max_rows=None):
    """Canonical (rays, lineality basis) of ``{x : <a, x> >= 0}``."""
    ints = _to_int_rows(rows, dim)
    rays, _ = double_description(dim, ints, max_rows)
    if ints:
        lin = exact.nullspace([tuple(Fraction(x) for x in a) for a in ints])
    else:
        lin = exact.nullspace([], ncols=dim)
    out = []
    for r in rays:
        p = _project_out(r, lin)
        if not exact.is_zero(p):
            out.append(tuple(Fraction(x) for x in exact.primitive(p)))
    return _sort_desc(out), tuple(lin)


@dataclass(frozen=True)
class ConeRep:
    dim: int
    rays: tuple
    lineality: tuple
    facets: tuple
    equations: tuple

    @property
    def generators(self) -> tuple:
        return self.rays + self.lineality + tuple(exact.neg(l) for l in self.lineality)

    @property
    def inequalities(self) -> tuple:
        return self.facets + self.equations + tuple(exact.neg(e) for e in self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations


def _irredundant(dim: int, candidates: Sequence[Sequence], other: Sequence[Sequence]):
    """Select the extremal members of ``cone(candidates)``.

    ``other`` must describe the dual of ``cone(candidates)``, i.e. ``cone(candidates)``
    is ``{x : <o, x> >= 0 for o in other}``.  The lineality of ``cone(candidates)``
    is the null space of ``other``; a candidate, projected off that lineality, spans
    an extremal ray iff its active set in ``other`` has rank ``dim - lin - 1``.

    Returns canonical (rays, lineality basis).
    """
    other_int = [exact.primitive(o) for o in other]
    if other_int:
        lin = tuple(exact.nullspace([tuple(Fraction(x) for x in o) for o in other_int]))
    else:
        lin = tuple(exact.nullspace([], ncols=dim))
    target = dim - len(lin) - 1
    seen = set()
    out = []
    for c in candidates:
        p = _project_out(c, lin)
        if exact.is_zero(p):
            continue
        key = exact.primitive(p)
        if key in seen:
            continue
        seen.add(key)
        active = [o for o in other_int if _idot(o, key) == 0]
        if _rank_of(active) == target:
            out.append(tuple(Fraction(x) for x in key))
    return _sort_desc(out), lin


def from_inequalities(dim: int, inequalities: Sequence[Sequence], max_rows=None) -> ConeRep:
    """Cone ``{x : <a, x> >= 0}``; both descriptions computed and canonicalized.

    One double description pass yields the rays; the facets are then the
    input inequalities that survive the active-set rank test.
    """
    if dim < 1:
        raise InputError("dimension must be >= 1")
    rays, lin = _extreme(dim, inequalities, max_rows)
    gens = rays + lin + tuple(exact.neg(l) for l in lin)
    facets, eqs = _irredundant(dim, inequalities, gens)
    return ConeRep(dim, rays, lin, facets, eqs)


def from_generators(dim: int, generators: Sequence[Sequence], max_rows=None) -> ConeRep:
    """Cone generated by ``generators``; redundant generators are dropped."""
    if dim < 1:
        raise InputError("dimension must be >= 1")
    if not generators:
        raise InputError("at least one generator required")
    for g in generators:
        if len(g) != dim:
            raise InputError(f"expected vectors of length {dim}, got {len(g)}")
        if exact.is_zero(g):
            raise InputError("zero vector among generators")
    facets, eqs = _extreme(dim, generators, max_rows)
    ineqs = facets + eqs + tuple(exact.neg(e) for e in eqs)
    rays, lin = _irredundant(dim, generators, ineqs)
    return ConeRep(dim, rays, lin, facets, eqs)


def dd_v_to_h(dim: int, generators: Sequence[Sequence], max_rows=None) -> ConeRep:
    return from_generators(dim, generators, max_rows)


def dd_h_to_v(dim: int, inequalities: Sequence[Sequence], max_rows=None) -> ConeRep:
    return from_inequalities(dim, inequalities, max_rows)


def dual_cone(c: ConeRep) -> ConeRep:
    """The dual cone, in the same coordinates via the standard dot product."""
    return ConeRep(c.dim, c.facets, c.equations, c.rays, c.lineality)


def is_pointed(c: ConeRep) -> bool:
    return c.is_pointed


def is_full_dimensional(c: ConeRep) -> bool:
    return c.is_full_dimensional


def membership(c: ConeRep, x: Sequence) -> bool:
    if len(x) != c.dim:
        raise InputError(f"point has dimension {len(x)}, cone has {c.dim}")
    return (all(exact.dot(f, x) >= 0 for f in c.facets)
            and all(exact.dot(e, x) == 0 for e in c.equations))


def is_extremal_ray(c: ConeRep, x: Sequence) -> bool:
    """``x`` spans an extremal ray: a nonzero member whose active constraints have rank dim-1."""
    if not membership(c, x) or exact.is_zero(x):
        return False
    active = [a for a in c.inequalities if exact.dot(a, x) == 0]
    return exact.rank(active) == c.dim - 1 if active else c.dim == 1


def facet_witnesses(c: ConeRep) -> list:
    """For each facet, a point violating that facet only.

    Witnesses irredundancy of the facet list: dropping facet ``i`` admits
    ``witnesses[i]``, which lies in the span of the cone.
    """
    out = []
    for i, f in enumerate(c.facets):
        p = exact.zeros(c.dim)
        for r in c.rays:
            if exact.dot(f, r) == 0:
                p = exact.add(p, r)
        t = Fraction(1)
        for j, g in enumerate(c.facets):
            gf = exact.dot(g, f)
            if j != i and gf > 0:
                t = min(t, exact.dot(g, p) / gf / 2)
        out.append(exact.sub(p, exact.scale(t, f)) if t > 0 else None)
    return out


def nonnegative_combination(c: ConeRep, x: Sequence):
    """Brute-force membership: coefficients expressing ``x`` over the generators.

    Tries every linearly independent subset of generators (Caratheodory), so it
    is independent of the facet description.  Returns None if ``x`` is not a
    nonnegative combination.
    """
    gens = c.generators
    if exact.is_zero(x):
        return {}
    for k in range(1, min(len(gens), c.dim) + 1):
        for idx in combinations(range(len(gens)), k):
            sub = [gens[i] for i in idx]
            coeffs = exact.in_span(sub, x)
            if coeffs is not None and all(q >= 0 for q in coeffs):
                return dict(zip(idx, coeffs))
    return None


@dataclass(frozen=True)
class PolyhedronRep:
    """Both descriptions of ``{x : <a, x> >= b}``.

    Besides the public Fraction data, integer copies are kept: each vertex as
    a homogeneous pair ``(r, t)`` with ``x = r / t``, rays as primitive integer
    vectors, and each inequality scaled to integer coefficients.  Membership
    and minimization run on those.
    """
    dim: int
    vertices: tuple
    rays: tuple
    lineality: tuple
    inequalities: tuple  # (normal, offset) pairs: <a, x> >= offset
    empty: bool
    hom_vertices: tuple = field(default=(), compare=False, repr=False)
    int_rays: tuple = field(default=(), compare=False, repr=False)
    int_lineality: tuple = field(default=(), compare=False, repr=False)
    int_inequalities: tuple = field(default=(), compare=False, repr=False)

    def contains(self, x) -> bool:
        return all(exact.dot(a, x) >= b for a, b in self.inequalities)

    def contains_hom(self, r, t: int) -> bool:
        """Whether ``r / t`` lies in the polyhedron (``t > 0``), or, for ``t = 0``,
        whether ``r`` is a recession direction."""
        return all(_idot(a, r) >= b * t for a, b in self.int_inequalities)

    def contains_line(self, l) -> bool:
        return all(_idot(a, l) == 0 for a, _ in self.int_inequalities)

    def min_of(self, a) -> Optional[Fraction]:
        """``min <a, x>`` over the polyhedron; None if unbounded below."""
        if self.empty:
            raise InputError("empty polyhedron")
        ai, _ = _int_halfspace(a, 0)
        if any(_idot(ai, r) < 0 for r in self.int_rays) or any(
                _idot(ai, l) != 0 for l in self.int_lineality):
            return None
        bp, bt = None, 1
        for r, t in self.hom_vertices:
            p = _idot(ai, r)
            if bp is None or p * bt < bp * t:
                bp, bt = p, t
        scale = _denominator_lcm(a)
        return Fraction(bp, bt * scale)


def _denominator_lcm(v) -> int:
    d = 1
    for x in v:
        d = lcm(d, Fraction(x).denominator)
    return d


def _int_halfspace(a, b) -> tuple:
    """``(a, b)`` scaled by a positive integer to integer coefficients."""
    d = lcm(_denominator_lcm(a), Fraction(b).denominator)
    return (tuple(int(Fraction(x) * d) for x in a), int(Fraction(b) * d))


def poly_generators(dim: int, halfspaces: Sequence, max_rows=None) -> PolyhedronRep:
    """Vertices and rays of ``{x : <a, x> >= b}`` via homogenization.

    The polyhedron is lifted to the cone ``{(x, t) : <a, x> - b t >= 0, t >= 0}``
    whose rays with ``t > 0`` give vertices and with ``t = 0`` recession rays.
    """
    # t >= 0 goes first; it keeps the intermediate ray sets small
    rows = [(0,) * dim + (1,)]
    hs, ihs = [], []
    for a, b in halfspaces:
        if len(a) != dim:
            raise InputError(f"expected normals of length {dim}, got {len(a)}")
        a = exact.vec(a)
        b = exact.Q(b)
        hs.append((a, b))
        ai, bi = _int_halfspace(a, b)
        ihs.append((ai, bi))
        rows.append(_iprim(ai + (-bi,)))
    rays, _ = double_description(dim + 1, rows, max_rows)
    lin = exact.nullspace([tuple(Fraction(x) for x in r) for r in rows])
    lin = tuple(l[:-1] for l in lin)
    int_lin = tuple(exact.primitive(l) for l in lin)
    hom, recs = [], []
    for r in rays:
        # project off the lineality so that generators are unique
        if lin:
            r = exact.primitive(_project_out(r, [l + (Fraction(0),) for l in lin]))
        t = r[-1]
        if t > 0:
            hom.append((r[:-1], t))
        elif any(r[:-1]):
            recs.append(r[:-1])
    hom = sorted(set(hom), key=lambda p: tuple(Fraction(x, p[1]) for x in p[0]), reverse=True)
    recs = sorted(set(recs), reverse=True)
    if not hom:
        return PolyhedronRep(dim, (), (), (), tuple(hs), True, (), (), (), tuple(ihs))
    verts = tuple(tuple(Fraction(x, t) for x in r) for r, t in hom)
    return PolyhedronRep(dim, verts, tuple(exact.vec(r) for r in recs), lin, tuple(hs), False,
                         tuple(hom), tuple(recs), int_lin, tuple(ihs))


# -- JSON documents -------------------------------------------------------------

def cone_from_doc(doc: dict, max_rows=None) -> ConeRep:
    """Parse ``{"dim": n, "generators": [...], "inequalities": [...]}``.

    When both lists are given, the generators define the cone and the
    inequalities must agree with them.
    """
    if not isinstance(doc, dict) or "dim" not in doc:
        raise InputError("cone document needs a 'dim' field")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InputError("'dim' must be a positive integer")
    gens = doc.get("generators")
    ineqs = doc.get("inequalities")
    if gens is None and ineqs is None:
        raise InputError("cone document needs 'generators' or 'inequalities'")
    if gens is not None:
        c = from_generators(dim, [exact.vec(g) for g in gens], max_rows)
        if ineqs is not None:
            other = from_inequalities(dim, [exact.vec(a) for a in ineqs], max_rows)
            if other != c:
                raise InputError("generators and inequalities describe different cones")
        return c
    return from_inequalities(dim, [exact.vec(a) for a in ineqs], max_rows)


def cone_to_doc(c: ConeRep) -> dict:
    return {
        "dim": c.dim,
        "generators": exact.fmt_mat(c.generators),
        "inequalities": exact.fmt_mat(c.inequalities),
    }


def check_report(c: ConeRep) -> dict:
    wit = facet_witnesses(c)
    irredundant = all(
        w is not None and sum(exact.dot(g, w) < 0 for g in c.facets) == 1
        and exact.dot(f, w) < 0
        for f, w in zip(c.facets, wit))
    gens_irredundant = all(is_extremal_ray(c, r) for r in c.rays) if c.is_pointed else None
    return {
        "dim": c.dim,
        "pointed": c.is_pointed,
        "full_dimensional": c.is_full_dimensional,
        "num_rays": len(c.rays),
        "num_facets": len(c.facets),
        "lineality": exact.fmt_mat(c.lineality),
        "equations": exact.fmt_mat(c.equations),
        "facets_irredundant": irredundant,
        "rays_irredundant": gens_irredundant,
    }
