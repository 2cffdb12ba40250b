"""Exact rational vectors and matrices.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of row tuples.  Nothing here ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Tuple

from .errors import InputError

Rational = Fraction
RatVector = Tuple[Fraction, ...]
RatMatrix = Tuple[RatVector, ...]


def Q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: the core never carries inexact numbers.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r}")


def vec(entries: Iterable) -> RatVector:
    v = tuple(Q(e) for e in entries)
    if not v:
        raise InputError("vectors must have dimension >= 1")
    return v


def mat(rows: Iterable[Iterable]) -> RatMatrix:
    m = tuple(tuple(Q(e) for e in row) for row in rows)
    if m and len({len(r) for r in m}) != 1:
        raise InputError("ragged matrix")
    return m


def fmt(q: Fraction) -> str:
    """Canonical string form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    q = Q(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_vec(v: Sequence) -> list:
    return [fmt(x) for x in v]


def fmt_mat(m: Sequence[Sequence]) -> list:
    return [fmt_vec(r) for r in m]


def zeros(n: int) -> RatVector:
    return (Fraction(0),) * n


def identity(n: int) -> RatMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise InputError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> RatVector:
    if len(a) != len(b):
        raise InputError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(Q(x) + Q(y) for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> RatVector:
    if len(a) != len(b):
        raise InputError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(Q(x) - Q(y) for x, y in zip(a, b))


def scale(c, a: Sequence) -> RatVector:
    c = Q(c)
    return tuple(c * Q(x) for x in a)


def neg(a: Sequence) -> RatVector:
    return tuple(-Q(x) for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def matvec(m: Sequence[Sequence], v: Sequence) -> RatVector:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence]) -> RatMatrix:
    return tuple(zip(*m)) if m else ()


def primitive(v: Sequence) -> Tuple[int, ...]:
    """Scale ``v`` to coprime integers, keeping its direction (sign kept)."""
    v = [Q(x) for x in v]
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def canonical(v: Sequence) -> RatVector:
    """Primitive integer representative with first nonzero entry positive."""
    p = primitive(v)
    for x in p:
        if x != 0:
            if x < 0:
                p = tuple(-y for y in p)
            break
    return tuple(Fraction(x) for x in p)


def rref(m: Sequence[Sequence]) -> Tuple[list, list]:
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    rows = [[Q(x) for x in r] for r in m]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: Optional[int] = None) -> list:
    """Canonical basis of ``{v : m v = 0}``.

    ``ncols`` is required when ``m`` has no rows (the kernel is then the whole
    space).
    """
    if not m:
        if ncols is None:
            raise InputError("ncols required for an empty matrix")
        return [canonical(tuple(Fraction(int(i == j)) for i in range(ncols)))
                for j in range(ncols)]
    ncols = len(m[0])
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(canonical(v))
    return basis


def solve(m: Sequence[Sequence], b: Sequence) -> Optional[Tuple[RatVector, list]]:
    """Solve ``m x = b``.

    Returns ``(particular, homogeneous_basis)`` or ``None`` when the system is
    inconsistent.  The particular solution sets all free variables to zero.
    """
    if len(b) != len(m):
        raise InputError(f"right-hand side has {len(b)} entries, matrix has {len(m)} rows")
    if not m:
        raise InputError("empty system")
    ncols = len(m[0])
    aug = [list(r) + [Q(x)] for r, x in zip(m, b)]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[-1]
    return tuple(x), nullspace(m)


def in_span(vs: Sequence[Sequence], t: Sequence) -> Optional[RatVector]:
    """Coefficients ``c`` with ``sum c_i vs_i == t``, or None."""
    if not vs:
        return () if is_zero(t) else None
    n = len(t)
    if any(len(v) != n for v in vs):
        raise InputError("dimension mismatch in span test")
    cols = transpose(vs)
    res = solve(cols, t)
    return None if res is None else res[0]


def same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    """True iff the two vector lists span the same subspace."""
    return all(in_span(a, v) is not None for v in b) and all(
        in_span(b, v) is not None for v in a)


class IntEchelon:
    """Incremental fraction-free row echelon basis over the integers.

    Used by the exponential support searches, where rows are added and the
    structure is copied at each branch; keeping integers avoids Fraction
    overhead in the hot loop.
    """

    __slots__ = ("rows",)

    def __init__(self, rows=()):
        self.rows = list(rows)  # (pivot_col, int row) pairs

    def copy(self) -> "IntEchelon":
        return IntEchelon(self.rows)

    def __len__(self):
        return len(self.rows)

    def reduce(self, row: Sequence[int]) -> list:
        r = list(row)
        for pc, b in self.rows:
            if r[pc]:
                f, p = r[pc], b[pc]
                r = [x * p - y * f for x, y in zip(r, b)]
        return r

    def add(self, row: Sequence[int]) -> bool:
        """Insert ``row``; return False if it was already in the span."""
        r = self.reduce(row)
        pc = next((i for i, x in enumerate(r) if x), None)
        if pc is None:
            return False
        g = 0
        for x in r:
            g = gcd(g, x)
        self.rows.append((pc, [x // g for x in r]))
        return True

    def contains(self, row: Sequence[int]) -> bool:
        return not any(self.reduce(row))
