"""Search for splits of a functional family into two rank-deficient halves.

Given functionals ``rows`` on a space of dimension ``dim``, a *split* is a
partition ``(A, B)`` of the row indices with ``rank(A) < dim`` and
``rank(B) < dim``.  A nonzero ``z1`` vanishing on ``A`` and a nonzero ``z2``
vanishing on ``B`` then have disjoint supports, and every pair with disjoint
supports arises this way.  Splits therefore witness disjoint pairs and
enumerate the candidate zero sets of bands.

The search is a depth-first assignment of rows to sides with two prunings:
a side that reaches full rank is abandoned, and a row already in the span of
side ``A`` is placed there without branching (moving it to ``A`` never
destroys a split).  Row 0 is pinned to ``A`` since ``(A, B)`` and ``(B, A)``
describe the same pair.
"""
from __future__ import annotations

from typing import Iterator, Optional, Sequence, Tuple

from . import exact
from .errors import CapExceeded

DEFAULT_MAX_SUBSETS = 1 << 20


def iter_splits(rows: Sequence[Sequence], dim: int,
                max_nodes: Optional[int] = None) -> Iterator[Tuple[tuple, tuple]]:
    """Yield ``(A, B)`` index tuples for every split reached by the search.

    Raises :class:`CapExceeded` once more than ``max_nodes`` search nodes have
    been visited.
    """
    cap = DEFAULT_MAX_SUBSETS if max_nodes is None else max_nodes
    ints = [exact.primitive(r) for r in rows]
    n = len(ints)
    if n == 0:
        return
    nodes = 0

    # explicit stack: (next index, side A indices, echelon A, side B indices, echelon B)
    ea = exact.IntEchelon()
    ea.add(ints[0])
    if len(ea) >= dim:
        return
    stack = [(1, (0,), ea, (), exact.IntEchelon())]
    while stack:
        k, A, ea, B, eb = stack.pop()
        nodes += 1
        if nodes > cap:
            raise CapExceeded("support split search nodes", cap)
        if k == n:
            yield A, B
            continue
        row = ints[k]
        if ea.contains(row):
            stack.append((k + 1, A + (k,), ea, B, eb))
            continue
        nb = eb.copy()
        nb.add(row)
        if len(nb) < dim:
            stack.append((k + 1, A, ea, B + (k,), nb))
        na = ea.copy()
        na.add(row)
        if len(na) < dim:
            stack.append((k + 1, A + (k,), na, B, eb))


def find_split(rows: Sequence[Sequence], dim: int,
               max_nodes: Optional[int] = None) -> Optional[Tuple[tuple, tuple]]:
    return next(iter_splits(rows, dim, max_nodes), None)


def split_witness(rows: Sequence[Sequence], dim: int, split) -> Tuple[tuple, tuple]:
    """Nonzero ``(z1, z2)`` with ``z1`` vanishing on side A and ``z2`` on side B."""
    A, B = split
    z1 = exact.nullspace([rows[i] for i in A], ncols=dim)[0]
    z2 = exact.nullspace([rows[i] for i in B], ncols=dim)[0]
    return z1, z2
