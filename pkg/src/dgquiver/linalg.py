"""Sparse exact-rational linear algebra.

Vectors are dicts ``{column index: Fraction}`` holding only nonzero
entries.  Pivoting is always on the smallest column index, so every
result is deterministic given the column indexing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

SparseVec = dict[int, Fraction]


def _reduce_against(r: SparseVec, pivots: dict[int, SparseVec]) -> SparseVec:
    """Eliminate every pivot column present in r.  Mutates and returns r."""
    while r:
        c = min(r)
        pr = pivots.get(c)
        if pr is None:
            return r
        coef = r[c]
        for cc, vv in pr.items():
            nv = r.get(cc, 0) - coef * vv
            if nv:
                r[cc] = nv
            else:
                r.pop(cc, None)
    return r


def _forward_eliminate(rows: Iterable[SparseVec]) -> dict[int, SparseVec]:
    """Echelon pivots {pivot column: row with pivot entry 1}."""
    pivots: dict[int, SparseVec] = {}
    for row in rows:
        r = _reduce_against(dict(row), pivots)
        if r:
            c = min(r)
            inv = Fraction(1) / r[c]
            pivots[c] = {cc: vv * inv for cc, vv in r.items()}
    return pivots


def rank(rows: Iterable[SparseVec]) -> int:
    return len(_forward_eliminate(rows))


def row_reduce(rows: Iterable[SparseVec]) -> list[SparseVec]:
    """Reduced row echelon basis of the row space, sorted by pivot column."""
    pivots = _forward_eliminate(rows)
    for c in sorted(pivots, reverse=True):
        pr = pivots[c]
        for c2, r2 in pivots.items():
            if c2 >= c or c not in r2:
                continue
            coef = r2[c]
            for cc, vv in pr.items():
                nv = r2.get(cc, 0) - coef * vv
                if nv:
                    r2[cc] = nv
                else:
                    r2.pop(cc, None)
    return [pivots[c] for c in sorted(pivots)]


def intersect_rowspaces(u_rows: list[SparseVec], w_rows: list[SparseVec], ncols: int) -> list[SparseVec]:
    """RREF basis of (row space of u_rows) ∩ (row space of w_rows).

    Zassenhaus: reduce rows (u | u) and (w | 0); echelon rows supported
    entirely in the right block give the intersection.
    """
    stacked: list[SparseVec] = []
    for u in u_rows:
        r = dict(u)
        r.update({c + ncols: v for c, v in u.items()})
        stacked.append(r)
    stacked.extend(dict(w) for w in w_rows)
    pivots = _forward_eliminate(stacked)
    inter = [
        {c - ncols: v for c, v in row.items()}
        for piv, row in pivots.items()
        if piv >= ncols
    ]
    return row_reduce(inter)


def solve_in_span(vectors: list[SparseVec], target: SparseVec) -> list[Fraction] | None:
    """Coefficients x with sum(x_i * vectors[i]) == target, or None.

    When the vectors are dependent an arbitrary valid solution is returned.
    """
    pivots: dict[int, SparseVec] = {}
    combos: dict[int, SparseVec] = {}  # pivot col -> combination over vector indices
    for i, vec in enumerate(vectors):
        r = dict(vec)
        comb: SparseVec = {i: Fraction(1)}
        while r:
            c = min(r)
            if c not in pivots:
                inv = Fraction(1) / r[c]
                pivots[c] = {cc: vv * inv for cc, vv in r.items()}
                combos[c] = {cc: vv * inv for cc, vv in comb.items()}
                break
            coef = r[c]
            for cc, vv in pivots[c].items():
                nv = r.get(cc, 0) - coef * vv
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
            for cc, vv in combos[c].items():
                nv = comb.get(cc, 0) - coef * vv
                if nv:
                    comb[cc] = nv
                else:
                    comb.pop(cc, None)
    r = dict(target)
    sol: SparseVec = {}
    while r:
        c = min(r)
        if c not in pivots:
            return None
        coef = r[c]
        for cc, vv in pivots[c].items():
            nv = r.get(cc, 0) - coef * vv
            if nv:
                r[cc] = nv
            else:
                r.pop(cc, None)
        for cc, vv in combos[c].items():
            sol[cc] = sol.get(cc, Fraction(0)) + coef * vv
    return [sol.get(i, Fraction(0)) for i in range(len(vectors))]
