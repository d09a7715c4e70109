"""Exact incremental row reduction over Q.

Rows are sparse dicts mapping orderable column keys to nonzero Fractions.
RowSpace keeps a reduced echelon set of pivot rows; pivot columns are chosen
as the maximal key, so results are deterministic for tuple-keyed columns.
"""

from __future__ import annotations

from fractions import Fraction


class RowSpace:
    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots = {}  # pivot column -> normalized reduced row

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        """Residual of row modulo the current row space (row is not consumed)."""
        res = dict(row)
        # eliminate in descending column order so each pivot is hit once
        while True:
            hit = None
            for col in res:
                if col in self.pivots:
                    if hit is None or col > hit:
                        hit = col
            if hit is None:
                return res
            c = res[hit]
            for pc, pv in self.pivots[hit].items():
                s = res.get(pc, Fraction(0)) - c * pv
                if s:
                    res[pc] = s
                else:
                    res.pop(pc, None)

    def add(self, row):
        """Insert a row; returns True if the rank grew."""
        res = self.reduce(row)
        if not res:
            return False
        col = max(res)
        inv = Fraction(1) / res[col]
        newrow = {c: v * inv for c, v in res.items()}
        # keep existing pivot rows reduced against the new one
        for pc, prow in self.pivots.items():
            c = prow.get(col)
            if c:
                for nc, nv in newrow.items():
                    s = prow.get(nc, Fraction(0)) - c * nv
                    if s:
                        prow[nc] = s
                    else:
                        prow.pop(nc, None)
        self.pivots[col] = newrow
        return True

    def contains(self, row):
        return not self.reduce(row)

    def basis_rows(self):
        """Pivot rows in descending pivot-column order (reduced echelon form)."""
        return [dict(self.pivots[c]) for c in sorted(self.pivots, reverse=True)]


def rank_of(rows):
    space = RowSpace()
    for r in rows:
        space.add(r)
    return space.rank
