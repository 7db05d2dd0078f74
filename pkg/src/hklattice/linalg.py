"""Exact linear algebra over Q: primitive-integer RREF spans.

Rows are kept in a canonical form (integer entries, content 1, positive
pivot) so that a span has one unique reduced basis regardless of the order
in which generators arrived.  That makes span equality a plain list
comparison and keeps coefficient growth under control.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def normalize_row(row):
    """Scale a rational row to primitive integers with a positive pivot."""
    row = [Fraction(x) for x in row]
    lcm = 1
    for x in row:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(ints)
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        g = -g
    return tuple(v // g for v in ints)


class IncrementalSpan:
    """A growing row space with full reduced echelon maintenance.

    ``add`` reduces the incoming row against the current pivots, and on
    success eliminates the new pivot column from every stored row, so
    ``rows()`` is always the unique primitive-integer RREF of the span.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: list[tuple[int, ...]] = []   # sorted by pivot column
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, row) -> tuple:
        """Residue of a row modulo the current span (canonical form)."""
        if len(row) != self.ncols:
            raise ValueError(f"row length {len(row)} != {self.ncols}")
        work = [Fraction(x) for x in row]
        for piv, r in zip(self._pivots, self._rows):
            if work[piv] != 0:
                f = work[piv] / r[piv]
                for j in range(piv, self.ncols):
                    work[j] -= f * r[j]
        return normalize_row(work)

    def contains(self, row) -> bool:
        return all(v == 0 for v in self.reduce(row))

    def add(self, row) -> bool:
        """Insert a row; returns True iff it enlarged the span."""
        residue = self.reduce(row)
        if all(v == 0 for v in residue):
            return False
        piv = next(j for j, v in enumerate(residue) if v != 0)
        # eliminate the new pivot column from existing rows
        updated = []
        for r in self._rows:
            if r[piv] != 0:
                f = Fraction(r[piv], residue[piv])
                r = normalize_row([Fraction(a) - f * b for a, b in zip(r, residue)])
            updated.append(r)
        self._rows = updated
        idx = 0
        while idx < len(self._pivots) and self._pivots[idx] < piv:
            idx += 1
        self._rows.insert(idx, residue)
        self._pivots.insert(idx, piv)
        return True

    def rows(self) -> list[tuple[int, ...]]:
        return list(self._rows)


def span_of(rows, ncols: int) -> IncrementalSpan:
    span = IncrementalSpan(ncols)
    for row in rows:
        span.add(row)
    return span


def spans_equal(rows_a, rows_b, ncols: int) -> bool:
    return span_of(rows_a, ncols).rows() == span_of(rows_b, ncols).rows()
