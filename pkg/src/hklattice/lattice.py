"""Integral and rational lattices with an exact quadratic form.

Conventions
-----------
A lattice is a symmetric nondegenerate Gram matrix ``G`` over Q.  The
quadratic form and pairing are

    q(v) = v^T G v          (v, w) = v^T G w

so an even lattice has even diagonal.  All arithmetic is exact rational;
floating point is never used, because downstream decisions hinge on exact
identities such as q(v) = 0.

Signatures are computed by symmetric (Lagrange) diagonalization over Q:
congruence transformations only, so the inertia counts are basis
independent.  The same diagonalization is reused by the isotropy search and
by the cone module, and gives the determinant for free (the accumulated
transform has determinant +-1).

File format
-----------
A lattice descriptor is JSON ``{"label": str, "rank": int, "gram": [[...]]}``
with entries serialized as "p/q" or integer strings; round trips are
bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import NamedTuple, Optional, Sequence

from .errors import InputError
from .scalars import QuadExt, format_rational, parse_rational


class Signature(NamedTuple):
    positive: int
    negative: int
    zero: int


Vector = tuple  # length-rank tuple of Fraction (or QuadExt) entries


def vec(entries: Sequence) -> Vector:
    """Coerce a sequence of ints / "p/q" strings / Fractions to a vector."""
    return tuple(parse_rational(x) if not isinstance(x, QuadExt) else x for x in entries)


def zero_vector(rank: int) -> Vector:
    return tuple(Fraction(0) for _ in range(rank))


def is_zero_vector(v: Vector) -> bool:
    return all(not x if isinstance(x, QuadExt) else x == 0 for x in v)


def scale_vector(c, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def add_vectors(v: Vector, w: Vector) -> Vector:
    return tuple(a + b for a, b in zip(v, w))


def sub_vectors(v: Vector, w: Vector) -> Vector:
    return tuple(a - b for a, b in zip(v, w))


def primitive_in_direction(v: Vector) -> tuple[int, ...]:
    """The primitive integer vector on the same half-ray as v (no sign flip)."""
    fracs = [Fraction(x) for x in v]
    lcm = reduce(lambda acc, x: acc * x.denominator // gcd(acc, x.denominator), fracs, 1)
    ints = [int(x * lcm) for x in fracs]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        raise InputError("precondition", "zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def primitive_integer_vector(v: Vector) -> tuple[int, ...]:
    """The primitive integer vector on the ray of v, first nonzero entry > 0."""
    ints = primitive_in_direction(v)
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        return tuple(-x for x in ints)
    return ints


def vectors_collinear(v: Vector, w: Vector) -> bool:
    """True iff v and w are proportional (either may be zero)."""
    n = len(v)
    for i in range(n):
        for j in range(i + 1, n):
            if v[i] * w[j] != v[j] * w[i]:
                return False
    return True


def _symmetric_diagonalize(gram):
    """Congruence-diagonalize a symmetric rational matrix.

    Returns (diag, transform) with transform^T * gram * transform diagonal;
    the transform is a product of column swaps and shears, so its
    determinant is +-1 and det(gram) equals the product of diag entries.
    """
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    t = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if g[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                         if g[i][j] != 0), None)
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            for r in range(n):
                g[r][i] += g[r][j]
            for c in range(n):
                g[i][c] += g[j][c]
            for r in range(n):
                t[r][i] += t[r][j]
            piv = i
        if piv != k:
            for r in range(n):
                g[r][piv], g[r][k] = g[r][k], g[r][piv]
            g[piv], g[k] = g[k], g[piv]
            for r in range(n):
                t[r][piv], t[r][k] = t[r][k], t[r][piv]
        for j in range(k + 1, n):
            if g[k][j] != 0:
                f = g[k][j] / g[k][k]
                for r in range(n):
                    g[r][j] -= f * g[r][k]
                for c in range(n):
                    g[j][c] -= f * g[k][c]
                for r in range(n):
                    t[r][j] -= f * t[r][k]
    diag = tuple(g[i][i] for i in range(n))
    transform = tuple(tuple(row) for row in t)
    return diag, transform


@dataclass(frozen=True)
class Lattice:
    """Immutable rank-r lattice with exact rational Gram matrix."""

    rank: int
    gram: tuple
    label: Optional[str] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @staticmethod
    def from_rows(rows: Sequence[Sequence], label: Optional[str] = None) -> "Lattice":
        n = len(rows)
        if n == 0:
            raise InputError("shape", "empty Gram matrix")
        gram = tuple(tuple(parse_rational(x) for x in row) for row in rows)
        if any(len(row) != n for row in gram):
            raise InputError("shape", "Gram matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise InputError("shape", f"Gram matrix not symmetric at ({i},{j})")
        lat = Lattice(rank=n, gram=gram, label=label)
        if lat.determinant() == 0:
            raise InputError("degenerate", "Gram matrix has determinant 0")
        return lat

    @staticmethod
    def diagonal(entries: Sequence, label: Optional[str] = None) -> "Lattice":
        values = [parse_rational(x) for x in entries]
        n = len(values)
        rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return Lattice.from_rows(rows, label=label)

    # -- evaluation ---------------------------------------------------------

    def _check_len(self, v: Vector):
        if len(v) != self.rank:
            raise InputError("shape", f"vector length {len(v)} != rank {self.rank}")

    def bilinear(self, v: Vector, w: Vector):
        """(v, w) = v^T G w; symmetric, exact."""
        self._check_len(v)
        self._check_len(w)
        total = None
        for i in range(self.rank):
            if isinstance(v[i], QuadExt) or v[i] != 0:
                row = self.gram[i]
                partial = None
                for j in range(self.rank):
                    if isinstance(w[j], QuadExt) or w[j] != 0:
                        term = row[j] * w[j]
                        partial = term if partial is None else partial + term
                if partial is not None:
                    term = v[i] * partial
                    total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def quadratic(self, v: Vector):
        """q(v) = v^T G v."""
        return self.bilinear(v, v)

    def diagonalization(self):
        """Cached (diag, transform) with transform^T G transform = diag(diag)."""
        if "diag" not in self._cache:
            self._cache["diag"] = _symmetric_diagonalize(self.gram)
        return self._cache["diag"]

    def determinant(self) -> Fraction:
        diag, _ = self.diagonalization()
        det = Fraction(1)
        for x in diag:
            det *= x
        return det

    def signature(self) -> Signature:
        diag, _ = self.diagonalization()
        pos = sum(1 for x in diag if x > 0)
        neg = sum(1 for x in diag if x < 0)
        return Signature(pos, neg, self.rank - pos - neg)

    def is_hyperbolic(self) -> bool:
        """Signature (1, rank-1): the shape of a Neron-Severi lattice."""
        return self.signature() == Signature(1, self.rank - 1, 0)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram for x in row)

    def is_even(self) -> bool:
        return self.is_integral() and all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def positive_class(self) -> Vector:
        """Some rational v with q(v) > 0 (requires a positive diagonal entry)."""
        diag, transform = self.diagonalization()
        for i, x in enumerate(diag):
            if x > 0:
                return tuple(transform[r][i] for r in range(self.rank))
        raise InputError("signature", "lattice has no positive direction")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "rank": self.rank,
            "gram": [[format_rational(x) for x in row] for row in self.gram],
        }

    @staticmethod
    def from_json(obj: dict) -> "Lattice":
        if "gram" not in obj:
            raise InputError("shape", "lattice JSON lacks 'gram'")
        lat = Lattice.from_rows(obj["gram"], label=obj.get("label"))
        if "rank" in obj and int(obj["rank"]) != lat.rank:
            raise InputError("shape", f"declared rank {obj['rank']} != gram size {lat.rank}")
        return lat

    def __repr__(self):
        name = self.label or "Lattice"
        return f"<{name} rank={self.rank} signature={tuple(self.signature())}>"


# -- catalog of standard full second-cohomology lattices ---------------------

_U_ROWS = ((0, 1), (1, 0))

# E8 root lattice: tree with a trivalent node and legs of lengths 1, 2, 4.
_E8_EDGES = ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7))


def _e8_rows(sign: int):
    rows = [[0] * 8 for _ in range(8)]
    for i in range(8):
        rows[i][i] = 2 * sign
    for i, j in _E8_EDGES:
        rows[i][j] = -sign
        rows[j][i] = -sign
    return rows


def _direct_sum(blocks):
    size = sum(len(b) for b in blocks)
    rows = [[Fraction(0)] * size for _ in range(size)]
    offset = 0
    for block in blocks:
        m = len(block)
        for i in range(m):
            for j in range(m):
                rows[offset + i][offset + j] = Fraction(block[i][j])
        offset += m
    return rows


def hyperbolic_plane() -> Lattice:
    return Lattice.from_rows(_U_ROWS, label="U")


def e8_lattice(sign: int = -1) -> Lattice:
    if sign not in (1, -1):
        raise InputError("parameter", "sign must be +1 or -1")
    return Lattice.from_rows(_e8_rows(sign), label="E8" if sign == 1 else "E8(-1)")


def builtin_lattice(family: str, n: Optional[int] = None) -> Lattice:
    """Catalog of full H^2 lattices for the standard deformation families.

    K3_full          U^3 + E8(-1)^2                    rank 22, sig (3,19)
    K3_hilb_full(n)  U^3 + E8(-1)^2 + <-2(n-1)>        rank 23, sig (3,20)
    Kummer_full(n)   U^3 + <-2(n+1)>                   rank 7,  sig (3,4)

    The parametrized families require n >= 2.
    """
    u = _U_ROWS
    e8m = _e8_rows(-1)
    if family == "K3_full":
        rows = _direct_sum([u, u, u, e8m, e8m])
        return Lattice.from_rows(rows, label="K3_full")
    if family == "K3_hilb_full":
        if n is None or n < 2:
            raise InputError("parameter", f"K3_hilb_full requires n >= 2, got {n}")
        rows = _direct_sum([u, u, u, e8m, e8m, [[-2 * (n - 1)]]])
        return Lattice.from_rows(rows, label=f"K3_hilb_full({n})")
    if family == "Kummer_full":
        if n is None or n < 2:
            raise InputError("parameter", f"Kummer_full requires n >= 2, got {n}")
        rows = _direct_sum([u, u, u, [[-2 * (n + 1)]]])
        return Lattice.from_rows(rows, label=f"Kummer_full({n})")
    raise InputError("parameter", f"unknown lattice family {family!r}")
