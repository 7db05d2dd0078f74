"""Sparse multivariate polynomials in divisor-basis symbols L1..Lr.

Terms are stored as {exponent tuple: coefficient}; zero coefficients are
never stored.  Coefficients are exact: Fraction by default, and any value
type with ring operations (QuadExt, GaussianRational) works the same way.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .errors import InputError
from .scalars import format_rational, parse_rational


def _is_zero_coef(c) -> bool:
    if isinstance(c, Fraction):
        return c == 0
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


class DivisorPolynomial:
    """Polynomial over Q (or an exact extension) in nvars divisor symbols."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise InputError("shape", f"exponent tuple {exps} has wrong length")
            if any(e < 0 for e in exps):
                raise InputError("domain", f"negative exponent in {exps}")
            if not _is_zero_coef(coef):
                clean[exps] = coef
        self.terms = clean

    @staticmethod
    def zero(nvars: int) -> "DivisorPolynomial":
        return DivisorPolynomial(nvars, {})

    @staticmethod
    def monomial(nvars: int, exps, coef=Fraction(1)) -> "DivisorPolynomial":
        return DivisorPolynomial(nvars, {tuple(exps): coef})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Common degree of all terms; None for the zero polynomial."""
        if not self.terms:
            return None
        degrees = {sum(e) for e in self.terms}
        if len(degrees) > 1:
            raise InputError("degree", f"polynomial is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop()

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def __add__(self, other: "DivisorPolynomial") -> "DivisorPolynomial":
        if self.nvars != other.nvars:
            raise InputError("shape", "mixed variable counts")
        out = dict(self.terms)
        for exps, coef in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coef
        return DivisorPolynomial(self.nvars, out)

    def __neg__(self):
        return DivisorPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DivisorPolynomial":
        return DivisorPolynomial(self.nvars, {e: c * coef for e, coef in self.terms.items()})

    def __mul__(self, other: "DivisorPolynomial") -> "DivisorPolynomial":
        if self.nvars != other.nvars:
            raise InputError("shape", "mixed variable counts")
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return DivisorPolynomial(self.nvars, out)

    def mul_monomial(self, exps) -> "DivisorPolynomial":
        exps = tuple(exps)
        return DivisorPolynomial(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, DivisorPolynomial)
                and self.nvars == other.nvars and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            coef = self.terms[exps]
            mono = "*".join(f"L{i + 1}^{e}" if e > 1 else f"L{i + 1}"
                            for i, e in enumerate(exps) if e)
            parts.append(f"({coef})*{mono}" if mono else f"({coef})")
        return " + ".join(parts)

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        deg = self.degree()
        return {
            "degree": deg if deg is not None else 0,
            "terms": [{"exps": list(e), "coef": format_rational(c)}
                      for e, c in sorted(self.terms.items(), reverse=True)],
        }

    @staticmethod
    def from_json(obj: dict, nvars: int) -> "DivisorPolynomial":
        terms = {}
        for item in obj.get("terms", []):
            exps = tuple(int(e) for e in item["exps"])
            coef = parse_rational(item["coef"])
            terms[exps] = terms.get(exps, Fraction(0)) + coef
        poly = DivisorPolynomial(nvars, terms)
        if "degree" in obj and not poly.is_zero() and poly.degree() != int(obj["degree"]):
            raise InputError("degree", "declared degree does not match the terms")
        return poly


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, lex-descending."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    out.sort(reverse=True)
    return out


def sym_dimension(nvars: int, degree: int) -> int:
    """dim of the degree-d part of a polynomial ring in nvars variables."""
    if degree < 0:
        return 0
    return comb(nvars - 1 + degree, degree)


def linear_power(coeffs, power: int, nvars: int | None = None) -> DivisorPolynomial:
    """(sum_j coeffs[j] * Lj) ** power via exact multinomial expansion."""
    if power < 0:
        raise InputError("domain", "negative power")
    nvars = len(coeffs) if nvars is None else nvars
    support = [(i, c) for i, c in enumerate(coeffs) if not _is_zero_coef(c)]
    terms: dict = {}
    if power == 0:
        return DivisorPolynomial(nvars, {tuple([0] * nvars): Fraction(1)})
    for combo in combinations_with_replacement(range(len(support)), power):
        exps = [0] * nvars
        counts = [0] * len(support)
        for k in combo:
            exps[support[k][0]] += 1
            counts[k] += 1
        coef = 1
        remaining = power
        for cnt in counts:
            if cnt:
                coef *= comb(remaining, cnt)
                remaining -= cnt
        value = Fraction(coef)
        for (_, c), cnt in zip(support, counts):
            value = value * c ** cnt
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + value
    return DivisorPolynomial(nvars, terms)


def poly_to_row(poly: DivisorPolynomial, index: dict[tuple[int, ...], int]):
    row = [Fraction(0)] * len(index)
    for exps, coef in poly.terms.items():
        row[index[exps]] = coef
    return row
