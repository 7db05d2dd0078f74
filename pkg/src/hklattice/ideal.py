"""The degree-graded kernel ideal generated by isotropic divisor powers.

For a 2n-dimensional hyperkahler variety, the kernel of the evaluation of
divisor polynomials in cohomology is generated in degree n+1 by the powers
alpha^(n+1) of isotropic classes (Verbitsky / Bogomolov description of the
subring generated by H^2).  This module materializes the degree-k piece

    I_k = span{ alpha^(n+1) * m : q(alpha) = 0, m a monomial of degree k-n-1 }

over Q by sampling rational boundary classes and row-reducing exactly until
the span stabilizes.

Stabilization target.  The quotient Sym^k / I_k is the degree-k piece of
the image subring, whose dimension equals dim Sym^(2n-k) for n <= k <= 2n
(and 0 above 2n); so the target is

    dim I_k = dim Sym^k(r) - dim Sym^(2n-k)(r).

At rank 2 this is independently checkable by hand: the quadric has exactly
two isotropic rays, and the products of their (n+1)-st powers with
monomials span I_k; the test suite verifies the sampled basis equals that
span exactly.  Membership in I_(n+1) is the lattice-level test for
cohomological triviality of a divisor polynomial: an interior class h has
h^(2n) nonzero in the quotient (its top self-intersection is a positive
multiple of q(h)^n), hence h^(n+1) must always escape the ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cones import sample_boundary_stream
from .divpoly import (DivisorPolynomial, linear_power, monomials_of_degree,
                      poly_to_row, sym_dimension)
from .errors import InputError
from .lattice import Lattice, Vector, scale_vector, vec
from .linalg import IncrementalSpan
from .isotropy import find_isotropic_vector, is_isotropic
from .scalars import GaussianRational


def isotropic_power(lat: Lattice, alpha: Vector, n: int) -> DivisorPolynomial:
    """(sum alpha_j Lj)^(n+1) for an isotropic class alpha."""
    if n < 1:
        raise InputError("parameter", "n must be >= 1")
    if len(alpha) != lat.rank:
        raise InputError("shape", f"vector length {len(alpha)} != rank {lat.rank}")
    if lat.quadratic(alpha) != 0:
        raise InputError("not isotropic", f"q(alpha) = {lat.quadratic(alpha)} != 0")
    return linear_power(alpha, n + 1)


def ideal_target_dimension(rank: int, n: int, degree: int) -> int:
    return sym_dimension(rank, degree) - sym_dimension(rank, 2 * n - degree)


@dataclass
class IdealBasis:
    """Stabilized exact basis of the degree-`degree` piece of the ideal."""

    lattice: Lattice
    n: int
    degree: int
    generators: list[DivisorPolynomial]
    target_dim: int
    samples_used: int
    monomial_index: dict = field(repr=False)
    _span: IncrementalSpan = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.generators)


def _stream_of_isotropic_classes(lat: Lattice, seed: int):
    """The witness class (oriented to the interior side) followed by sampled
    boundary classes; at rank 2 this reaches both isotropic rays.  Infinite;
    the caller enforces its sample budget."""
    witness = find_isotropic_vector(lat)
    assert witness is not None
    alpha = vec(witness.vector)
    h = lat.positive_class()
    if lat.bilinear(alpha, h) < 0:
        alpha = scale_vector(Fraction(-1), alpha)
    yield alpha
    chunk = 8
    produced = 0
    while True:
        for gamma in sample_boundary_stream(lat, alpha, h, chunk, seed + produced):
            yield gamma
        produced += chunk


def ideal_basis(lat: Lattice, n: int, degree: int, seed: int = 0) -> IdealBasis:
    """Exact basis of I_degree, built by sampling until the span stabilizes.

    Requires an isotropic hyperbolic lattice (rational sample points must
    exist), n >= 1, and degree >= n+1.  For degree > 2n the ideal is the
    whole space and the monomial basis is returned directly.
    """
    if n < 1:
        raise InputError("parameter", "n must be >= 1")
    if degree < n + 1:
        raise InputError("degree", f"degree {degree} is below n+1 = {n + 1}")
    if not lat.is_hyperbolic():
        raise InputError("signature",
                         f"expected signature (1, {lat.rank - 1}), got {tuple(lat.signature())}")
    monomials = monomials_of_degree(lat.rank, degree)
    index = {m: i for i, m in enumerate(monomials)}

    if degree > 2 * n:
        gens = [DivisorPolynomial.monomial(lat.rank, m) for m in monomials]
        span = IncrementalSpan(len(monomials))
        for g in gens:
            span.add(poly_to_row(g, index))
        return IdealBasis(lattice=lat, n=n, degree=degree, generators=gens,
                          target_dim=len(monomials), samples_used=0,
                          monomial_index=index, _span=span)

    if not is_isotropic(lat):
        raise InputError("no rational isotropic classes",
                         "the lattice is anisotropic over Q")

    target = ideal_target_dimension(lat.rank, n, degree)
    budget = max(64, 8 * target)
    span = IncrementalSpan(len(monomials))
    cofactors = monomials_of_degree(lat.rank, degree - n - 1)
    samples = 0
    for alpha in _stream_of_isotropic_classes(lat, seed):
        power = isotropic_power(lat, alpha, n)
        for m in cofactors:
            span.add(poly_to_row(power.mul_monomial(m), index))
        samples += 1
        if span.rank == target:
            break
        if span.rank > target:
            raise InputError("span did not stabilize",
                             f"dimension {span.rank} exceeds the target {target}; "
                             f"the stabilization oracle is wrong for this input")
        if samples >= budget:
            raise InputError("span did not stabilize",
                             f"reached dimension {span.rank} of {target} "
                             f"after {samples} samples")

    generators = []
    for row in span.rows():
        terms = {m: Fraction(c) for m, c in zip(monomials, row)}
        generators.append(DivisorPolynomial(lat.rank, terms))
    return IdealBasis(lattice=lat, n=n, degree=degree, generators=generators,
                      target_dim=target, samples_used=samples,
                      monomial_index=index, _span=span)


def contains(basis: IdealBasis, poly: DivisorPolynomial) -> bool:
    """Exact membership of a homogeneous polynomial in the spanned ideal piece."""
    if poly.nvars != basis.lattice.rank:
        raise InputError("shape", "variable count does not match the lattice rank")
    if poly.is_zero():
        return True
    if poly.degree() != basis.degree:
        raise InputError("degree",
                         f"polynomial degree {poly.degree()} != basis degree {basis.degree}")
    return basis._span.contains(poly_to_row(poly, basis.monomial_index))


def complex_closure_check(lat: Lattice, n: int, alpha: Vector, beta: Vector,
                          chi: Vector, seed: int = 0) -> bool:
    """Membership of (alpha + i beta)^(n+1) in the complexified ideal.

    The inputs must satisfy the exact relations q(alpha) = q(beta),
    (alpha, beta) = 0, -q(chi) = q(alpha) and (chi, alpha) = 0 = (chi, beta);
    then gamma = alpha + i beta is isotropic over Q(i) and the check reduces
    to two rational memberships (real and imaginary part) in I_(n+1).
    """
    relations = [
        ("q(alpha) = q(beta)", lat.quadratic(alpha) == lat.quadratic(beta)),
        ("(alpha, beta) = 0", lat.bilinear(alpha, beta) == 0),
        ("-q(chi) = q(alpha)", -lat.quadratic(chi) == lat.quadratic(alpha)),
        ("(chi, alpha) = 0", lat.bilinear(chi, alpha) == 0),
        ("(chi, beta) = 0", lat.bilinear(chi, beta) == 0),
    ]
    for name, ok in relations:
        if not ok:
            raise InputError("precondition", f"relation {name} fails")

    gamma = tuple(GaussianRational(Fraction(a), Fraction(b))
                  for a, b in zip(alpha, beta))
    q_gamma = lat.quadratic(gamma)
    assert GaussianRational.coerce(q_gamma).is_zero()

    power = linear_power(gamma, n + 1, nvars=lat.rank)
    real_terms = {}
    imag_terms = {}
    for exps, coef in power.terms.items():
        coef = GaussianRational.coerce(coef)
        real_terms[exps] = coef.re
        imag_terms[exps] = coef.im
    real_part = DivisorPolynomial(lat.rank, real_terms)
    imag_part = DivisorPolynomial(lat.rank, imag_terms)

    basis = ideal_basis(lat, n, n + 1, seed=seed)
    return contains(basis, real_part) and contains(basis, imag_part)
