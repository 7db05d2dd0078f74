"""Positive-cone geometry for a hyperbolic lattice.

For a lattice of signature (1, rank-1) the set {q > 0} has two connected
components; the component containing a fixed reference class h plays the
role of the positive cone.  Membership questions for a class v reduce to
the exact signs of q(v) and (v, h).

Boundary sampling realizes density of rational boundary classes as a
seeded pseudo-random stream: from one rational isotropic class alpha and a
random interior class beta', the combination

    gamma = 2 (alpha, beta') beta' - q(beta') alpha

is again isotropic, never collinear with alpha, and lies in the closure of
the h-component.  Consumers that conceptually need a dense set (span
stabilization in the ideal module) only need enough distinct directions,
which the stream provides; no limiting process is performed.

``boundary_ray`` solves q((1-r) H + r L) = 0 exactly; roots generically
live in a real quadratic field and are returned as QuadExt values together
with the corresponding (QuadExt-coordinate) boundary classes.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import InputError, InternalError
from .lattice import (Lattice, Vector, is_zero_vector,
                      primitive_in_direction, primitive_integer_vector,
                      scale_vector, sub_vectors, vec, vectors_collinear)
from .scalars import QuadExt, rational_sqrt


class ConeClassification(enum.Enum):
    POSITIVE_INTERIOR = "positive_interior"
    BOUNDARY = "boundary"
    NEGATIVE = "negative"
    OPPOSITE_COMPONENT = "opposite_component"


def _check_reference(lat: Lattice, h: Vector):
    if not lat.is_hyperbolic():
        raise InputError("signature",
                         f"expected signature (1, {lat.rank - 1}), got {tuple(lat.signature())}")
    if lat.quadratic(h) <= 0:
        raise InputError("reference class not positive", "q(h) must be > 0")


def classify(lat: Lattice, h: Vector, v: Vector) -> ConeClassification:
    """Locate v relative to the positive-cone component of h.

    The label depends only on the signs of q(v) and (v, h).  Under the
    signature precondition, q(v) > 0 forces (v, h) != 0, so the four labels
    are exhaustive and exclusive.
    """
    _check_reference(lat, h)
    qv = lat.quadratic(v)
    pairing = lat.bilinear(v, h)
    if qv > 0:
        if pairing > 0:
            return ConeClassification.POSITIVE_INTERIOR
        if pairing < 0:
            return ConeClassification.OPPOSITE_COMPONENT
        raise InternalError("signature violation",
                            "q(v) > 0 with (v, h) = 0 cannot happen in signature (1, n)")
    if qv == 0:
        return ConeClassification.BOUNDARY
    return ConeClassification.NEGATIVE


def boundary_side(lat: Lattice, h: Vector, v: Vector) -> int:
    """Sign of (v, h); for boundary classes, >= 0 means the h-side boundary."""
    pairing = lat.bilinear(v, h)
    return 0 if pairing == 0 else (1 if pairing > 0 else -1)


def sample_boundary(lat: Lattice, alpha: Vector, beta_prime: Vector) -> Vector:
    """gamma = 2 (alpha, beta') beta' - q(beta') alpha, exactly isotropic.

    Requires q(alpha) = 0 with alpha nonzero and q(beta') > 0; the output is
    isotropic and never collinear with alpha.
    """
    if is_zero_vector(alpha):
        raise InputError("precondition", "alpha must be nonzero")
    if lat.quadratic(alpha) != 0:
        raise InputError("precondition", "q(alpha) = 0 is required")
    q_beta = lat.quadratic(beta_prime)
    if q_beta <= 0:
        raise InputError("precondition", "q(betaPrime) > 0 is required")
    pairing = lat.bilinear(alpha, beta_prime)
    gamma = sub_vectors(scale_vector(2 * pairing, beta_prime),
                        scale_vector(q_beta, alpha))
    assert lat.quadratic(gamma) == 0
    return gamma


def _interior_samples(lat: Lattice, h: Vector, rng: random.Random) -> Iterator[Vector]:
    """Random integer classes in the interior of the h-component.

    Draws bounded random integer offsets around a (scaled) integer class on
    the ray of h and rejects failures.  On repeated rejection the scale
    along h grows faster than the offset bound, so the quadratic form is
    eventually dominated by the scaled interior part and the loop cannot
    stall, even when the positive cone meets the coordinate box at a very
    narrow angle.
    """
    base = vec(primitive_in_direction(h))
    bound = 4
    scale = 1
    misses = 0
    while True:
        offset = [rng.randint(-bound, bound) for _ in range(lat.rank)]
        candidate = tuple(scale * b + o for b, o in zip(base, offset))
        if lat.quadratic(candidate) > 0 and lat.bilinear(candidate, h) > 0:
            misses = 0
            yield candidate
        else:
            misses += 1
            if misses >= 8:
                scale *= 3
                bound *= 2
                misses = 0


def sample_boundary_stream(lat: Lattice, alpha: Vector, h: Vector,
                           count: int, seed: int) -> list[Vector]:
    """Deterministic stream of rational boundary classes in the h-component.

    Each output has q = 0 exactly, pairs positively with h, and is not
    collinear with alpha.  Distinct rays are preferred: a sample whose ray
    was already emitted is redrawn a bounded number of times before being
    accepted, so at rank 2 (where only one ray other than alpha's exists)
    the stream degenerates to that second ray rather than stalling.
    """
    if count < 1:
        raise InputError("precondition", "count must be >= 1")
    _check_reference(lat, h)
    if is_zero_vector(alpha):
        raise InputError("precondition", "alpha must be nonzero")
    if lat.quadratic(alpha) != 0:
        raise InputError("precondition", "q(alpha) = 0 is required")
    side = lat.bilinear(alpha, h)
    if side == 0:
        raise InternalError("signature violation", "isotropic alpha orthogonal to interior h")
    if side < 0:
        alpha = scale_vector(Fraction(-1), alpha)

    rng = random.Random(seed)
    interior = _interior_samples(lat, h, rng)
    seen_rays: set[tuple] = set()
    prefer_new_rays = True
    out: list[Vector] = []
    while len(out) < count:
        gamma = None
        for _ in range(12 if prefer_new_rays else 1):
            gamma = sample_boundary(lat, alpha, next(interior))
            ray = primitive_integer_vector(gamma)
            if ray not in seen_rays:
                seen_rays.add(ray)
                break
        else:
            # ray supply exhausted (rank 2 has a single ray besides alpha's):
            # stop redrawing and accept repeats from now on
            prefer_new_rays = False
        assert gamma is not None
        assert lat.bilinear(gamma, h) > 0
        assert not vectors_collinear(gamma, alpha)
        out.append(gamma)
    return out


@dataclass(frozen=True)
class BoundaryRayPoint:
    """One exact solution of q((1-r) H + r L) = 0."""

    root: QuadExt
    class_vector: tuple
    in_h_closure: bool


def boundary_ray(lat: Lattice, big_h: Vector, big_l: Vector) -> list[BoundaryRayPoint]:
    """All real r with q((1-r) H + r L) = 0, with exact QuadExt roots.

    The quadratic in r is
        q(H) - 2 r (q(H) - (H, L)) + r^2 (q(H) - 2 (H, L) + q(L)).
    Returns the roots in increasing order together with the classes
    (1-r) H + r L (coordinates in Q(sqrt(d))) and a flag marking which root
    lands in the closure of the H-component ((class, H) >= 0).  An empty
    list means the segment never meets the boundary.
    """
    q_h = lat.quadratic(big_h)
    if q_h <= 0:
        raise InputError("reference class not positive", "q(H) must be > 0")
    if vectors_collinear(big_h, big_l):
        raise InputError("precondition", "L must not be proportional to H")
    pairing = lat.bilinear(big_h, big_l)
    q_l = lat.quadratic(big_l)
    a = q_h - 2 * pairing + q_l
    b = -2 * (q_h - pairing)
    c = q_h

    roots: list[QuadExt] = []
    if a == 0:
        if b != 0:
            roots = [QuadExt.rational(Fraction(-c, b))]
    else:
        disc = b * b - 4 * a * c
        if disc > 0:
            sq = rational_sqrt(disc)
            half = Fraction(1, 2) / a
            roots = [(QuadExt.rational(-b) - sq) * half,
                     (QuadExt.rational(-b) + sq) * half]
            roots.sort()
        elif disc == 0:
            roots = [QuadExt.rational(Fraction(-b, 2 * a))]

    points = []
    for r in roots:
        one_minus_r = QuadExt.rational(1) - r
        cls = tuple(one_minus_r * QuadExt.coerce(hx) + r * QuadExt.coerce(lx)
                    for hx, lx in zip(big_h, big_l))
        q_cls = lat.quadratic(cls)
        assert QuadExt.coerce(q_cls).is_zero()
        pairing_h = QuadExt.coerce(lat.bilinear(cls, big_h))
        points.append(BoundaryRayPoint(root=r, class_vector=cls,
                                       in_h_closure=pairing_h.sign() >= 0))
    return points
