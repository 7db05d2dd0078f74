"""Reflections by negative classes and the walk into the closed BK cone.

A wall is a primitive integer class d with q(d) < 0 (the lattice shadow of
a prime exceptional divisor).  Its reflection

    R_d(v) = v - (2 (d, v) / q(d)) d

preserves q and is an involution.  The closed birational Kaehler cone is
cut out of the closed positive cone by (. , d) >= 0 against all prime
exceptional classes; since that full set is geometric data the lattice
cannot see, every operation here takes an explicit finite wall list and
the answers are relative to it (an over-approximation of the true cone
when the geometric set is larger).

``walk_to_bk_cone`` repeatedly reflects a class at a violated wall, always
the one with the most negative pairing (ties: lexicographically smallest
wall).  Every step strictly decreases the pairing (alpha_i, h) against the
fixed interior class h, which stays positive; when the inputs are integral
and every wall reflection preserves integrality these values form a
strictly descending sequence of positive integers, which forces
termination.  The walk asserts the strict decrease at each step and never
uses an iteration cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .errors import InputError, InternalError
from .lattice import (Lattice, Vector, primitive_in_direction, scale_vector,
                      sub_vectors, vec)
from .cones import _check_reference


@dataclass(frozen=True)
class Wall:
    """Primitive integer class with negative square; q(d) is cached."""

    d: tuple[int, ...]
    q: Fraction

    @staticmethod
    def make(lat: Lattice, coords) -> "Wall":
        coords = vec(coords)
        if any(x.denominator != 1 for x in coords):
            raise InputError("not a wall", "wall classes must be integral")
        if all(x == 0 for x in coords):
            raise InputError("not a wall", "wall class must be nonzero")
        d = primitive_sign_preserving(coords)
        q = lat.quadratic(vec(d))
        if q >= 0:
            raise InputError("not a wall", f"q(d) = {q} is not negative")
        return Wall(d=d, q=q)


def primitive_sign_preserving(coords) -> tuple[int, ...]:
    """Divide an integer vector by its content, keeping the direction."""
    ints = [int(x) for x in coords]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    return tuple(x // g for x in ints)


def reflect(lat: Lattice, wall: Wall, v: Vector) -> Vector:
    """R_d(v) = v - (2 (d, v) / q(d)) d."""
    if wall.q >= 0:
        raise InputError("not a wall", f"q(d) = {wall.q} is not negative")
    d = vec(wall.d)
    coeff = 2 * lat.bilinear(d, v) / wall.q
    return sub_vectors(v, scale_vector(coeff, d))


def in_closed_bk_cone(lat: Lattice, walls: Sequence[Wall], h: Vector, v: Vector) -> bool:
    """v in the closed positive cone of h with (v, d) >= 0 for every wall.

    Relative to the supplied finite wall list; a superset of the true
    closed birational Kaehler cone whenever the list is incomplete.
    """
    _check_reference(lat, h)
    if lat.quadratic(v) < 0 or lat.bilinear(v, h) < 0:
        return False
    return all(lat.bilinear(v, vec(w.d)) >= 0 for w in walls)


@dataclass(frozen=True)
class WalkResult:
    beta: Vector
    word: tuple[int, ...]          # indices into the wall list, applied left to right
    trace: tuple[Fraction, ...]    # (alpha_i, h) for every visited class
    scaled_alpha: Vector           # the integral multiple of alpha the walk started from


def walk_to_bk_cone(lat: Lattice, walls: Sequence[Wall], h: Vector,
                    alpha: Vector) -> WalkResult:
    """Reflect alpha into the closed BK cone relative to the wall list.

    Preconditions: q(h) > 0 on a signature (1, rank-1) lattice; alpha is a
    nonzero rational class with q(alpha) >= 0 and (alpha, h) > 0; every
    wall pairs positively with h (otherwise the descent guarantee is void).
    The input is first scaled to a primitive integral class.
    """
    _check_reference(lat, h)
    for w in walls:
        if lat.bilinear(vec(w.d), h) <= 0:
            raise InputError("wall not h-positive", f"wall {w.d} has (d, h) <= 0")
    q_alpha = lat.quadratic(alpha)
    if q_alpha < 0:
        raise InputError("precondition", "q(alpha) >= 0 is required")
    pairing_h = lat.bilinear(alpha, h)
    if pairing_h <= 0:
        raise InputError("wrong component", "(alpha, h) > 0 is required")

    current = vec(primitive_in_direction(alpha))
    start = current
    trace = [lat.bilinear(current, h)]
    word: list[int] = []

    while True:
        violated = [(lat.bilinear(current, vec(w.d)), w.d, idx)
                    for idx, w in enumerate(walls)]
        violated = [entry for entry in violated if entry[0] < 0]
        if not violated:
            break
        _, _, chosen = min(violated)  # most negative pairing, ties by smallest wall
        current = reflect(lat, walls[chosen], current)
        word.append(chosen)
        pairing = lat.bilinear(current, h)
        if not pairing < trace[-1]:
            raise InternalError("monovariant failed",
                                f"(alpha, h) did not decrease: {trace[-1]} -> {pairing}")
        if pairing <= 0:
            raise InternalError("monovariant failed", "(alpha, h) left the positive range")
        trace.append(pairing)

    if lat.quadratic(current) != lat.quadratic(start):
        raise InternalError("isometry failed", "q changed along the walk")
    return WalkResult(beta=current, word=tuple(word), trace=tuple(trace),
                      scaled_alpha=start)


def replay_word(lat: Lattice, walls: Sequence[Wall], word: Sequence[int],
                start: Vector) -> Vector:
    """Apply a reflection word left to right; certificates are checked with this."""
    current = start
    for idx in word:
        if idx < 0 or idx >= len(walls):
            raise InputError("precondition", f"word references wall {idx} outside the list")
        current = reflect(lat, walls[idx], current)
    return current
