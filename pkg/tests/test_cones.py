import random
from fractions import Fraction

import pytest

from hklattice import (ConeClassification, InputError, Lattice, QuadExt,
                       boundary_ray, classify, sample_boundary,
                       sample_boundary_stream, vec)
from hklattice.lattice import vectors_collinear
from conftest import random_hyperbolic_lattice

D22 = Lattice.diagonal([2, -2])
H = vec([2, 1])


def test_classify_worked_examples():
    assert classify(D22, H, vec([1, 1])) is ConeClassification.BOUNDARY
    assert D22.bilinear(vec([1, 1]), H) == 2
    assert classify(D22, H, H) is ConeClassification.POSITIVE_INTERIOR
    assert classify(D22, H, vec([0, 1])) is ConeClassification.NEGATIVE
    assert classify(D22, H, vec([-2, -1])) is ConeClassification.OPPOSITE_COMPONENT
    assert classify(D22, H, vec([1, -1])) is ConeClassification.BOUNDARY


def test_classify_guards():
    with pytest.raises(InputError, match="reference class not positive"):
        classify(D22, vec([0, 1]), vec([1, 1]))
    with pytest.raises(InputError, match="signature"):
        classify(Lattice.diagonal([2, 2]), vec([1, 0]), vec([0, 1]))


def test_classify_scale_invariance():
    rng = random.Random(3)
    for _ in range(50):
        lat = random_hyperbolic_lattice(rng, rng.randint(2, 4))
        h = lat.positive_class()
        v = vec([rng.randint(-5, 5) for _ in range(lat.rank)])
        c = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        assert classify(lat, h, v) is classify(lat, h, tuple(c * x for x in v))


def test_sample_boundary_worked_examples():
    assert sample_boundary(D22, vec([1, 1]), vec([1, 0])) == vec([2, -2])
    assert sample_boundary(D22, vec([1, 1]), vec([2, 1])) == vec([2, -2])


def test_sample_boundary_guards():
    with pytest.raises(InputError, match="precondition"):
        sample_boundary(D22, vec([1, 0]), vec([1, 0]))   # q(alpha) != 0
    with pytest.raises(InputError, match="precondition"):
        sample_boundary(D22, vec([0, 0]), vec([1, 0]))   # alpha zero
    with pytest.raises(InputError, match="precondition"):
        sample_boundary(D22, vec([1, 1]), vec([0, 1]))   # q(beta') <= 0


def test_stream_contract():
    stream = sample_boundary_stream(D22, vec([1, 1]), H, 2, seed=5)
    assert len(stream) == 2
    for gamma in stream:
        assert D22.quadratic(gamma) == 0
        assert D22.bilinear(gamma, H) > 0
        assert not vectors_collinear(gamma, vec([1, 1]))


def test_stream_reaches_second_ray_rank2():
    # rank 2 has exactly two isotropic rays; every output is on the other one
    for seed in range(10):
        stream = sample_boundary_stream(D22, vec([1, 1]), H, 10, seed=seed)
        assert any(vectors_collinear(g, vec([1, -1])) for g in stream)


def test_stream_guards():
    with pytest.raises(InputError, match="precondition"):
        sample_boundary_stream(D22, vec([1, 1]), H, 0, seed=1)


def test_stream_deterministic_and_distinct_rays_rank3():
    lat = Lattice.diagonal([2, -2, -2])
    alpha = vec([1, 1, 0])
    h = vec([1, 0, 0])
    a = sample_boundary_stream(lat, alpha, h, 8, seed=42)
    b = sample_boundary_stream(lat, alpha, h, 8, seed=42)
    assert a == b
    rays = set()
    for gamma in a:
        from hklattice import primitive_integer_vector
        rays.add(primitive_integer_vector(gamma))
    assert len(rays) == len(a)   # distinct rays are available at rank >= 3


def test_stream_flips_alpha_to_h_side():
    stream = sample_boundary_stream(D22, vec([-1, -1]), H, 3, seed=0)
    for gamma in stream:
        assert D22.bilinear(gamma, H) > 0


def test_boundary_ray_worked_example():
    points = boundary_ray(D22, H, vec([0, 1]))
    roots = [p.root for p in points]
    assert roots == [QuadExt.make(Fraction(1, 2)), QuadExt.make(Fraction(3, 2))]
    first = points[0]
    assert first.class_vector == (QuadExt.make(1), QuadExt.make(1))
    assert first.in_h_closure
    assert not points[1].in_h_closure


def test_boundary_ray_irrational_roots_annihilate():
    points = boundary_ray(D22, H, vec([1, 0]))
    assert points
    q_h = D22.quadratic(H)
    pairing = D22.bilinear(H, vec([1, 0]))
    q_l = D22.quadratic(vec([1, 0]))
    a = q_h - 2 * pairing + q_l
    b = -2 * (q_h - pairing)
    c = q_h
    for p in points:
        value = a * p.root * p.root + b * p.root + c
        assert QuadExt.coerce(value).is_zero()
        assert QuadExt.coerce(D22.quadratic(p.class_vector)).is_zero()


def test_boundary_ray_guards():
    with pytest.raises(InputError, match="reference class not positive"):
        boundary_ray(D22, vec([0, 1]), vec([1, 0]))
    with pytest.raises(InputError, match="precondition"):
        boundary_ray(D22, H, vec([4, 2]))   # proportional to H


def test_boundary_ray_always_meets_boundary():
    # with q(H) > 0 the affine line through H and L always crosses {q = 0}
    # (reverse Cauchy-Schwarz in hyperbolic signature), so roots exist and
    # exactly one nonnegative-pairing root is flagged for generic L
    rng = random.Random(17)
    for _ in range(40):
        lat = random_hyperbolic_lattice(rng, rng.randint(2, 4))
        h = lat.positive_class()
        while True:
            l = vec([rng.randint(-4, 4) for _ in range(lat.rank)])
            if not vectors_collinear(h, l):
                break
        points = boundary_ray(lat, h, l)
        assert len(points) in (1, 2)
        assert any(p.in_h_closure for p in points)
