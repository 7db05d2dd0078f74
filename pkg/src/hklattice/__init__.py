"""hklattice: exact-arithmetic toolkit for hyperkahler lattice geometry.

Core pieces: rational lattices with the Beauville-Bogomolov convention
q(v) = v^T G v, rational isotropy with witnesses (Hasse-Minkowski locally,
bounded search constructively), positive-cone classification and boundary
sampling, reflections by prime-exceptional wall classes with a terminating
walk into the closed birational Kaehler cone, the degree-graded kernel
ideal of isotropic divisor powers, and a WSP decision procedure that emits
machine-checkable certificates.
"""

from .errors import InputError, InternalError
from .scalars import (GaussianRational, QuadExt, format_rational,
                      parse_rational, square_class)
from .lattice import (Lattice, Signature, builtin_lattice, e8_lattice,
                      hyperbolic_plane, primitive_integer_vector, vec)
from .isotropy import (INFINITY, IsotropyWitness, find_isotropic_vector,
                       hilbert_symbol, is_isotropic)
from .cones import (BoundaryRayPoint, ConeClassification, boundary_ray,
                    boundary_side, classify, sample_boundary,
                    sample_boundary_stream)
from .reflections import (Wall, WalkResult, in_closed_bk_cone, reflect,
                          replay_word, walk_to_bk_cone)
from .divpoly import DivisorPolynomial, linear_power, monomials_of_degree, sym_dimension
from .ideal import (IdealBasis, complex_closure_check, contains, ideal_basis,
                    ideal_target_dimension, isotropic_power)
from .navigator import (Certificate, CertificateStep, VarietyDescriptor,
                        VerificationResult, check_wsp, verify_certificate)

__version__ = "0.1.0"

__all__ = [
    "Certificate", "CertificateStep", "ConeClassification", "BoundaryRayPoint",
    "DivisorPolynomial", "GaussianRational", "IdealBasis", "INFINITY",
    "InputError", "InternalError", "IsotropyWitness", "Lattice", "QuadExt",
    "Signature", "VarietyDescriptor", "VerificationResult", "Wall",
    "WalkResult", "boundary_ray", "boundary_side", "builtin_lattice",
    "check_wsp", "classify", "complex_closure_check", "contains",
    "e8_lattice", "find_isotropic_vector", "format_rational",
    "hilbert_symbol", "hyperbolic_plane", "ideal_basis",
    "ideal_target_dimension", "in_closed_bk_cone", "is_isotropic",
    "isotropic_power", "linear_power", "monomials_of_degree",
    "parse_rational", "primitive_integer_vector", "reflect", "replay_word",
    "sample_boundary", "sample_boundary_stream", "square_class",
    "sym_dimension", "vec", "verify_certificate", "walk_to_bk_cone",
]
