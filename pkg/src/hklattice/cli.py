"""Command-line surface.

One umbrella command (``hklattice``) plus the per-module entry points
``isotropic``, ``cone``, ``reflect``, ``ideal`` and ``wsp``.  All vectors
are JSON arrays of rational strings (plain integers also accepted); all
exact irrational values are emitted as {"a": "p/q", "b": "p/q", "d": int}
meaning a + b*sqrt(d).

Exit codes: ``wsp check`` maps its verdict to 0 (wsp_holds), 10
(wsp_conditional_on_rlf), 20 (hypothesis_fails) or 2 (invalid_input);
``wsp verify`` exits 0 on a verified certificate and 1 otherwise; every
other command exits 2 on invalid input.
"""

from __future__ import annotations

import json
import sys

import click

from .cones import boundary_ray, boundary_side, classify, sample_boundary_stream
from .errors import InputError
from .ideal import DivisorPolynomial, contains, ideal_basis
from .isotropy import find_isotropic_vector
from .lattice import Lattice, builtin_lattice, vec
from .navigator import Certificate, VarietyDescriptor, check_wsp, verify_certificate
from .reflections import Wall, walk_to_bk_cone
from .scalars import format_rational


def _fail(exc: Exception):
    click.echo(json.dumps({"error": str(exc)}), err=True)
    sys.exit(2)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_lattice(path: str) -> Lattice:
    return Lattice.from_json(_load_json(path))


def _parse_vector(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("domain", f"vector must be a JSON array: {exc}") from exc
    if not isinstance(data, list):
        raise InputError("domain", "vector must be a JSON array")
    return vec(data)


def _emit(payload, out: str | None = None):
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _format_vector(v):
    return [format_rational(x) for x in v]


@click.group()
def main():
    """Exact lattice toolkit: isotropy, cones, reflections, ideals, WSP."""


@click.group()
def lattice():
    """Build and inspect lattice descriptor files."""


@lattice.command("build")
@click.option("--family", required=True,
              type=click.Choice(["K3_full", "K3_hilb_full", "Kummer_full"]))
@click.option("--n", type=int, default=None, help="parameter for the parametrized families")
@click.option("--out", "-o", default=None, help="output file (default: stdout)")
def lattice_build(family, n, out):
    try:
        lat = builtin_lattice(family, n)
    except InputError as exc:
        _fail(exc)
    _emit(lat.to_json(), out)


@lattice.command("info")
@click.argument("lattice_file")
def lattice_info(lattice_file):
    try:
        lat = _load_lattice(lattice_file)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    sig = lat.signature()
    _emit({
        "label": lat.label,
        "rank": lat.rank,
        "signature": [sig.positive, sig.negative, sig.zero],
        "determinant": format_rational(lat.determinant()),
        "even": lat.is_even(),
        "hyperbolic": lat.is_hyperbolic(),
    })


@click.group()
def isotropic():
    """Rational isotropy of a lattice."""


@isotropic.command("find")
@click.argument("lattice_file")
def isotropic_find(lattice_file):
    """Decide isotropy and print a primitive witness when one exists."""
    try:
        lat = _load_lattice(lattice_file)
        witness = find_isotropic_vector(lat)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    if witness is None:
        _emit({"isotropic": False, "witness": None,
               "bound_used": "no search performed: the form is anisotropic over Q "
                             "by the local criteria"})
    else:
        _emit({"isotropic": True, "witness": list(witness.vector),
               "bound_used": witness.bound_used})


@click.group()
def cone():
    """Positive-cone classification, boundary sampling, boundary rays."""


@cone.command("classify")
@click.argument("lattice_file")
@click.option("--h", "h_text", required=True, help="reference class, JSON array")
@click.option("--v", "v_text", required=True, help="class to classify, JSON array")
def cone_classify(lattice_file, h_text, v_text):
    try:
        lat = _load_lattice(lattice_file)
        h = _parse_vector(h_text)
        v = _parse_vector(v_text)
        label = classify(lat, h, v)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit({"classification": label.value,
           "h_pairing_sign": boundary_side(lat, h, v)})


@cone.command("sample")
@click.argument("lattice_file")
@click.option("--alpha", "alpha_text", required=True, help="rational boundary class")
@click.option("--h", "h_text", required=True, help="interior reference class")
@click.option("--count", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def cone_sample(lattice_file, alpha_text, h_text, count, seed):
    try:
        lat = _load_lattice(lattice_file)
        alpha = _parse_vector(alpha_text)
        h = _parse_vector(h_text)
        stream = sample_boundary_stream(lat, alpha, h, count, seed)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit({"classes": [_format_vector(g) for g in stream]})


@cone.command("ray")
@click.argument("lattice_file")
@click.option("--H", "h_text", required=True, help="interior class H")
@click.option("--L", "l_text", required=True, help="rational class L")
def cone_ray(lattice_file, h_text, l_text):
    """Exact boundary points on the segment (1-r) H + r L."""
    try:
        lat = _load_lattice(lattice_file)
        big_h = _parse_vector(h_text)
        big_l = _parse_vector(l_text)
        points = boundary_ray(lat, big_h, big_l)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit({"roots": [{
        "root": p.root.to_json(),
        "class": [x.to_json() for x in p.class_vector],
        "in_h_closure": p.in_h_closure,
    } for p in points]})


@click.group()
def reflect():
    """Reflection walks by prime exceptional wall classes."""


@reflect.command("walk")
@click.argument("lattice_file")
@click.option("--walls", "walls_file", required=True,
              help='JSON file {"walls": [[ints], ...]}')
@click.option("--h", "h_text", required=True, help="ample reference class")
@click.option("--alpha", "alpha_text", required=True, help="class to move")
def reflect_walk(lattice_file, walls_file, h_text, alpha_text):
    try:
        lat = _load_lattice(lattice_file)
        wall_rows = _load_json(walls_file)["walls"]
        walls = [Wall.make(lat, row) for row in wall_rows]
        h = _parse_vector(h_text)
        alpha = _parse_vector(alpha_text)
        result = walk_to_bk_cone(lat, walls, h, alpha)
    except (InputError, OSError, KeyError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit({
        "beta": _format_vector(result.beta),
        "word": list(result.word),
        "trace": [format_rational(t) for t in result.trace],
        "scaled_alpha": _format_vector(result.scaled_alpha),
    })


@click.group()
def ideal():
    """Kernel ideal of isotropic divisor powers."""


@ideal.command("basis")
@click.argument("lattice_file")
@click.option("--n", "n_value", type=int, required=True, help="half-dimension")
@click.option("--degree", type=int, default=None, help="graded piece (default n+1)")
@click.option("--seed", type=int, default=0, show_default=True)
def ideal_basis_cmd(lattice_file, n_value, degree, seed):
    try:
        lat = _load_lattice(lattice_file)
        basis = ideal_basis(lat, n_value, degree if degree is not None else n_value + 1,
                            seed=seed)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit({
        "dimension": basis.dimension,
        "target_dimension": basis.target_dim,
        "samples_used": basis.samples_used,
        "generators": [g.to_json() for g in basis.generators],
    })


@ideal.command("member")
@click.argument("lattice_file")
@click.option("--n", "n_value", type=int, required=True)
@click.option("--degree", type=int, default=None)
@click.option("--poly", "poly_file", required=True,
              help='polynomial JSON {"degree": k, "terms": [{"exps": [...], "coef": "p/q"}]}')
@click.option("--seed", type=int, default=0, show_default=True)
def ideal_member(lattice_file, n_value, degree, poly_file, seed):
    try:
        lat = _load_lattice(lattice_file)
        poly = DivisorPolynomial.from_json(_load_json(poly_file), lat.rank)
        basis = ideal_basis(lat, n_value, degree if degree is not None else n_value + 1,
                            seed=seed)
        member = contains(basis, poly)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    _emit({"member": member, "dimension": basis.dimension})


@click.group()
def wsp():
    """WSP decision procedure with replayable certificates."""


@wsp.command("check")
@click.argument("descriptor_file")
@click.option("--out", default=None, help="write the certificate to this file")
@click.pass_context
def wsp_check(ctx, descriptor_file, out):
    """Run the decision tree; exit code encodes the verdict."""
    try:
        data = _load_json(descriptor_file)
    except (OSError, json.JSONDecodeError) as exc:
        _fail(exc)
    try:
        desc = VarietyDescriptor.from_json(data)
        cert = check_wsp(desc)
    except InputError as exc:
        cert = Certificate(verdict="invalid_input", steps=(), diagnosis=(str(exc),))
    _emit(cert.to_json(), out)
    if out:
        click.echo(cert.verdict)
    ctx.exit(cert.exit_code)


@wsp.command("verify")
@click.argument("descriptor_file")
@click.argument("certificate_file")
@click.pass_context
def wsp_verify(ctx, descriptor_file, certificate_file):
    """Replay a certificate; exit 0 iff every step re-verifies."""
    try:
        desc = VarietyDescriptor.from_json(_load_json(descriptor_file))
        cert = Certificate.from_json(_load_json(certificate_file))
    except (InputError, OSError, KeyError, json.JSONDecodeError) as exc:
        _fail(exc)
    result = verify_certificate(desc, cert)
    _emit({"verified": result.ok, "diagnosis": result.diagnosis})
    ctx.exit(0 if result.ok else 1)


main.add_command(lattice)
main.add_command(isotropic)
main.add_command(cone)
main.add_command(reflect)
main.add_command(ideal)
main.add_command(wsp)
