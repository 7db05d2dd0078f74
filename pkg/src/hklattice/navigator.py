"""Conjecture navigator: the WSP decision procedure and its certificates.

Given a variety descriptor (deformation type, half-dimension n, NS lattice,
ample class, optional wall list) the procedure replays the implication
chain

  1. Does the boundary of the positive cone meet NS(X)_Q away from 0?
     Decided exactly by the isotropy module.  For rank >= 5 hyperbolic
     lattices a witness always exists (Hasse-Minkowski: an indefinite form
     of rank >= 5 represents zero); a miss there is an internal error,
     never a negative verdict.
  2. If a witness exists and the variety is of K3^[n]-type or of
     generalized-Kummer type, the rational-Lagrangian-fibration property
     holds for it (Matsushita's deformation result, encoded as an axiom
     gate on the user-asserted deformation type), and the fibration forces
     the isotropic divisor powers to vanish, which yields the weak
     splitting property: verdict ``wsp_holds``.
  3. With a witness but an unknown deformation type the same implication
     is only conditional on the fibration conjecture: verdict
     ``wsp_conditional_on_rlf`` (with the informational note that the
     general case reduces further to Picard rank two).
  4. Without a witness (possible only for rank <= 4) the hypothesis of the
     chain fails and nothing is claimed: verdict ``hypothesis_fails``.

If a wall list is supplied, the witness is additionally walked into the
closed birational Kaehler cone (relative to that list) and the reflection
word is recorded, so the certificate carries the full chain.

Certificates are machine-checkable: every step stores enough data for
``verify_certificate`` to recompute it from scratch through the underlying
modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InputError, InternalError
from .isotropy import find_isotropic_vector, is_isotropic
from .lattice import Lattice, Signature, Vector, scale_vector, vec
from .reflections import Wall, in_closed_bk_cone, replay_word, walk_to_bk_cone
from .scalars import format_rational, parse_rational

K3_HILB_TYPE = "K3_hilb_type"
KUMMER_TYPE = "kummer_type"
OTHER_TYPE = "other"
DEFORMATION_TYPES = (K3_HILB_TYPE, KUMMER_TYPE, OTHER_TYPE)

VERDICT_WSP_HOLDS = "wsp_holds"
VERDICT_CONDITIONAL = "wsp_conditional_on_rlf"
VERDICT_HYPOTHESIS_FAILS = "hypothesis_fails"
VERDICT_INVALID = "invalid_input"

EXIT_CODES = {
    VERDICT_WSP_HOLDS: 0,
    VERDICT_CONDITIONAL: 10,
    VERDICT_HYPOTHESIS_FAILS: 20,
    VERDICT_INVALID: 2,
}

RULE_ISOTROPIC_CLASS = "isotropic_ns_class"
RULE_HYPOTHESIS_FAILS = "no_isotropic_ns_class"
RULE_WALK = "reflect_into_bk_cone"
RULE_RLF_AXIOM = "rlf_axiom_for_deformation_type"
RULE_RLF_IMPLIES_WSP = "rlf_implies_wsp"

_STATEMENTS = {
    RULE_ISOTROPIC_CLASS:
        "A nonzero primitive integral class L with q(L) = 0 exists, so the "
        "positive-cone boundary meets the rational Neron-Severi group away from 0.",
    RULE_HYPOTHESIS_FAILS:
        "q is anisotropic over Q on the Neron-Severi lattice: the positive-cone "
        "boundary meets it only in 0, so the decision chain does not apply.",
    RULE_WALK:
        "Reflections in the supplied prime-exceptional wall classes move the "
        "isotropic class into the closed birational Kaehler cone relative to "
        "that finite wall list.",
    RULE_RLF_AXIOM:
        "For K3^[n]-type and generalized-Kummer-type varieties, every nonzero "
        "isotropic line bundle in the closed birational Kaehler cone induces a "
        "rational Lagrangian fibration (Matsushita); taken as an axiom keyed on "
        "the asserted deformation type.",
    RULE_RLF_IMPLIES_WSP:
        "Given a nonzero rational isotropic class on the positive-cone boundary, "
        "the rational-Lagrangian-fibration property forces all isotropic "
        "(n+1)-st divisor powers to vanish in the Chow ring, which is "
        "equivalent to the weak splitting property.",
}

RHO2_NOTE = ("Conditional verdict: WSP for this variety follows from the "
             "rational-Lagrangian-fibration conjecture; independently, the "
             "general conjecture reduces to the Picard-rank-two case.")


@dataclass(frozen=True)
class VarietyDescriptor:
    deformation_type: str
    n: int
    ns_lattice: Lattice
    ample: Vector
    walls: tuple[Wall, ...] = ()
    label: Optional[str] = None

    def problems(self) -> list[str]:
        """Invariant violations, empty when the descriptor is valid."""
        out = []
        if self.deformation_type not in DEFORMATION_TYPES:
            out.append(f"unknown deformation_type {self.deformation_type!r}")
        if not isinstance(self.n, int) or self.n < 1:
            out.append(f"n must be an integer >= 1, got {self.n!r}")
        sig = self.ns_lattice.signature()
        if sig != Signature(1, self.ns_lattice.rank - 1, 0):
            out.append(f"ns_lattice signature {tuple(sig)} is not (1, rank-1)")
        if len(self.ample) != self.ns_lattice.rank:
            out.append("ample class length does not match the lattice rank")
        elif self.ns_lattice.quadratic(self.ample) <= 0:
            out.append("q(ample) must be > 0")
        else:
            for w in self.walls:
                if self.ns_lattice.bilinear(vec(w.d), self.ample) <= 0:
                    out.append(f"wall {w.d} is not ample-positive")
        return out

    def to_json(self) -> dict:
        out = self.ns_lattice.to_json()
        out["label"] = self.label or out.get("label")
        out["deformation_type"] = self.deformation_type
        out["n"] = self.n
        out["ample"] = [format_rational(x) for x in self.ample]
        if self.walls:
            out["walls"] = [list(w.d) for w in self.walls]
        return out

    @staticmethod
    def from_json(obj: dict) -> "VarietyDescriptor":
        lat = Lattice.from_json(obj)
        ample = vec(obj.get("ample", ()))
        walls = tuple(Wall.make(lat, w) for w in obj.get("walls", ()))
        n_raw = obj.get("n", 0)
        if not isinstance(n_raw, int):
            raise InputError("parameter", f"n must be an integer, got {n_raw!r}")
        return VarietyDescriptor(
            deformation_type=obj.get("deformation_type", ""),
            n=n_raw,
            ns_lattice=lat,
            ample=ample,
            walls=walls,
            label=obj.get("label"),
        )


@dataclass(frozen=True)
class CertificateStep:
    rule: str
    statement: str
    data: dict

    def to_json(self) -> dict:
        return {"rule": self.rule, "statement": self.statement, "data": self.data}

    @staticmethod
    def from_json(obj: dict) -> "CertificateStep":
        return CertificateStep(rule=obj["rule"], statement=obj.get("statement", ""),
                               data=obj.get("data", {}))


@dataclass(frozen=True)
class Certificate:
    verdict: str
    steps: tuple[CertificateStep, ...]
    witness: Optional[tuple[int, ...]] = None
    word: Optional[tuple[int, ...]] = None
    note: Optional[str] = None
    diagnosis: tuple[str, ...] = ()

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_json(self) -> dict:
        return {
            "format": "wsp-certificate/1",
            "verdict": self.verdict,
            "steps": [s.to_json() for s in self.steps],
            "witness": list(self.witness) if self.witness is not None else None,
            "word": list(self.word) if self.word is not None else None,
            "note": self.note,
            "diagnosis": list(self.diagnosis),
        }

    @staticmethod
    def from_json(obj: dict) -> "Certificate":
        return Certificate(
            verdict=obj["verdict"],
            steps=tuple(CertificateStep.from_json(s) for s in obj.get("steps", ())),
            witness=tuple(obj["witness"]) if obj.get("witness") is not None else None,
            word=tuple(obj["word"]) if obj.get("word") is not None else None,
            note=obj.get("note"),
            diagnosis=tuple(obj.get("diagnosis", ())),
        )


def _step(rule: str, **data) -> CertificateStep:
    return CertificateStep(rule=rule, statement=_STATEMENTS[rule], data=data)


def check_wsp(desc: VarietyDescriptor) -> Certificate:
    """Run the decision tree and emit a replayable certificate."""
    problems = desc.problems()
    if problems:
        return Certificate(verdict=VERDICT_INVALID, steps=(),
                           diagnosis=tuple(problems))

    lat = desc.ns_lattice
    witness = find_isotropic_vector(lat)
    if witness is None:
        if lat.rank >= 5:
            raise InternalError(
                "bound violated",
                "signature (1, rank-1) with rank >= 5 is indefinite of rank >= 5, "
                "so an isotropic class must exist")
        step = _step(RULE_HYPOTHESIS_FAILS, rank=lat.rank, is_isotropic=False)
        return Certificate(verdict=VERDICT_HYPOTHESIS_FAILS, steps=(step,))

    w = vec(witness.vector)
    if lat.bilinear(w, desc.ample) < 0:
        w = scale_vector(Fraction(-1), w)
    w_ints = tuple(int(x) for x in w)
    steps = [_step(RULE_ISOTROPIC_CLASS, witness=list(w_ints),
                   bound_used=witness.bound_used, rank=lat.rank,
                   rank_ge_5_guarantee=lat.rank >= 5)]

    word: Optional[tuple[int, ...]] = None
    if desc.walls:
        try:
            walk = walk_to_bk_cone(lat, desc.walls, desc.ample, w)
        except InputError as exc:
            return Certificate(verdict=VERDICT_INVALID, steps=(),
                               diagnosis=(str(exc),))
        word = walk.word
        steps.append(_step(RULE_WALK,
                           word=list(walk.word),
                           beta=[int(x) for x in walk.beta],
                           trace=[format_rational(t) for t in walk.trace]))

    if desc.deformation_type in (K3_HILB_TYPE, KUMMER_TYPE):
        steps.append(_step(RULE_RLF_AXIOM, deformation_type=desc.deformation_type))
        steps.append(_step(RULE_RLF_IMPLIES_WSP, n=desc.n, conditional=False))
        return Certificate(verdict=VERDICT_WSP_HOLDS, steps=tuple(steps),
                           witness=w_ints, word=word)

    steps.append(_step(RULE_RLF_IMPLIES_WSP, n=desc.n, conditional=True))
    return Certificate(verdict=VERDICT_CONDITIONAL, steps=tuple(steps),
                       witness=w_ints, word=word, note=RHO2_NOTE)


@dataclass
class VerificationResult:
    ok: bool
    diagnosis: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_certificate(desc: VarietyDescriptor, cert: Certificate) -> VerificationResult:
    """Replay every certificate step through the underlying modules."""
    diagnosis: list[str] = []
    problems = desc.problems()

    if cert.verdict == VERDICT_INVALID:
        if not problems:
            diagnosis.append("certificate claims invalid input but the descriptor is valid")
        return VerificationResult(not diagnosis, diagnosis)

    if problems:
        diagnosis.extend(f"descriptor invalid: {p}" for p in problems)
        return VerificationResult(False, diagnosis)

    lat = desc.ns_lattice
    rules = [s.rule for s in cert.steps]

    if cert.verdict == VERDICT_HYPOTHESIS_FAILS:
        if lat.rank >= 5:
            diagnosis.append("rank >= 5 hyperbolic lattices always carry an isotropic class")
        if is_isotropic(lat):
            diagnosis.append("the lattice is isotropic; hypothesis_fails is wrong")
        if RULE_HYPOTHESIS_FAILS not in rules:
            diagnosis.append("missing step: no_isotropic_ns_class")
        return VerificationResult(not diagnosis, diagnosis)

    if cert.verdict not in (VERDICT_WSP_HOLDS, VERDICT_CONDITIONAL):
        return VerificationResult(False, [f"unknown verdict {cert.verdict!r}"])

    # both positive verdicts need a verified isotropic witness
    if cert.witness is None:
        diagnosis.append("missing isotropy witness")
    else:
        w = vec(cert.witness)
        if len(w) != lat.rank:
            diagnosis.append("witness length does not match the lattice rank")
        elif all(x == 0 for x in w):
            diagnosis.append("witness is zero")
        elif lat.quadratic(w) != 0:
            diagnosis.append("witness not isotropic")
    if RULE_ISOTROPIC_CLASS not in rules:
        diagnosis.append("missing step: isotropic_ns_class")

    if cert.verdict == VERDICT_WSP_HOLDS:
        if desc.deformation_type not in (K3_HILB_TYPE, KUMMER_TYPE):
            diagnosis.append("RLF axiom not applicable")
        if RULE_RLF_AXIOM not in rules:
            diagnosis.append("missing step: rlf_axiom_for_deformation_type")
    else:  # conditional
        if desc.deformation_type != OTHER_TYPE:
            diagnosis.append("conditional verdict for a deformation type with the RLF axiom")
        if RULE_RLF_AXIOM in rules:
            diagnosis.append("conditional verdict must not invoke the RLF axiom")
    if RULE_RLF_IMPLIES_WSP not in rules:
        diagnosis.append("missing step: rlf_implies_wsp")

    if cert.word is not None and cert.witness is not None and not diagnosis:
        if not desc.walls:
            diagnosis.append("certificate carries a reflection word but no walls were supplied")
        else:
            w = vec(cert.witness)
            try:
                beta = replay_word(lat, desc.walls, cert.word, w)
            except InputError as exc:
                diagnosis.append(f"reflection word does not replay: {exc}")
            else:
                if not in_closed_bk_cone(lat, desc.walls, desc.ample, beta):
                    diagnosis.append("replayed class is not in the closed BK cone")
                walk_step = next((s for s in cert.steps if s.rule == RULE_WALK), None)
                if walk_step is not None:
                    claimed = vec(walk_step.data.get("beta", ()))
                    if tuple(claimed) != tuple(beta):
                        diagnosis.append("replayed class differs from the recorded one")
                    trace = [parse_rational(t) for t in walk_step.data.get("trace", ())]
                    if any(a <= b for a, b in zip(trace, trace[1:])):
                        diagnosis.append("recorded trace is not strictly decreasing")

    return VerificationResult(not diagnosis, diagnosis)
