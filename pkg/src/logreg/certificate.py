"""Certificates: ordered, self-contained, independently re-checkable steps.

Every step names a check kind from :data:`CHECKS`. A check receives the
step's data (plus earlier steps, for kinds that combine them) and returns
the outcome it recomputes, raising :class:`CheckFailed` when the recorded
evidence is inconsistent. The verifier compares the recomputed outcome with
the recorded one and rejects at the first disagreement.

Verdicts: a false hypothesis makes the verdict ``unsupported``; otherwise a
false evidence step makes it ``no``; otherwise ``yes``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from .algebra import AlgebraElement, BasePrime, BaseRing, base_prime_height, laurent_recognition, localize_base, residue_field
from .cone import fourier_motzkin_normals
from .errors import MalformedCertificate
from .faces import check_forced_witness, check_supporting
from .groebner import PolyRingContext, _canonical, buchberger, max_independent_set, leading_monomials, reduce, _spoly
from .lattice import dot, hermite_normal_form, solve_integer, vec_sub
from .monoid import AffineMonoid, membership, reconstruct, saturation_generators

ROLES = ("hypothesis", "evidence", "cross-check", "note")
METHODS = ("structural", "oracle", "brute-force")


class CheckFailed(Exception):
    pass


@dataclass
class Step:
    index: int
    claim: str
    method: str
    check: str
    data: dict
    anchor: str
    outcome: bool | None
    role: str = "evidence"
    refs: tuple[int, ...] = ()
    status: str = "done"

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "claim": self.claim,
            "method": self.method,
            "check": self.check,
            "anchor": self.anchor,
            "role": self.role,
            "refs": list(self.refs),
            "status": self.status,
            "outcome": self.outcome,
            "data": self.data,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Step":
        try:
            return cls(
                int(obj["index"]),
                str(obj["claim"]),
                str(obj["method"]),
                str(obj["check"]),
                dict(obj["data"]),
                str(obj["anchor"]),
                obj["outcome"],
                str(obj.get("role", "evidence")),
                tuple(int(r) for r in obj.get("refs", ())),
                str(obj.get("status", "done")),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedCertificate(f"malformed step: {e}") from e


def verdict_of(steps: Sequence[Step]) -> str:
    if any(s.role == "hypothesis" and s.outcome is False for s in steps):
        return "unsupported"
    if any(s.role in ("evidence", "cross-check") and s.outcome is False for s in steps):
        return "no"
    return "yes"


@dataclass
class Certificate:
    operation: str
    subject: dict
    steps: list[Step] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return verdict_of(self.steps)

    def step(self, anchor: str) -> Step | None:
        return next((s for s in self.steps if s.anchor == anchor), None)

    def failing(self) -> list[Step]:
        return [s for s in self.steps if s.outcome is False and s.role != "note"]

    def to_json(self) -> dict:
        return {
            "operation": self.operation,
            "verdict": self.verdict,
            "subject": self.subject,
            "summary": self.summary,
            "steps": [s.to_json() for s in self.steps],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Certificate":
        if not isinstance(obj, Mapping) or "steps" not in obj:
            raise MalformedCertificate("certificate has no steps")
        steps = [Step.from_json(s) for s in obj["steps"]]
        return cls(str(obj.get("operation", "")), dict(obj.get("subject", {})), steps, dict(obj.get("summary", {})))


class CertificateBuilder:
    """Appends steps, checking each against the registry as it goes."""

    def __init__(self, operation: str, subject: dict, self_check: bool = True):
        self.cert = Certificate(operation, subject)
        self.self_check = self_check

    def add(
        self,
        claim: str,
        check: str,
        data: dict,
        anchor: str,
        outcome: bool | None,
        role: str = "evidence",
        method: str = "structural",
        refs: Sequence[int] = (),
        status: str = "done",
    ) -> int:
        i = len(self.cert.steps)
        data = _jsonable(data)
        s = Step(i, claim, method, check, data, anchor, outcome, role, tuple(refs), status)
        if self.self_check and status == "done":
            got = run_check(s, self.cert.steps)
            if got != outcome:
                raise AssertionError(f"step {i} ({anchor}) records {outcome} but its check gives {got}")
        self.cert.steps.append(s)
        return i

    def extend(self, other: Certificate, prefix: str = "") -> dict[int, int]:
        """Append another certificate's steps, renumbering references."""
        mapping = {}
        for s in other.steps:
            j = len(self.cert.steps)
            mapping[s.index] = j
            self.cert.steps.append(
                Step(j, s.claim, s.method, s.check, s.data, prefix + s.anchor, s.outcome, s.role, tuple(mapping[r] for r in s.refs), s.status)
            )
            if s.check in ("all_of", "dim_difference", "dim_equation"):
                self.cert.steps[-1].data = _remap(s.data, mapping)
        return mapping

    def last(self) -> int:
        return len(self.cert.steps) - 1


def _remap(data, mapping):
    out = dict(data)
    for k in ("minuend", "subtrahend", "lhs"):
        if k in out:
            out[k] = mapping[out[k]]
    for k in ("rhs", "refs"):
        if k in out:
            out[k] = [mapping[r] for r in out[k]]
    return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return int(x)


# decoding helpers


def _monoid(d: Mapping) -> AffineMonoid:
    return AffineMonoid(int(d["ambient_rank"]), [tuple(g) for g in d["generators"]])


def _ring(d: Mapping) -> BaseRing:
    return BaseRing.from_json(d)


def _scalar(ring: BaseRing, v):
    if ring.kind == "product":
        return tuple(f.coerce(Fraction(str(x))) for f, x in zip(ring.factors, v))
    return ring.coerce(Fraction(str(v)))


def _require(cond: bool, msg: str):
    if not cond:
        raise CheckFailed(msg)


# checks


def _note(data, steps):
    return True


def _ring_flag(data, steps):
    return bool(_ring(data["ring"]).flags()[data["flag"]])


def _ring_local(data, steps):
    ring = _ring(data["ring"])
    if data["localized"]:
        return True
    Q = _monoid(data["monoid"])
    return ring.is_local and Q.ngens == 0


def _base_localization(data, steps):
    A = _ring(data["ring"])
    P = BasePrime.from_json(data["base_prime"])
    _require(localize_base(A, P).to_json() == data["local_ring"], "local base ring differs")
    _require(residue_field(A, P).to_json() == data["residue_field"], "residue field differs")
    _require(base_prime_height(A, P) == data["height"], "height of the base prime differs")
    return bool(localize_base(A, P).is_local)


def _cancellative(data, steps):
    d = int(data["ambient_rank"])
    return all(len(g) == d and all(isinstance(a, int) for a in g) for g in data["generators"])


def _torsion_free(data, steps):
    return not data.get("discarded_torsion")


def _root_closed(data, steps):
    Q = _monoid(data["monoid"])
    if "witness" in data:
        w = data["witness"]
        x, n, c = tuple(w["x"]), int(w["n"]), w["coefficients"]
        _require(n >= 2 and min(c, default=0) >= 0, "bad witness multiplier or coefficients")
        _require(reconstruct(Q, c) == tuple(n * a for a in x), "witness coefficients do not give n*x")
        _require(solve_integer(Q.gp_basis.rows, x) is not None, "witness is not in gp(Q)")
        _require(not membership(Q, x), "witness already lies in Q")
        return False
    gens = [tuple(g) for g in data["saturation_generators"]]
    normals = fourier_motzkin_normals(Q.generators, Q.ambient_rank)
    for g, c in zip(gens, data["representations"]):
        _require(min(c, default=0) >= 0 and reconstruct(Q, c) == g, f"representation of {g} is wrong")
        _require(all(dot(n, g) >= 0 for n in normals), f"{g} is outside the cone")
    _require(len(gens) == len(data["representations"]), "missing representations")
    expected, _, _ = saturation_generators(Q)
    _require(set(expected) == set(gens), "saturation generators are incomplete")
    return True


def _face(data, steps):
    Q = _monoid(data["monoid"])
    return check_supporting(Q, data["face_generators"], data["functional"])


def _not_face(data, steps):
    Q = _monoid(data["monoid"])
    _require(check_forced_witness(Q, data["support"], data["witness"]), "forced-generator witness fails")
    return False


def _localization(data, steps):
    Q = _monoid(data["monoid"])
    expected = list(Q.generators) + [tuple(-a for a in Q.generators[i]) for i in data["face_generators"]]
    got = AffineMonoid(Q.ambient_rank, [tuple(g) for g in data["localized"]["generators"]])
    return got.generators == AffineMonoid(Q.ambient_rank, expected).generators


def _units_are_face_group(data, steps):
    L = _monoid(data["localized"])
    units = [L.generators[i] for i in L.unit_indices]
    return hermite_normal_form(units, L.ambient_rank) == hermite_normal_form(data["face_vectors"], L.ambient_rank)


def _generator_units(data, steps):
    L = _monoid(data["localized"])
    lam = data["functional"]
    units = set(L.unit_indices)
    _require(len(data["rows"]) == L.ngens, "one row per generator expected")
    for i, row in enumerate(data["rows"]):
        g = L.generators[i]
        _require(tuple(row["generator"]) == g, "generator mismatch")
        _require(row["unit"] == (i in units), f"unit flag of {g} is wrong")
        _require(row["in_prime"] == (dot(lam, g) > 0), f"prime flag of {g} is wrong")
    return all(r["in_prime"] != r["unit"] for r in data["rows"])


def _iso_pairs(data, steps):
    A = _ring(data["ring"])
    Q = _monoid(data["monoid"])
    lam = data["functional"]
    _require(check_supporting(Q, data["face_generators"], lam), "functional does not cut out the face")
    one = A.one()
    F = AffineMonoid(Q.ambient_rank, [Q.generators[i] for i in data["face_generators"]])
    n = Q.ngens
    _require(len(data["pair_checks"]) == n * (n + 1) // 2, "not every generator pair is checked")
    ok = True
    for rec in data["pair_checks"]:
        i, j = rec["pair"]
        gi, gj = Q.generators[i], Q.generators[j]
        s = tuple(a + b for a, b in zip(gi, gj))
        prod = AlgebraElement(A, Q, ((s, one),)) if dot(lam, s) == 0 else AlgebraElement(A, Q, ())
        imgs = [AlgebraElement(A, F, ((g, one),)) if dot(lam, g) == 0 else AlgebraElement(A, F, ()) for g in (gi, gj)]
        pim = imgs[0] * imgs[1]
        _require(rec["image_of_product"] == prod.to_json(), f"image of product for pair {i},{j} differs")
        _require(rec["product_of_images"] == pim.to_json(), f"product of images for pair {i},{j} differs")
        _require(rec["agree"] == (prod.terms == pim.terms), "agreement flag is wrong")
        ok = ok and rec["agree"]
    for i, where in enumerate(data["placement"]):
        _require(where == ("face" if dot(lam, Q.generators[i]) == 0 else "prime"), "basis placement is wrong")
    return ok


def _laurent(data, steps):
    A = _ring(data["ring"])
    lat = laurent_recognition(A, [tuple(v) for v in data["lattice"]], int(data["ambient_rank"]))
    _require(lat.rank == data["rank"], "Laurent rank differs")
    _require([list(b) for b in lat.basis] == data["basis"], "Laurent basis differs")
    return bool(A.is_regular)


def _zero_divisors(data, steps):
    A = _ring(data["ring"])
    a, b = _scalar(A, data["a"]), _scalar(A, data["b"])
    _require(not A.is_zero(a) and not A.is_zero(b), "zero-divisor witness has a zero factor")
    _require(A.is_zero(A.mul(a, b)), "witness product is not zero")
    return False


def _domain(data, steps):
    _monoid(data["monoid"])
    return bool(_ring(data["ring"]).is_domain)


def _contraction_samples(data, steps):
    Q = _monoid(data["monoid"])
    lam = data["functional"]
    prime_gens = [Q.generators[i] for i in data["prime_generators"]]
    for rec in data["samples"]:
        x = tuple(rec["x"])
        _require(min(rec["coefficients"], default=0) >= 0 and reconstruct(Q, rec["coefficients"]) == x, f"{x} is not certified in Q")
        _require(rec["in_prime"] == (dot(lam, x) > 0), f"prime membership of {x} is wrong")
        ext = any(membership(Q, vec_sub(x, g)) for g in prime_gens)
        _require(rec["in_extended"] == ext, f"extended-ideal membership of {x} is wrong")
    return all(r["in_prime"] == r["in_extended"] for r in data["samples"])


def _all_of(data, steps):
    return all(steps[r].outcome is True for r in data["refs"])


def _chain(data, steps):
    Q = _monoid(data["monoid"])
    chain = data["chain"]
    prev = None
    for link in chain:
        _require(check_supporting(Q, link["face_generators"], link["functional"]), "chain link is not a face")
        s = set(link["face_generators"])
        if prev is not None:
            _require(s < prev, "chain is not strictly decreasing")
        prev = s
    units = [Q.generators[i] for i in Q.unit_indices]
    expected = Q.gp_basis.nrows - hermite_normal_form(units, Q.ambient_rank).nrows
    _require(len(chain) - 1 == data["value"], "chain length differs from the recorded dimension")
    return data["value"] == expected


def _ctx(data) -> PolyRingContext:
    return PolyRingContext(_ring(data["field"]), int(data["nvars"]))


def _krull_dim(data, steps):
    ctx = _ctx(data)
    gens = [ctx.from_json(p) for p in data["generators"]]
    basis = [ctx.from_json(p) for p in data["basis"]]
    for f in gens:
        _require(not reduce(ctx, f, basis), "a generator does not reduce to zero")
    for i in range(len(basis)):
        for j in range(i):
            _require(not reduce(ctx, _spoly(ctx, basis[i], basis[j]), basis), "an S-pair does not reduce to zero")
    _require(_canonical(ctx, buchberger(ctx, gens)) == _canonical(ctx, basis), "basis is not the reduced Gröbner basis")
    S = max_independent_set(ctx.nvars, leading_monomials(ctx, basis))
    value = -1 if S is None else len(S)
    _require(value == data["value"], "independent-set dimension differs")
    return True


def _value(steps, i):
    return steps[i].data["value"]


def _dim_difference(data, steps):
    v = data["base_height"] + _value(steps, data["minuend"]) - _value(steps, data["subtrahend"])
    _require(v == data["value"], "dimension difference differs")
    return True


def _dim_equation(data, steps):
    lhs = _value(steps, data["lhs"])
    rhs = sum(_value(steps, r) for r in data["rhs"])
    return lhs == rhs


CHECKS: dict[str, Callable[[dict, list], bool]] = {
    "note": _note,
    "ring_flag": _ring_flag,
    "ring_local": _ring_local,
    "base_localization": _base_localization,
    "cancellative": _cancellative,
    "torsion_free_gp": _torsion_free,
    "root_closed": _root_closed,
    "face": _face,
    "not_face": _not_face,
    "localization": _localization,
    "units_are_face_group": _units_are_face_group,
    "generator_units": _generator_units,
    "iso_pairs": _iso_pairs,
    "laurent": _laurent,
    "zero_divisors": _zero_divisors,
    "domain": _domain,
    "contraction_samples": _contraction_samples,
    "all_of": _all_of,
    "face_chain": _chain,
    "krull_dim": _krull_dim,
    "dim_difference": _dim_difference,
    "dim_equation": _dim_equation,
}


def run_check(step: Step, earlier: Sequence[Step]):
    fn = CHECKS.get(step.check)
    if fn is None:
        raise MalformedCertificate(f"step {step.index}: unknown check kind {step.check!r}")
    try:
        return fn(step.data, list(earlier))
    except CheckFailed:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise CheckFailed(f"unreadable data: {e!r}") from e


@dataclass(frozen=True)
class Verification:
    accepted: bool
    failing_step: int | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {"accepted": self.accepted, "failing_step": self.failing_step, "reason": self.reason}


def _structure(steps: Sequence[Step]) -> None:
    for pos, s in enumerate(steps):
        if s.index != pos:
            raise MalformedCertificate(f"step at position {pos} has index {s.index}")
        if s.role not in ROLES:
            raise MalformedCertificate(f"step {pos}: unknown role {s.role!r}")
        if s.method not in METHODS:
            raise MalformedCertificate(f"step {pos}: unknown method {s.method!r}")
        refs = list(s.refs)
        for k in ("minuend", "subtrahend", "lhs"):
            if k in s.data:
                refs.append(s.data[k])
        refs += list(s.data.get("rhs", [])) + list(s.data.get("refs", []) if s.check == "all_of" else [])
        for r in refs:
            if not isinstance(r, int) or r < 0 or r >= pos:
                raise MalformedCertificate(f"step {pos} refers to step {r}, which is not earlier")
        if s.check == "all_of" and set(s.data.get("refs", [])) - set(s.refs):
            raise MalformedCertificate(f"step {pos} combines steps it does not list as references")


def verify_certificate(doc: Mapping | Certificate) -> Verification:
    """Re-run every step's check from its own data; reject at the first mismatch.

    Raises MalformedCertificate on structural problems (unknown kinds,
    references to the same or later steps, inconsistent numbering).
    """
    cert = doc if isinstance(doc, Certificate) else Certificate.from_json(doc.get("certificate", doc))
    _structure(cert.steps)
    for s in cert.steps:
        if s.status == "skipped":
            if s.outcome is not None:
                return Verification(False, s.index, "skipped step carries an outcome")
            continue
        try:
            got = run_check(s, cert.steps[: s.index])
        except CheckFailed as e:
            return Verification(False, s.index, str(e))
        if got != s.outcome:
            return Verification(False, s.index, f"recorded outcome {s.outcome} but the check gives {got}")
    recorded = doc.get("verdict") if isinstance(doc, Mapping) else None
    if isinstance(doc, Mapping) and "certificate" in doc:
        recorded = doc["certificate"].get("verdict")
    if recorded is not None and recorded != cert.verdict:
        return Verification(False, None, f"recorded verdict {recorded} does not follow from the steps ({cert.verdict})")
    return Verification(True)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
