import copy
import json

import pytest

from logreg.algebra import BasePrime, BaseRing
from logreg.certificate import Certificate, CertificateBuilder, verify_certificate
from logreg.errors import MalformedCertificate
from logreg.logring import PrimeSpec, is_very_solid, log_ring, main_theorem_check
from logreg.monoid import AffineMonoid

QQ = BaseRing.rationals()


@pytest.fixture
def theorem_doc(quadric):
    cert = main_theorem_check(BaseRing.integers(), quadric, PrimeSpec.monomial("maximal", BasePrime("p", 2)))
    return json.loads(json.dumps(cert.to_json()))


def _first(doc, check):
    return next(s for s in doc["steps"] if s["check"] == check)


def test_emitted_certificate_verifies(theorem_doc):
    assert verify_certificate(theorem_doc).accepted


def test_json_round_trip(theorem_doc):
    again = Certificate.from_json(theorem_doc).to_json()
    assert again == theorem_doc


def test_tampered_saturation_representation(theorem_doc):
    doc = copy.deepcopy(theorem_doc)
    step = _first(doc, "root_closed")
    step["data"]["representations"][0][0] += 1
    v = verify_certificate(doc)
    assert not v.accepted and v.failing_step == step["index"]


def test_tampered_zero_divisor_witness():
    doc = is_very_solid(log_ring(BaseRing.product(QQ, QQ), AffineMonoid.free(1))).to_json()
    doc = json.loads(json.dumps(doc))
    step = _first(doc, "zero_divisors")
    step["data"]["b"] = [1, 1]
    v = verify_certificate(doc)
    assert not v.accepted and v.failing_step == step["index"]


def test_tampered_oracle_dimension(theorem_doc):
    doc = copy.deepcopy(theorem_doc)
    step = _first(doc, "krull_dim")
    step["data"]["value"] += 1
    v = verify_certificate(doc)
    assert not v.accepted and v.failing_step == step["index"]


def test_tampered_iso_pair(theorem_doc):
    doc = copy.deepcopy(theorem_doc)
    step = _first(doc, "iso_pairs")
    step["data"]["pair_checks"][0]["image_of_product"] = [[[9, 9], 1]]
    assert verify_certificate(doc).failing_step == step["index"]


def test_flipped_outcome(theorem_doc):
    doc = copy.deepcopy(theorem_doc)
    step = _first(doc, "ring_flag")
    step["outcome"] = False
    v = verify_certificate(doc)
    assert not v.accepted and v.failing_step == step["index"]


def test_verdict_must_follow(theorem_doc):
    doc = copy.deepcopy(theorem_doc)
    doc["verdict"] = "no"
    assert not verify_certificate(doc).accepted


def test_forward_reference_is_malformed(theorem_doc):
    doc = copy.deepcopy(theorem_doc)
    step = _first(doc, "all_of")
    step["refs"] = [len(doc["steps"]) - 1]
    step["data"]["refs"] = [len(doc["steps"]) - 1]
    with pytest.raises(MalformedCertificate):
        verify_certificate(doc)


def test_self_reference_is_malformed(theorem_doc):
    doc = copy.deepcopy(theorem_doc)
    step = _first(doc, "dim_equation")
    step["data"]["lhs"] = step["index"]
    with pytest.raises(MalformedCertificate):
        verify_certificate(doc)


def test_unknown_check_is_malformed(theorem_doc):
    doc = copy.deepcopy(theorem_doc)
    doc["steps"][0]["check"] = "trust_me"
    with pytest.raises(MalformedCertificate):
        verify_certificate(doc)


def test_missing_steps_is_malformed():
    with pytest.raises(MalformedCertificate):
        verify_certificate({"verdict": "yes"})


def test_builder_refuses_inconsistent_outcome():
    b = CertificateBuilder("demo", {})
    with pytest.raises(AssertionError):
        b.add("Q is a field", "ring_flag", {"ring": BaseRing.integers(), "flag": "is_field"}, "demo", True)


def test_verdict_rules():
    b = CertificateBuilder("demo", {})
    b.add("Z is regular", "ring_flag", {"ring": BaseRing.integers(), "flag": "is_regular"}, "a", True, "hypothesis")
    assert b.cert.verdict == "yes"
    b.add("Z is a field", "ring_flag", {"ring": BaseRing.integers(), "flag": "is_field"}, "b", False)
    assert b.cert.verdict == "no"
    b.add("Z/4 is regular", "ring_flag", {"ring": BaseRing.mod(4), "flag": "is_regular"}, "c", False, "hypothesis")
    assert b.cert.verdict == "unsupported"
