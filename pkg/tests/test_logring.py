import pytest

from logreg.algebra import BasePrime, BaseRing
from logreg.errors import NotAFace, NotAFaceContraction, UnsupportedHypotheses
from logreg.logring import (
    PrimeSpec,
    all_monomial_primes,
    is_local_log,
    is_log_regular,
    is_very_solid,
    localize_log_ring,
    log_ideal,
    log_ring,
    main_theorem_check,
)
from logreg.monoid import AffineMonoid
from logreg.certificate import verify_certificate

QQ = BaseRing.rationals()
ZZ = BaseRing.integers()
QxQ = BaseRing.product(QQ, QQ)
N1 = AffineMonoid.free(1)
N2 = AffineMonoid.free(2)


def poly_spec(*polys):
    return PrimeSpec.from_json(
        {"polynomial_generators": [[{"coeff": c, "exponent_vector": list(e)} for e, c in p.items()] for p in polys]}
    )


def test_localized_at_maximal_is_local():
    L = localize_log_ring(log_ring(QQ, N2), PrimeSpec.monomial("maximal"))
    assert L.local_monoid.generators == N2.generators
    assert L.locality.verdict == "yes"


def test_polynomial_ring_is_not_local():
    assert is_local_log(log_ring(QQ, N2)).verdict == "no"


def test_trivial_monoid_over_local_ring_is_local():
    assert is_local_log(log_ring(QQ, AffineMonoid(1, []))).verdict == "yes"


def test_localize_at_axis_monomial():
    L = localize_log_ring(log_ring(QQ, N2), poly_spec({(0, 1): 1}))
    assert L.prime.face.indices == (0,)
    assert set(L.local_monoid.generators) == {(1, 0), (0, 1), (-1, 0)}


def test_localize_at_non_monomial_prime():
    L = localize_log_ring(log_ring(QQ, N2), poly_spec({(1, 0): 1, (0, 0): -1}))
    assert L.prime.is_empty
    assert L.local_monoid.is_reduced is False and L.local_monoid.units_basis.nrows == 2
    assert log_ideal(L).prime.face.indices == tuple(range(L.local_monoid.ngens))


def test_polynomial_prime_needs_field():
    with pytest.raises(UnsupportedHypotheses):
        localize_log_ring(log_ring(ZZ, N2), poly_spec({(0, 1): 1}))


def test_non_prime_polynomial_spec():
    with pytest.raises(NotAFaceContraction):
        localize_log_ring(log_ring(QQ, N2), poly_spec({(1, 1): 1}))


def test_log_ideal_of_sharp_monoid(quadric):
    I = log_ideal(log_ring(QQ, quadric))
    assert I.prime.generator_indices == (0, 1, 2)


def test_log_ideal_with_units(units_monoid):
    I = log_ideal(log_ring(QQ, units_monoid))
    assert I.prime.generator_indices == (2,)


def test_log_ideal_of_trivial_monoid():
    I = log_ideal(log_ring(QQ, AffineMonoid(1, [])))
    assert I.prime.generator_indices == ()


@pytest.mark.parametrize("ring, M, verdict", [(ZZ, N2, "yes"), (QQ, None, "yes"), (QxQ, N1, "no")])
def test_very_solid_examples(ring, M, verdict, quadric):
    cert = is_very_solid(log_ring(ring, M or quadric))
    assert cert.verdict == verdict
    assert verify_certificate(cert.to_json()).accepted


def test_not_very_solid_carries_witness():
    cert = is_very_solid(log_ring(QxQ, N1))
    zd = [s for s in cert.steps if s.check == "zero_divisors"]
    assert zd and zd[0].data["a"] == [1, 0] and zd[0].data["b"] == [0, 1]


def test_trivial_monoid_over_domain_is_very_solid():
    assert is_very_solid(log_ring(ZZ, AffineMonoid(1, []))).verdict == "yes"


def test_log_regular_free_and_quadric(quadric):
    for M in (N2, quadric):
        cert = is_log_regular(localize_log_ring(log_ring(QQ, M), PrimeSpec.monomial("maximal")))
        assert cert.verdict == "yes"
        assert (cert.summary["dim_R"], cert.summary["dim_R_mod_I"], cert.summary["dim_Q"]) == (2, 0, 2)


def test_log_regular_unsupported_for_non_normal(numsg23):
    cert = is_log_regular(localize_log_ring(log_ring(QQ, numsg23), PrimeSpec.monomial("maximal")))
    assert cert.verdict == "unsupported"
    w = cert.step("reduced-monoid-root-closed").data["witness"]
    assert w["x"] == [1] and w["n"] == 2


def test_theorem_over_integers(quadric):
    cert = main_theorem_check(ZZ, quadric, PrimeSpec.monomial("maximal", BasePrime("p", 2)))
    assert cert.verdict == "yes"
    assert (cert.summary["dim_R"], cert.summary["dim_R_mod_I"], cert.summary["dim_Q"]) == (3, 1, 2)


def test_theorem_structural_only(quadric):
    cert = main_theorem_check(ZZ, quadric, PrimeSpec.monomial("maximal", BasePrime("p", 2)), oracle=False)
    assert cert.verdict == "yes" and "dim_R" not in cert.summary
    assert cert.step("structural-only") is not None


def test_theorem_product_ring_every_prime():
    for spec in all_monomial_primes(QxQ, N2):
        assert main_theorem_check(QxQ, N2, spec).verdict == "yes"


def test_theorem_rejects_non_regular_base(quadric):
    cert = main_theorem_check(BaseRing.mod(4), quadric, PrimeSpec.monomial("maximal"))
    assert cert.verdict == "unsupported"
    assert cert.summary["failed_hypothesis"] == "base-ring-regular"
    with pytest.raises(UnsupportedHypotheses):
        main_theorem_check(BaseRing.mod(4), quadric, PrimeSpec.monomial("maximal"), strict=True)


def test_theorem_rejects_discarded_torsion():
    M = AffineMonoid(1, [(1,)], discarded_torsion=(2,))
    assert main_theorem_check(QQ, M, PrimeSpec.monomial("maximal")).verdict == "unsupported"


def test_theorem_bad_face(quadric):
    with pytest.raises(NotAFace):
        main_theorem_check(QQ, quadric, PrimeSpec.monomial([1]))


def test_prime_spec_parse_errors():
    from logreg.errors import ParseError

    with pytest.raises(ParseError) as e:
        PrimeSpec.from_json({"monoid_prime": {"faces": [0]}})
    assert e.value.field == "monoid_prime.face_generators"
    with pytest.raises(ParseError):
        PrimeSpec.from_json({"polynomial_generators": [[{"coeff": 1}]]})
