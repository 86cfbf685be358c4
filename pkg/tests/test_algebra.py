from fractions import Fraction

import pytest

from logreg.algebra import (
    AlgebraElement,
    BasePrime,
    BaseRing,
    DomainCertificate,
    MonomialIdeal,
    ZeroDivisors,
    face_quotient_iso,
    find_zero_divisors,
    laurent_recognition,
    localize_base,
    normal_form,
    residue_field,
    sample_elements,
)
from logreg.errors import TorsionUnits
from logreg.lattice import IntegerMatrix, lattice_quotient
from logreg.monoid import AffineMonoid
from logreg.spectrum import primes, prime_from_face_indices

Q_ = BaseRing.rationals()
N2 = AffineMonoid.free(2)


def mono(q, c=1, ring=Q_, M=N2):
    return AlgebraElement.monomial(ring, M, q, c)


def test_binomial_square():
    f = mono((1, 0)) + mono((0, 1))
    assert (f * f).as_dict() == {(2, 0): 1, (1, 1): 2, (0, 2): 1}


def test_normal_form_deletes_prime_terms():
    P = prime_from_face_indices(N2, [0])
    f = mono((1, 0)) + mono((0, 1))
    assert normal_form(f, MonomialIdeal(P)).as_dict() == {(1, 0): 1}


def test_multiply_by_zero():
    zero = AlgebraElement(Q_, N2, ())
    assert (mono((1, 1)) * zero).is_zero


def test_monomial_outside_monoid_rejected():
    with pytest.raises(ValueError):
        mono((-1, 0))


@pytest.mark.parametrize(
    "ring, regular, domain, field",
    [
        (BaseRing.rationals(), True, True, True),
        (BaseRing.prime_field(2), True, True, True),
        (BaseRing.integers(), True, True, False),
        (BaseRing.mod(6), True, False, False),
        (BaseRing.mod(4), False, False, False),
        (BaseRing.mod(7), True, True, True),
        (BaseRing.product(Q_, Q_), True, False, False),
    ],
)
def test_ring_flags(ring, regular, domain, field):
    assert (ring.is_regular, ring.is_domain, ring.is_field) == (regular, domain, field)
    assert BaseRing.from_json(ring.to_json()) == ring


def test_dimension_flags():
    assert BaseRing.integers().dimension == 1
    assert BaseRing.product(Q_, Q_).dimension == 0


def test_base_localization():
    Z = BaseRing.integers()
    assert localize_base(Z, BasePrime("p", 3)).label() == "Z_(3)"
    assert residue_field(Z, BasePrime("p", 3)) == BaseRing.prime_field(3)
    assert localize_base(BaseRing.mod(6), BasePrime("p", 3)) == BaseRing.prime_field(3)
    assert localize_base(BaseRing.mod(12), BasePrime("p", 2)) == BaseRing.mod(4)
    with pytest.raises(ValueError):
        localize_base(BaseRing.mod(6), BasePrime("p", 5))


def test_iso_for_axis_prime():
    P = prime_from_face_indices(N2, [0])
    cert = face_quotient_iso(Q_, N2, P)
    assert cert.placement == ("face", "prime")
    assert all(c["agree"] for c in cert.pair_checks)
    assert cert.face_monoid.generators == ((1, 0),)


def test_iso_at_maximal_prime_of_reduced_monoid(quadric):
    cert = face_quotient_iso(Q_, quadric, primes(quadric).maximal)
    assert cert.face_monoid.ngens == 0
    assert cert.unit_face and cert.laurent_rank == 0


def test_iso_with_units_is_laurent(units_monoid):
    cert = face_quotient_iso(Q_, units_monoid, primes(units_monoid).maximal)
    assert cert.unit_face and cert.laurent_rank == 1


@pytest.mark.parametrize("ring", [BaseRing.rationals(), BaseRing.mod(6), BaseRing.product(Q_, Q_)])
def test_iso_round_trip_on_samples(quadric, ring):
    for P in primes(quadric).primes:
        cert = face_quotient_iso(ring, quadric, P)
        for f in sample_elements(ring, quadric, 30, seed=len(P.face.indices)):
            g = cert.inverse(f)
            assert cert.to_quotient(cert.include(g)).terms == cert.to_quotient(f).terms
            # elements of A[F] survive the round trip unchanged
            assert cert.inverse(cert.include(g)).terms == g.terms


def test_normal_form_is_module_map(quadric):
    for P in primes(quadric).primes:
        I = MonomialIdeal(P)
        F = P.face
        fs = [f for f in sample_elements(Q_, quadric, 40, seed=7)]
        face_elems = [normal_form(f, I) for f in fs]
        for f, x in zip(face_elems, reversed(fs)):
            assert normal_form(f * x, I).terms == normal_form(f * normal_form(x, I), I).terms


def test_zero_divisors_product():
    w = find_zero_divisors(BaseRing.product(Q_, Q_), N2)
    assert isinstance(w, ZeroDivisors) and (w.a, w.b) == ((1, 0), (0, 1))


def test_zero_divisors_mod6():
    w = find_zero_divisors(BaseRing.mod(6), N2)
    assert (w.a, w.b) == (2, 3)


def test_domain_certificate_for_integers():
    assert isinstance(find_zero_divisors(BaseRing.integers(), N2), DomainCertificate)


@pytest.mark.parametrize("ring", [BaseRing.integers(), BaseRing.rationals(), BaseRing.prime_field(3)])
def test_no_zero_divisors_in_sampled_products(ring, quadric):
    xs = [f for f in sample_elements(ring, quadric, 80, seed=11) if not f.is_zero]
    ys = [f for f in sample_elements(ring, quadric, 40, seed=12) if not f.is_zero]
    assert len(xs) * len(ys) >= 1000
    for f in xs:
        for g in ys:
            assert not (f * g).is_zero


def test_laurent_recognition_cases():
    assert laurent_recognition(Q_, [(1, 0), (0, 1)], 2).rank == 2
    lr = laurent_recognition(Q_, [(2, 0)], 2)
    assert lr.rank == 1 and lr.basis == ((2, 0),)
    assert laurent_recognition(Q_, [], 2).rank == 0


def test_laurent_rejects_torsion():
    with pytest.raises(TorsionUnits):
        laurent_recognition(Q_, lattice_quotient(2, IntegerMatrix.from_rows([[2, 0]])))
