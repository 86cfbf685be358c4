import pytest
from hypothesis import given, settings, strategies as st

from logreg.errors import NotAFace
from logreg.faces import brute_force_faces, check_forced_witness, check_supporting, enumerate_faces, face_from_support
from logreg.monoid import AffineMonoid, localize, membership
from logreg.spectrum import (
    dim_and_height,
    is_in_prime,
    localized_prime_correspondence,
    primes,
    rank_dimension,
)

from conftest import monoid


def test_faces_of_quadric(quadric):
    assert [f.indices for f in enumerate_faces(quadric)] == [(), (0,), (2,), (0, 1, 2)]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_free_monoid_has_boolean_face_lattice(d):
    assert len(enumerate_faces(AffineMonoid.free(d))) == 2**d


def test_non_face_witness(quadric):
    with pytest.raises(NotAFace) as e:
        face_from_support(quadric, [1])
    w = e.value.witness
    assert check_forced_witness(quadric, (1,), w)
    # 2*(1,1) = (1,0) + (1,2)
    assert w["multiplier"] == 2 and w["scale"] == 1


def test_tampered_witness_fails(quadric):
    with pytest.raises(NotAFace) as e:
        face_from_support(quadric, [1])
    w = dict(e.value.witness)
    w["coefficients"] = [c + 1 for c in w["coefficients"]]
    assert not check_forced_witness(quadric, (1,), w)


def test_faces_with_units(units_monoid):
    assert [f.indices for f in enumerate_faces(units_monoid)] == [(0, 1), (0, 1, 2)]


def test_spectrum_counts(quadric, units_monoid, numsg23):
    assert len(primes(quadric).primes) == 4 and primes(quadric).dimension == 2
    assert len(primes(units_monoid).primes) == 2 and primes(units_monoid).dimension == 1
    assert primes(numsg23).dimension == 1
    assert len(primes(AffineMonoid(2, [])).primes) == 1


def test_heights_and_local_dimension(quadric):
    spec = primes(quadric)
    for P in spec.primes:
        dim, h, local = dim_and_height(quadric, P)
        assert local == h


def test_prime_membership_two_ways(quadric):
    spec = primes(quadric)
    for P in spec.primes:
        for x in [(1, 0), (1, 1), (2, 1), (3, 6), (2, 4)]:
            assert is_in_prime(P, x) == P.contains(x)


small_gens = st.lists(st.tuples(st.integers(-2, 3), st.integers(-2, 3), st.integers(-1, 2)).filter(any), min_size=1, max_size=5)


@settings(max_examples=40, deadline=None)
@given(small_gens)
def test_faces_match_brute_force(gens):
    Q = AffineMonoid(3, gens)
    assert tuple(f.indices for f in enumerate_faces(Q)) == brute_force_faces(Q)


@settings(max_examples=40, deadline=None)
@given(small_gens)
def test_supporting_functionals_are_valid(gens):
    Q = AffineMonoid(3, gens)
    for f in enumerate_faces(Q):
        assert check_supporting(Q, f.indices, f.functional)


@settings(max_examples=40, deadline=None)
@given(small_gens)
def test_chain_dimension_equals_rank_formula(gens):
    Q = AffineMonoid(3, gens)
    assert primes(Q).dimension == rank_dimension(Q)


@settings(max_examples=25, deadline=None)
@given(small_gens)
def test_localization_spectrum_correspondence(gens):
    Q = AffineMonoid(3, gens)
    for P in primes(Q).primes:
        corr = localized_prime_correspondence(Q, P)
        assert len(corr) == len([q for q in primes(Q).primes if q <= P])
