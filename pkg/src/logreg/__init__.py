"""Exact computations with affine monoids, their algebras and log structures."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    BasePrime,
    BaseRing,
    MonomialIdeal,
    face_quotient_iso,
    find_zero_divisors,
    laurent_recognition,
    normal_form,
)
from .certificate import Certificate, verify_certificate
from .errors import (
    LogRegError,
    MalformedCertificate,
    NotAFace,
    NotAFaceContraction,
    ParseError,
    ResourceExceeded,
    TorsionInQuotient,
    TorsionUnits,
    UnsupportedHypotheses,
)
from .faces import Face, brute_force_faces, enumerate_faces, face_from_support
from .groebner import PolyIdeal, PolyRingContext, buchberger, contract_prime_to_monoid, krull_dim, toric_ideal
from .logring import (
    LogRingDescriptor,
    PrimeSpec,
    face_quotient_certificate,
    is_local_log,
    is_log_regular,
    is_very_solid,
    localize_log_ring,
    log_ideal,
    log_ring,
    main_theorem_check,
)
from .monoid import (
    AffineMonoid,
    PresentedMonoid,
    from_presentation,
    is_root_closed,
    localize,
    membership,
    reduced_monoid,
    root_closed_and_saturate,
)
from .spectrum import MonoidPrime, SpecPoset, primes

__all__ = [name for name in dir() if not name.startswith("_")]
