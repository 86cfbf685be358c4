"""Monoid algebras A[Q] over a small closed family of base rings.

Base rings are descriptors (rationals, prime fields, integers, integers
localized at a prime, integers mod n, finite products of fields) that know
their own domain / field / regular / local flags and can do exact scalar
arithmetic. Elements of A[Q] are finite maps from lattice points to nonzero
scalars.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import factorint, isprime

from .errors import TorsionUnits
from .lattice import IntegerMatrix, LatticeQuotient, Vector, hermite_normal_form, smith_normal_form, vec_add
from .monoid import AffineMonoid, membership
from .spectrum import MonoidPrime

KINDS = ("rationals", "prime_field", "integers", "localized_integers", "mod_n", "product")


@dataclass(frozen=True)
class BaseRing:
    kind: str
    modulus: int | None = None
    factors: tuple["BaseRing", ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown base ring kind {self.kind!r}")
        if self.kind in ("prime_field", "localized_integers"):
            if self.modulus is None or not isprime(self.modulus):
                raise ValueError(f"{self.kind} needs a prime, got {self.modulus}")
        if self.kind == "mod_n" and (self.modulus is None or self.modulus < 2):
            raise ValueError("mod_n needs n >= 2")
        if self.kind == "product":
            if len(self.factors) < 1 or any(not f.is_field for f in self.factors):
                raise ValueError("a product base ring needs field factors")

    @classmethod
    def rationals(cls):
        return cls("rationals")

    @classmethod
    def integers(cls):
        return cls("integers")

    @classmethod
    def prime_field(cls, p: int):
        return cls("prime_field", p)

    @classmethod
    def mod(cls, n: int):
        return cls("mod_n", n)

    @classmethod
    def product(cls, *factors: "BaseRing"):
        return cls("product", None, tuple(factors))

    # flags

    @property
    def is_field(self) -> bool:
        if self.kind in ("rationals", "prime_field"):
            return True
        if self.kind == "mod_n":
            return isprime(self.modulus)
        if self.kind == "product":
            return len(self.factors) == 1
        return False

    @property
    def is_domain(self) -> bool:
        if self.kind == "product":
            return len(self.factors) == 1
        if self.kind == "mod_n":
            return isprime(self.modulus)
        return True

    @property
    def is_regular(self) -> bool:
        if self.kind == "mod_n":
            return all(e == 1 for e in factorint(self.modulus).values())
        return True

    @property
    def is_local(self) -> bool:
        if self.kind in ("rationals", "prime_field", "localized_integers"):
            return True
        if self.kind == "mod_n":
            return len(factorint(self.modulus)) == 1
        if self.kind == "product":
            return len(self.factors) == 1
        return False

    @property
    def dimension(self) -> int:
        return 1 if self.kind in ("integers", "localized_integers") else 0

    @property
    def characteristic(self) -> int:
        if self.kind in ("prime_field", "mod_n"):
            return self.modulus
        return 0

    def flags(self) -> dict:
        return {
            "is_field": self.is_field,
            "is_domain": self.is_domain,
            "is_regular": self.is_regular,
            "is_local": self.is_local,
            "dimension": self.dimension,
        }

    # scalars

    def coerce(self, v):
        k = self.kind
        if k == "product":
            if isinstance(v, (list, tuple)):
                return tuple(f.coerce(x) for f, x in zip(self.factors, v))
            return tuple(f.coerce(v) for f in self.factors)
        if k in ("rationals",):
            return Fraction(v)
        if k == "localized_integers":
            v = Fraction(v)
            if v.denominator % self.modulus == 0:
                raise ValueError(f"{v} is not in Z localized at {self.modulus}")
            return v
        if k == "integers":
            v = Fraction(v)
            if v.denominator != 1:
                raise ValueError(f"{v} is not an integer")
            return int(v)
        v = Fraction(v)
        return int(v.numerator * pow(v.denominator, -1, self.modulus)) % self.modulus

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        if self.kind == "product":
            return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))
        if self.modulus is not None and self.kind in ("prime_field", "mod_n"):
            return (a + b) % self.modulus
        return a + b

    def mul(self, a, b):
        if self.kind == "product":
            return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))
        if self.modulus is not None and self.kind in ("prime_field", "mod_n"):
            return (a * b) % self.modulus
        return a * b

    def neg(self, a):
        if self.kind == "product":
            return tuple(f.neg(x) for f, x in zip(self.factors, a))
        if self.kind in ("prime_field", "mod_n"):
            return (-a) % self.modulus
        return -a

    def is_zero(self, a) -> bool:
        if self.kind == "product":
            return all(f.is_zero(x) for f, x in zip(self.factors, a))
        return a == 0

    def scalar_to_json(self, a):
        if self.kind == "product":
            return [f.scalar_to_json(x) for f, x in zip(self.factors, a)]
        if isinstance(a, Fraction):
            return str(a) if a.denominator != 1 else int(a)
        return int(a)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in ("prime_field", "localized_integers"):
            out["p"] = self.modulus
        elif self.kind == "mod_n":
            out["n"] = self.modulus
        elif self.kind == "product":
            out["factors"] = [f.to_json() for f in self.factors]
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "BaseRing":
        kind = obj.get("kind")
        if kind == "prime_field" or kind == "localized_integers":
            return cls(kind, int(obj["p"]))
        if kind == "mod_n":
            return cls(kind, int(obj["n"]))
        if kind == "product":
            factors = obj.get("factors", [{"kind": "rationals"}, {"kind": "rationals"}])
            return cls("product", None, tuple(cls.from_json(f) for f in factors))
        return cls(kind)

    def label(self) -> str:
        k = self.kind
        if k == "rationals":
            return "Q"
        if k == "integers":
            return "Z"
        if k == "prime_field":
            return f"F{self.modulus}"
        if k == "localized_integers":
            return f"Z_({self.modulus})"
        if k == "mod_n":
            return f"Z/{self.modulus}"
        return "x".join(f.label() for f in self.factors)

    # primes of the base ring

    def primes(self) -> tuple["BasePrime", ...]:
        k = self.kind
        if k in ("rationals", "prime_field"):
            return (BasePrime("zero"),)
        if k == "localized_integers":
            return (BasePrime("zero"), BasePrime("p", self.modulus))
        if k == "mod_n":
            return tuple(BasePrime("p", p) for p in sorted(factorint(self.modulus)))
        if k == "product":
            return tuple(BasePrime("factor", i) for i in range(len(self.factors)))
        raise ValueError("the integers have infinitely many primes")

    def default_prime(self) -> "BasePrime":
        if self.kind in ("integers",):
            return BasePrime("zero")
        return self.primes()[0]


@dataclass(frozen=True)
class BasePrime:
    """A prime of the base ring: the zero ideal, (p), or the kernel of a factor projection."""

    kind: str  # "zero" | "p" | "factor"
    value: int | None = None

    def to_json(self) -> dict:
        if self.kind == "zero":
            return {"zero": True}
        if self.kind == "p":
            return {"p": self.value}
        return {"factor": self.value}

    @classmethod
    def from_json(cls, obj: Mapping | None) -> "BasePrime | None":
        if obj is None:
            return None
        if "p" in obj:
            return cls("p", int(obj["p"]))
        if "factor" in obj:
            return cls("factor", int(obj["factor"]))
        return cls("zero")


def check_base_prime(A: BaseRing, P: BasePrime) -> None:
    k = A.kind
    ok = False
    if P.kind == "zero":
        ok = A.is_domain
    elif P.kind == "p":
        if k in ("integers", "localized_integers"):
            ok = isprime(P.value) and (k == "integers" or P.value == A.modulus)
        elif k == "mod_n":
            ok = isprime(P.value) and A.modulus % P.value == 0
    elif P.kind == "factor":
        ok = k == "product" and 0 <= P.value < len(A.factors)
    if not ok:
        raise ValueError(f"{P.to_json()} is not a prime of {A.label()}")


def localize_base(A: BaseRing, P: BasePrime) -> BaseRing:
    """The local ring A_P as a descriptor."""
    check_base_prime(A, P)
    k = A.kind
    if k in ("rationals", "prime_field"):
        return A
    if k in ("integers", "localized_integers"):
        return BaseRing.rationals() if P.kind == "zero" else BaseRing("localized_integers", P.value)
    if k == "mod_n":
        e = factorint(A.modulus)[P.value]
        return BaseRing.prime_field(P.value) if e == 1 else BaseRing.mod(P.value**e)
    return A.factors[P.value]


def residue_field(A: BaseRing, P: BasePrime) -> BaseRing:
    check_base_prime(A, P)
    k = A.kind
    if k in ("rationals", "prime_field"):
        return A
    if k in ("integers", "localized_integers"):
        return BaseRing.rationals() if P.kind == "zero" else BaseRing.prime_field(P.value)
    if k == "mod_n":
        return BaseRing.prime_field(P.value)
    return A.factors[P.value]


def base_prime_height(A: BaseRing, P: BasePrime) -> int:
    return 1 if (A.kind in ("integers", "localized_integers") and P.kind == "p") else 0


@dataclass(frozen=True)
class AlgebraElement:
    """Finite sum of a_q e^q in A[Q]; zero coefficients are never stored."""

    ring: BaseRing
    monoid: AffineMonoid
    terms: tuple[tuple[Vector, object], ...] = ()

    def __post_init__(self):
        merged: dict = {}
        for q, a in self.terms:
            q = tuple(int(x) for x in q)
            a = self.ring.coerce(a) if not isinstance(a, tuple) or self.ring.kind == "product" else a
            merged[q] = self.ring.add(merged[q], a) if q in merged else a
        clean = tuple(sorted((q, a) for q, a in merged.items() if not self.ring.is_zero(a)))
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, ring, monoid, q, coeff=1, check=True) -> "AlgebraElement":
        if check and not membership(monoid, q):
            raise ValueError(f"{tuple(q)} is not in the monoid")
        return cls(ring, monoid, ((tuple(q), ring.coerce(coeff)),))

    @classmethod
    def from_dict(cls, ring, monoid, d: Mapping, check=True) -> "AlgebraElement":
        if check:
            for q in d:
                if not membership(monoid, q):
                    raise ValueError(f"{tuple(q)} is not in the monoid")
        return cls(ring, monoid, tuple((tuple(q), ring.coerce(a)) for q, a in d.items()))

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other):
        if self.ring != other.ring or self.monoid.ambient_rank != other.monoid.ambient_rank:
            raise ValueError("operands live in different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.ring, self.monoid, self.terms + other.terms)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.ring, self.monoid, tuple((q, self.ring.neg(a)) for q, a in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        out = []
        for q, a in self.terms:
            for r, b in other.terms:
                out.append((vec_add(q, r), self.ring.mul(a, b)))
        return AlgebraElement(self.ring, self.monoid, tuple(out))

    def scale(self, c) -> "AlgebraElement":
        c = self.ring.coerce(c) if not isinstance(c, tuple) or self.ring.kind == "product" else c
        return AlgebraElement(self.ring, self.monoid, tuple((q, self.ring.mul(c, a)) for q, a in self.terms))

    def to_json(self) -> list:
        return [[list(q), self.ring.scalar_to_json(a)] for q, a in self.terms]


@dataclass(frozen=True)
class MonomialIdeal:
    """The ideal A[P] spanned by the monomials e^q with q in the prime P."""

    prime: MonoidPrime

    def contains_monomial(self, q) -> bool:
        return self.prime.contains(q)


def normal_form(f: AlgebraElement, ideal: MonomialIdeal) -> AlgebraElement:
    """Delete the terms supported in the prime."""
    return AlgebraElement(f.ring, f.monoid, tuple((q, a) for q, a in f.terms if not ideal.contains_monomial(q)))


@dataclass(frozen=True)
class IsoCertificate:
    """A[F] -> A[Q] -> A[Q]/A[P] is an isomorphism, with its evidence.

    ``placement[i]`` says whether generator i lies in the face (its class is
    a basis vector of the quotient) or in the prime (its class vanishes).
    ``pair_checks`` records, for every pair of generators, the product of the
    images in A[F] and the image of the product; they must agree.
    """

    ring: BaseRing
    monoid: AffineMonoid
    prime: MonoidPrime
    face_monoid: AffineMonoid
    placement: tuple[str, ...]
    pair_checks: tuple[dict, ...]
    reasons: tuple[str, ...]
    unit_face: bool = False
    laurent_rank: int | None = None

    @property
    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.prime)

    def to_quotient(self, f: AlgebraElement) -> AlgebraElement:
        """A[Q] -> A[Q]/A[P], in normal-form representatives."""
        return normal_form(f, self.ideal)

    def include(self, g: AlgebraElement) -> AlgebraElement:
        """A[F] -> A[Q]."""
        return AlgebraElement(self.ring, self.monoid, g.terms)

    def inverse(self, f: AlgebraElement) -> AlgebraElement:
        """A[Q]/A[P] -> A[F]; a normal form is supported on the face."""
        f = self.to_quotient(f)
        return AlgebraElement(self.ring, self.face_monoid, f.terms)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "monoid": self.monoid.to_json(),
            "face": list(self.prime.face.indices),
            "functional": list(self.prime.face.functional),
            "placement": list(self.placement),
            "pair_checks": list(self.pair_checks),
            "reasons": list(self.reasons),
            "unit_face": self.unit_face,
            "laurent_rank": self.laurent_rank,
        }


def face_quotient_iso(A: BaseRing, Q: AffineMonoid, P: MonoidPrime) -> IsoCertificate:
    F = P.face
    Fm = F.monoid
    placement = tuple("face" if F.contains(g) else "prime" for g in Q.generators)
    ideal = MonomialIdeal(P)
    checks = []
    one = A.one()
    for i in range(Q.ngens):
        for j in range(i, Q.ngens):
            gi, gj = Q.generators[i], Q.generators[j]
            ei = AlgebraElement(A, Q, ((gi, one),))
            ej = AlgebraElement(A, Q, ((gj, one),))
            prod_image = normal_form(ei * ej, ideal)
            img_i, img_j = normal_form(ei, ideal), normal_form(ej, ideal)
            in_face = AlgebraElement(A, Fm, img_i.terms) * AlgebraElement(A, Fm, img_j.terms)
            checks.append(
                {
                    "pair": [i, j],
                    "image_of_product": prod_image.to_json(),
                    "product_of_images": in_face.to_json(),
                    "agree": prod_image.terms == in_face.terms,
                }
            )
    reasons = (
        "injective: a nonzero element of A[F] has no term in the prime, so it is not in A[P]",
        "surjective: every f splits as (terms off the prime) + (terms in the prime)",
    )
    unit_face = F.indices == Q.unit_indices
    rank = None
    if unit_face:
        rank = laurent_recognition(A, F.generators, Q.ambient_rank).rank
    return IsoCertificate(A, Q, P, Fm, placement, tuple(checks), reasons, unit_face, rank)


@dataclass(frozen=True)
class ZeroDivisors:
    a: object
    b: object

    def to_json(self, ring: BaseRing) -> dict:
        return {"a": ring.scalar_to_json(self.a), "b": ring.scalar_to_json(self.b)}


@dataclass(frozen=True)
class DomainCertificate:
    reasons: tuple[str, ...]


def find_zero_divisors(A: BaseRing, F: AffineMonoid) -> ZeroDivisors | DomainCertificate:
    """Constants a, b != 0 with ab = 0 when A is not a domain.

    For a domain A and an affine F the algebra is a domain (cancellative,
    torsion-free groupification), returned as a certificate; nothing is
    searched exhaustively.
    """
    if A.is_domain:
        return DomainCertificate(
            (
                f"{A.label()} is a domain",
                "F is a submonoid of a lattice: cancellative with torsion-free groupification",
            )
        )
    if A.kind == "product":
        n = len(A.factors)
        a = tuple(f.one() if i == 0 else f.zero() for i, f in enumerate(A.factors))
        b = tuple(f.one() if i == 1 else f.zero() for i, f in enumerate(A.factors))
        assert n >= 2
        return ZeroDivisors(a, b)
    n = A.modulus
    p = min(factorint(n))
    return ZeroDivisors(p % n, (n // p) % n)


@dataclass(frozen=True)
class LaurentDescriptor:
    ring: BaseRing
    rank: int
    basis: tuple[Vector, ...]
    divisors: tuple[int, ...]
    regular: bool

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "rank": self.rank,
            "basis": [list(b) for b in self.basis],
            "divisors": list(self.divisors),
            "regular": self.regular,
        }


def laurent_recognition(A: BaseRing, lattice: Sequence[Sequence[int]] | LatticeQuotient, ambient_rank: int | None = None) -> LaurentDescriptor:
    """A[G] as a Laurent polynomial ring over A in rank(G) variables.

    ``lattice`` is either generators of a sublattice of Z^d (always
    torsion-free) or an abstract quotient lattice, which is rejected when it
    has torsion.
    """
    if isinstance(lattice, LatticeQuotient):
        if lattice.torsion:
            raise TorsionUnits(lattice.torsion)
        r = lattice.free_rank
        basis = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        return LaurentDescriptor(A, r, basis, (1,) * r, A.is_regular)
    gens = [tuple(g) for g in lattice]
    if ambient_rank is None:
        ambient_rank = len(gens[0]) if gens else 0
    if not gens:
        return LaurentDescriptor(A, 0, (), (), A.is_regular)
    snf = smith_normal_form(IntegerMatrix.from_rows(gens, ambient_rank))
    basis = hermite_normal_form(gens, ambient_rank).rows
    return LaurentDescriptor(A, snf.rank, basis, tuple(d for d in snf.divisors if d), A.is_regular)


def sample_elements(A: BaseRing, Q: AffineMonoid, count: int, seed: int = 0, max_coeff: int = 3) -> list[AlgebraElement]:
    """Deterministic pseudo-random elements of A[Q] with small support."""
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        terms = []
        for _ in range(rng.randint(1, 3)):
            c = [rng.randint(0, 2) for _ in Q.generators]
            q = (0,) * Q.ambient_rank
            for ci, g in zip(c, Q.generators):
                q = vec_add(q, tuple(ci * x for x in g))
            if A.kind == "product":
                a = tuple(f.coerce(rng.randint(-max_coeff, max_coeff)) for f in A.factors)
            else:
                a = A.coerce(rng.randint(-max_coeff, max_coeff))
            terms.append((q, a))
        out.append(AlgebraElement(A, Q, tuple(terms)))
    return out
