"""Prime ideals of an affine monoid, their poset, dimension and height.

Primes are complements of faces: the empty prime sits over the whole monoid,
the maximal prime Q+ over the unit face. Dimension is the length of the
longest strict chain of primes; the rank formula rank gp(Q) - rank gp(Q*) is
kept as a cross-check only.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .faces import Face, enumerate_faces
from .lattice import Vector
from .monoid import AffineMonoid, localize, membership


@dataclass(frozen=True)
class MonoidPrime:
    parent: AffineMonoid
    face: Face

    @property
    def is_empty(self) -> bool:
        return self.face.is_whole

    @property
    def generator_indices(self) -> tuple[int, ...]:
        """Generators lying in the prime (those outside the face)."""
        f = set(self.face.indices)
        return tuple(i for i in range(self.parent.ngens) if i not in f)

    def contains(self, x: Vector) -> bool:
        """Membership of an element already known to lie in the parent monoid."""
        return not self.face.contains(x)

    def __le__(self, other: "MonoidPrime") -> bool:
        return set(other.face.indices) <= set(self.face.indices)

    def to_json(self) -> dict:
        return {"face_generators": list(self.face.indices)}


def is_in_prime(P: MonoidPrime, x: Vector) -> bool:
    """x in P decided from the monoid side only: x in Q and x not in the face."""
    return bool(membership(P.parent, x)) and not membership(P.face.monoid, x)


@dataclass(frozen=True)
class SpecPoset:
    monoid: AffineMonoid
    primes: tuple[MonoidPrime, ...]

    @cached_property
    def order(self) -> tuple[tuple[int, int], ...]:
        """Pairs (i, j) with primes[i] strictly contained in primes[j]."""
        return tuple(
            (i, j)
            for i, p in enumerate(self.primes)
            for j, q in enumerate(self.primes)
            if i != j and p <= q
        )

    @cached_property
    def heights(self) -> tuple[int, ...]:
        # primes are sorted so that smaller primes (bigger faces) come first
        h = [0] * len(self.primes)
        below = {j: [i for i, jj in self.order if jj == j] for j in range(len(self.primes))}
        for j in range(len(self.primes)):
            h[j] = max((h[i] + 1 for i in below[j]), default=0)
        return tuple(h)

    @property
    def dimension(self) -> int:
        return max(self.heights, default=0)

    @property
    def maximal(self) -> MonoidPrime:
        return self.primes[-1]

    @property
    def minimal(self) -> MonoidPrime:
        return self.primes[0]

    def index(self, P: MonoidPrime) -> int:
        return next(i for i, q in enumerate(self.primes) if q.face.indices == P.face.indices)

    def height(self, P: MonoidPrime) -> int:
        return self.heights[self.index(P)]


def primes(Q: AffineMonoid) -> SpecPoset:
    faces = sorted(enumerate_faces(Q), key=lambda f: (-len(f.indices), f.indices))
    return SpecPoset(Q, tuple(MonoidPrime(Q, f) for f in faces))


def prime_from_face_indices(Q: AffineMonoid, indices) -> MonoidPrime:
    from .faces import face_from_support

    return MonoidPrime(Q, face_from_support(Q, indices))


def maximal_prime(Q: AffineMonoid) -> MonoidPrime:
    return primes(Q).maximal


def dimension(Q: AffineMonoid) -> int:
    return primes(Q).dimension


def dim_and_height(Q: AffineMonoid, P: MonoidPrime) -> tuple[int, int, int]:
    """(dim Q, height of P, dim of Q localized at P)."""
    spec = primes(Q)
    local = primes(localize(Q, P).monoid)
    return spec.dimension, spec.height(P), local.dimension


def rank_dimension(Q: AffineMonoid) -> int:
    return Q.rank - Q.units_basis.nrows


def localized_prime_correspondence(Q: AffineMonoid, P: MonoidPrime) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Match primes of Q_P with primes of Q contained in P.

    Returns face indices in Q (for q contained in P) -> face indices in Q_P.
    A face G of Q containing F_P corresponds to the face of Q_P generated by
    G and the inverted generators. Raises AssertionError if the spectra do
    not match.
    """
    L = localize(Q, P)
    n = Q.ngens
    inverted = {}
    for i in P.face.indices:
        inverted[i] = L.monoid.generators.index(tuple(-a for a in Q.generators[i]))
    spec_q = [p for p in primes(Q).primes if p <= P]
    spec_l = primes(L.monoid).primes
    out = {}
    for q in spec_q:
        G = set(q.face.indices)
        image = set()
        for i in G:
            image.add(L.monoid.generators.index(Q.generators[i]))
            if i in inverted:
                image.add(inverted[i])
        image = tuple(sorted(image))
        match = [p for p in spec_l if p.face.indices == image]
        assert match, f"no prime of the localization over face {sorted(G)}"
        out[q.face.indices] = image
    assert len(out) == len(spec_l), "localization has extra primes"
    assert n <= L.monoid.ngens
    return out
