"""Affine monoids: finitely generated submonoids of Z^d.

Such a monoid is automatically cancellative with torsion-free groupification,
so the interesting predicates are reducedness and root closedness, plus the
constructions (localization at a prime, associated reduced monoid, passing
from a presentation to the cancellative torsion-free quotient).
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import TYPE_CHECKING, Sequence

from ._lp import solve_lp
from .cone import RationalCone, dual_description, hilbert_basis
from .errors import TorsionInQuotient
from .lattice import (
    IntegerMatrix,
    LatticeQuotient,
    Vector,
    dot,
    hermite_normal_form,
    lattice_quotient,
    solve_integer,
    vec_add,
    vec_scale,
    vec_sub,
)

if TYPE_CHECKING:
    from .faces import Face


@dataclass(frozen=True)
class AffineMonoid:
    """Submonoid of Z^d generated by ``generators``.

    Zero and duplicate generators are dropped (order otherwise preserved).
    ``discarded_torsion`` is only set by :func:`from_presentation` when the
    presented monoid had torsion that was thrown away.
    """

    ambient_rank: int
    generators: tuple[Vector, ...]
    discarded_torsion: tuple[int, ...] = ()

    def __post_init__(self):
        clean: list[Vector] = []
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.ambient_rank:
                raise ValueError(f"generator {g} is not in Z^{self.ambient_rank}")
            if any(g) and g not in clean:
                clean.append(g)
        object.__setattr__(self, "generators", tuple(clean))
        object.__setattr__(self, "discarded_torsion", tuple(self.discarded_torsion))

    @classmethod
    def free(cls, d: int) -> "AffineMonoid":
        return cls(d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @cached_property
    def generator_matrix(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows(self.generators, self.ambient_rank)

    @cached_property
    def cone(self) -> RationalCone:
        return dual_description(self.generators, self.ambient_rank)

    @cached_property
    def gp_basis(self) -> IntegerMatrix:
        return hermite_normal_form(self.generators, self.ambient_rank)

    @property
    def rank(self) -> int:
        return self.gp_basis.nrows

    @cached_property
    def unit_indices(self) -> tuple[int, ...]:
        """Generators lying in the lineality space of the cone; they generate Q*."""
        return tuple(i for i, g in enumerate(self.generators) if self.cone.in_lineality(g))

    @cached_property
    def units_basis(self) -> IntegerMatrix:
        return hermite_normal_form([self.generators[i] for i in self.unit_indices], self.ambient_rank)

    @property
    def is_reduced(self) -> bool:
        return not self.unit_indices

    @cached_property
    def _unit_quotient(self) -> LatticeQuotient:
        return lattice_quotient(self.ambient_rank, self.units_basis)

    @cached_property
    def unit_relation(self) -> tuple[int, ...]:
        """Strictly positive integer relation among the unit generators."""
        idx = self.unit_indices
        if not idx:
            return ()
        n = len(idx)
        eq = [([self.generators[i][k] for i in idx], 0) for k in range(self.ambient_rank)]
        ineq = [([-int(i == j) for j in range(n)], -1) for i in range(n)]
        sol = solve_lp([1] * n, ineq=ineq, eq=eq)
        den = lcm(*(x.denominator for x in sol))
        return tuple(int(x * den) for x in sol)

    def to_json(self) -> dict:
        return {"ambient_rank": self.ambient_rank, "generators": [list(g) for g in self.generators]}

    def __contains__(self, x) -> bool:
        return membership(self, x).member


@dataclass(frozen=True)
class PresentedMonoid:
    """Commutative monoid on ``n`` generators modulo relations ``u ~ v``."""

    n: int
    relations: tuple[tuple[Vector, Vector], ...]

    def __post_init__(self):
        rels = []
        for u, v in self.relations:
            u, v = tuple(int(x) for x in u), tuple(int(x) for x in v)
            if len(u) != self.n or len(v) != self.n:
                raise ValueError(f"relation {u} ~ {v} has the wrong length")
            if min(u + v, default=0) < 0:
                raise ValueError(f"relation {u} ~ {v} has negative entries")
            if (u, v) not in rels:
                rels.append((u, v))
        object.__setattr__(self, "relations", tuple(rels))


@dataclass(frozen=True)
class LocalizedMonoid:
    base: AffineMonoid
    face: "Face"
    monoid: AffineMonoid


@dataclass(frozen=True)
class Membership:
    member: bool
    coefficients: tuple[int, ...] | None = None
    reason: str | None = None
    detail: object = None

    def __bool__(self):
        return self.member


def membership(Q: AffineMonoid, x: Sequence[int]) -> Membership:
    """Decide x in Q.

    YES carries nonnegative coefficients on the generators reconstructing x.
    NO carries the reason: outside the span or the cone (with a violated
    facet normal), outside gp(Q), or an exhausted search with its bound.
    The search subtracts non-unit generators, which lowers the sum of the
    facet normals by at least one each step; residues are compared modulo
    the unit lattice.
    """
    x = tuple(int(v) for v in x)
    if len(x) != Q.ambient_rank:
        raise ValueError(f"{x} is not in Z^{Q.ambient_rank}")
    if not any(x):
        return Membership(True, (0,) * Q.ngens)
    cone = Q.cone
    if not cone.in_span(x):
        return Membership(False, reason="outside_span")
    for n in cone.normals:
        if dot(n, x) < 0:
            return Membership(False, reason="outside_cone", detail=n)
    if solve_integer(Q.gp_basis.rows, x) is None:
        return Membership(False, reason="outside_gp")

    quot = Q._unit_quotient
    zero_key = quot.class_key((0,) * Q.ambient_rank)
    units = set(Q.unit_indices)
    steps = [i for i in range(Q.ngens) if i not in units]
    normals = cone.normals
    failed: set = set()

    def search(y):
        key = quot.class_key(y)
        if key == zero_key:
            return []
        if key in failed:
            return None
        for i in steps:
            z = vec_sub(y, Q.generators[i])
            if all(dot(n, z) >= 0 for n in normals):
                rest = search(z)
                if rest is not None:
                    rest.append(i)
                    return rest
        failed.add(key)
        return None

    bound = dot(cone.positive_functional, x)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 2 * bound + 1000))
    try:
        used = search(x)
    finally:
        sys.setrecursionlimit(old)
    if used is None:
        return Membership(False, reason="exhausted", detail=bound)

    coeffs = [0] * Q.ngens
    for i in used:
        coeffs[i] += 1
    rem = x
    for i in used:
        rem = vec_sub(rem, Q.generators[i])
    if any(rem):
        idx = Q.unit_indices
        z = solve_integer([Q.generators[i] for i in idx], rem)
        rel = Q.unit_relation
        t = max(0, max((-(zj // r) if zj < 0 else 0) for zj, r in zip(z, rel)))
        for i, zj, r in zip(idx, z, rel):
            coeffs[i] += zj + t * r
    return Membership(True, tuple(coeffs))


def reconstruct(Q: AffineMonoid, coeffs: Sequence[int]) -> Vector:
    out = (0,) * Q.ambient_rank
    for c, g in zip(coeffs, Q.generators):
        out = vec_add(out, vec_scale(c, g))
    return out


def units_and_reduced(Q: AffineMonoid) -> tuple[IntegerMatrix, bool]:
    return Q.units_basis, Q.is_reduced


def groupification(Q: AffineMonoid) -> tuple[IntegerMatrix, bool]:
    return Q.gp_basis, not Q.discarded_torsion


@dataclass(frozen=True)
class RootClosure:
    root_closed: bool
    saturation: AffineMonoid
    hilbert_basis: tuple[Vector, ...]
    unit_basis: tuple[Vector, ...]
    # coefficient vectors over gens(Q) for every saturation generator (when root closed)
    representations: tuple[tuple[int, ...], ...] = ()
    # {"x": ..., "n": ..., "coefficients": ...} with n*x in Q and x not in Q
    witness: dict | None = field(default=None)


def saturation_generators(Q: AffineMonoid) -> tuple[tuple[Vector, ...], tuple[Vector, ...], tuple[Vector, ...]]:
    hb, units = hilbert_basis(Q.generators, Q.gp_basis.rows, Q.ambient_rank)
    gens = list(hb)
    for u in units:
        gens.append(u)
        gens.append(tuple(-a for a in u))
    return tuple(gens), hb, units


def root_closed_and_saturate(Q: AffineMonoid) -> RootClosure:
    gens, hb, units = saturation_generators(Q)
    sat = AffineMonoid(Q.ambient_rank, gens)
    reps = []
    for x in gens:
        m = membership(Q, x)
        if not m:
            n = 2
            while True:
                mn = membership(Q, vec_scale(n, x))
                if mn:
                    break
                n += 1
            witness = {"x": list(x), "n": n, "coefficients": list(mn.coefficients)}
            return RootClosure(False, sat, hb, units, (), witness)
        reps.append(m.coefficients)
    return RootClosure(True, sat, hb, units, tuple(reps))


def is_root_closed(Q: AffineMonoid) -> bool:
    return root_closed_and_saturate(Q).root_closed


def localize(Q: AffineMonoid, P) -> LocalizedMonoid:
    """Invert the face complementary to the prime ``P``.

    ``P`` may be a MonoidPrime, a Face, or an iterable of face generator
    indices; the latter is validated (NotAFace on failure).
    """
    from .faces import Face, face_from_support

    face = getattr(P, "face", P)
    if not isinstance(face, Face):
        face = face_from_support(Q, face)
    if face.parent != Q:
        raise ValueError("prime belongs to a different monoid")
    gens = list(Q.generators) + [tuple(-a for a in Q.generators[i]) for i in face.indices]
    return LocalizedMonoid(Q, face, AffineMonoid(Q.ambient_rank, gens))


@dataclass(frozen=True)
class ReducedProjection:
    """gp(Q) -> gp(Q)/gp(Q*) in free quotient coordinates."""

    gp_basis: IntegerMatrix
    quotient: LatticeQuotient | None

    def __call__(self, x: Sequence[int]) -> Vector:
        if self.quotient is None:
            return tuple(x)
        y = solve_integer(self.gp_basis.rows, x)
        if y is None:
            raise ValueError(f"{tuple(x)} is not in gp(Q)")
        return self.quotient.project(y)


def reduced_monoid(Q: AffineMonoid) -> tuple[AffineMonoid, ReducedProjection]:
    if Q.is_reduced:
        return Q, ReducedProjection(Q.gp_basis, None)
    B = Q.gp_basis
    unit_coords = [solve_integer(B.rows, Q.generators[i]) for i in Q.unit_indices]
    quot = lattice_quotient(B.nrows, IntegerMatrix.from_rows(unit_coords, B.nrows))
    if quot.torsion:
        raise TorsionInQuotient(quot.torsion)
    proj = ReducedProjection(B, quot)
    red = AffineMonoid(quot.free_rank, [proj(g) for g in Q.generators])
    return red, proj


def from_presentation(P: PresentedMonoid) -> tuple[AffineMonoid, bool]:
    """Cancellative torsion-free quotient of a presented monoid.

    The images of the standard generators in (Z^n / L) / torsion, where L is
    spanned by the differences of the relations.
    """
    diffs = [vec_sub(u, v) for u, v in P.relations]
    quot = lattice_quotient(P.n, IntegerMatrix.from_rows(diffs, P.n))
    gens = [quot.project(tuple(int(i == j) for j in range(P.n))) for i in range(P.n)]
    return AffineMonoid(quot.free_rank, gens, quot.torsion), not quot.torsion

