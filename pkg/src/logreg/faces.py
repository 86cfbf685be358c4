"""Faces of affine monoids.

A face is recorded by the indices of the generators it contains together
with a supporting functional: zero on the face, strictly positive on every
other generator. The whole monoid is the face cut out by the zero functional.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable

from ._lp import solve_lp
from .errors import NotAFace
from .lattice import Vector, dot, primitive
from .monoid import AffineMonoid


@dataclass(frozen=True)
class Face:
    parent: AffineMonoid
    indices: tuple[int, ...]
    functional: Vector

    @property
    def generators(self) -> tuple[Vector, ...]:
        return tuple(self.parent.generators[i] for i in self.indices)

    @cached_property
    def monoid(self) -> AffineMonoid:
        return AffineMonoid(self.parent.ambient_rank, self.generators)

    @property
    def dimension(self) -> int:
        return self.monoid.rank

    @property
    def is_whole(self) -> bool:
        return len(self.indices) == self.parent.ngens

    def contains(self, x) -> bool:
        """Face membership for an element already known to lie in the parent."""
        return dot(self.functional, x) == 0

    def __lt__(self, other: "Face") -> bool:
        return (len(self.indices), self.indices) < (len(other.indices), other.indices)

    def to_json(self) -> dict:
        return {"face_generators": list(self.indices), "functional": list(self.functional)}


def check_supporting(Q: AffineMonoid, indices: Iterable[int], functional) -> bool:
    idx = set(indices)
    for i, g in enumerate(Q.generators):
        v = dot(functional, g)
        if (i in idx and v != 0) or (i not in idx and v <= 0):
            return False
    return True


def enumerate_faces(Q: AffineMonoid) -> tuple[Face, ...]:
    """All faces, as intersections of facets of cone(Q), in canonical order.

    Faces are sorted by (number of generators, index tuple); inclusion of
    faces is inclusion of index sets.
    """
    normals = Q.cone.normals
    zero_sets = {}
    for n in normals:
        z = frozenset(i for i, g in enumerate(Q.generators) if dot(n, g) == 0)
        zero_sets.setdefault(z, []).append(n)
    whole = frozenset(range(Q.ngens))
    seen = {whole}
    frontier = [whole]
    while frontier:
        nxt = []
        for s in frontier:
            for z in zero_sets:
                t = s & z
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    faces = []
    for s in seen:
        lam = [0] * Q.ambient_rank
        for n in normals:
            if all(dot(n, Q.generators[i]) == 0 for i in s):
                lam = [a + b for a, b in zip(lam, n)]
        faces.append(Face(Q, tuple(sorted(s)), primitive(lam) if any(lam) else tuple(lam)))
    return tuple(sorted(faces))


def face_from_support(Q: AffineMonoid, support: Iterable[int]) -> Face:
    """Check that ``support`` is the generator set of a face, by exact LP.

    Looks for a functional vanishing on the support and >= 1 off it. On
    failure raises NotAFace with a generator forced into any face containing
    the support, as an explicit nonnegative combination.
    """
    S = tuple(sorted(set(int(i) for i in support)))
    if any(i < 0 or i >= Q.ngens for i in S):
        raise ValueError(f"generator index out of range in {S}")
    d = Q.ambient_rank
    if len(S) == Q.ngens:
        return Face(Q, S, (0,) * d)
    eq = [(list(Q.generators[i]), 0) for i in S]
    ineq = [([-x for x in g], -1) for i, g in enumerate(Q.generators) if i not in S]
    lam = solve_lp([0] * d, ineq=ineq, eq=eq, free=True)
    if lam is not None:
        return Face(Q, S, primitive(lam))
    raise NotAFace(S, forced_generator(Q, S))


def forced_generator(Q: AffineMonoid, S: tuple[int, ...]) -> dict:
    sigma = [sum(Q.generators[i][k] for i in S) for k in range(Q.ambient_rank)]
    n = Q.ngens
    for j in range(n):
        if j in S:
            continue
        g = Q.generators[j]
        # variables: m, c_1..c_n ; m*sigma - sum c_i g_i = g
        eq = [([sigma[k]] + [-Q.generators[i][k] for i in range(n)], g[k]) for k in range(Q.ambient_rank)]
        sol = solve_lp([1] + [0] * n, eq=eq)
        if sol is None:
            continue
        den = lcm(*(Fraction(x).denominator for x in sol))
        ints = [int(x * den) for x in sol]
        return {"generator": j, "multiplier": ints[0], "scale": den, "coefficients": ints[1:]}
    raise AssertionError("no forced generator found for a non-face")


def check_forced_witness(Q: AffineMonoid, S, witness: dict) -> bool:
    """``multiplier * sum(S) == scale * g_j + sum(c_i g_i)`` with c >= 0, scale > 0."""
    j = witness["generator"]
    if j in S or witness["scale"] <= 0 or min(witness["coefficients"], default=0) < 0:
        return False
    for k in range(Q.ambient_rank):
        lhs = witness["multiplier"] * sum(Q.generators[i][k] for i in S)
        rhs = witness["scale"] * Q.generators[j][k] + sum(
            c * g[k] for c, g in zip(witness["coefficients"], Q.generators)
        )
        if lhs != rhs:
            return False
    return True


def brute_force_faces(Q: AffineMonoid) -> tuple[tuple[int, ...], ...]:
    """Every generator subset that passes the LP face test (exponential)."""
    from itertools import combinations

    out = []
    for k in range(Q.ngens + 1):
        for S in combinations(range(Q.ngens), k):
            try:
                face_from_support(Q, S)
            except NotAFace:
                continue
            out.append(S)
    return tuple(sorted(out, key=lambda s: (len(s), s)))
