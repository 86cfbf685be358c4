"""Rational polyhedral cones: dual description and Hilbert bases.

Cones are handled in the coordinates of a lattice basis of their linear span,
where they are full dimensional. Facet normals are reported back in the
ambient lattice, normalized to the unique primitive covector lying in the
span of the rays, so two descriptions of the same cone compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import floor
from typing import Iterable, Sequence

from .lattice import (
    IntegerMatrix,
    Vector,
    determinant,
    dot,
    hermite_normal_form,
    kernel_basis,
    lattice_quotient,
    primitive,
    rank,
    rational_inverse,
    rational_nullspace,
    rational_solve,
    smith_normal_form,
    solve_integer,
    unimodular_inverse,
    vec_mat,
    vec_sub,
)


@dataclass(frozen=True)
class RationalCone:
    ambient_rank: int
    rays: tuple[Vector, ...]
    normals: tuple[Vector, ...]
    span_basis: IntegerMatrix
    lineality: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return self.span_basis.nrows

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def in_span(self, x: Sequence[int]) -> bool:
        if not any(x):
            return True
        if not self.span_basis.rows:
            return False
        return rational_solve(self.span_basis.rows, x) is not None

    def contains(self, x: Sequence[int]) -> bool:
        return self.in_span(x) and all(dot(n, x) >= 0 for n in self.normals)

    def in_lineality(self, x: Sequence[int]) -> bool:
        return self.in_span(x) and all(dot(n, x) == 0 for n in self.normals)

    @cached_property
    def positive_functional(self) -> Vector:
        """Sum of the facet normals: zero on the lineality space, positive off it."""
        out = [0] * self.ambient_rank
        for n in self.normals:
            out = [a + b for a, b in zip(out, n)]
        return tuple(out)


def _clean_rays(rays: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    seen = []
    for r in rays:
        r = tuple(int(x) for x in r)
        if any(r) and r not in seen:
            seen.append(r)
    return tuple(seen)


def _span_coordinates(rays: Sequence[Vector], ambient_rank: int):
    """Lattice basis B of the lattice spanned by rays, and the rays' coordinates."""
    B = hermite_normal_form(rays, ambient_rank)
    coords = [solve_integer(B.rows, r) for r in rays]
    return B, coords


def _to_ambient(B: IntegerMatrix, f: Sequence) -> Vector:
    """The primitive ambient covector in the row span of B that restricts to f."""
    BBt = [[dot(a, b) for b in B.rows] for a in B.rows]
    inv = rational_inverse(BBt)
    a = [sum(inv[i][j] * f[j] for j in range(len(f))) for i in range(len(f))]
    n = [sum(a[i] * B.rows[i][k] for i in range(len(a))) for k in range(B.cols)]
    return primitive(n)


def _dd_extreme_rays(constraints: Sequence[Sequence[int]], dim: int):
    """Double description of {y in R^dim : a @ y >= 0 for all constraints a}.

    Returns (lineality basis, extreme rays). Adjacency uses the combinatorial
    test on zero sets.
    """
    lin: list[Vector] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[Vector, frozenset]] = []
    for k, a in enumerate(constraints):
        vals = [dot(a, l) for l in lin]
        idx = next((i for i, v in enumerate(vals) if v != 0), None)
        if idx is not None:
            l0, v0 = lin[idx], vals[idx]
            if v0 < 0:
                l0, v0 = tuple(-x for x in l0), -v0
            new_lin = []
            for i, l in enumerate(lin):
                if i == idx:
                    continue
                v = dot(a, l)
                new_lin.append(primitive([v0 * x - v * y for x, y in zip(l, l0)]))
            new_rays = []
            for r, z in rays:
                v = dot(a, r)
                new_rays.append((primitive([v0 * x - v * y for x, y in zip(r, l0)]), z | {k}))
            new_rays.append((l0, frozenset(range(k))))
            lin, rays = new_lin, new_rays
            continue
        pos, zero, neg = [], [], []
        for r, z in rays:
            v = dot(a, r)
            (pos if v > 0 else neg if v < 0 else zero).append((r, z, v))
        new_rays = [(r, z) for r, z, _ in pos] + [(r, z | {k}) for r, z, _ in zero]
        for p, zp, vp in pos:
            for n, zn, vn in neg:
                common = zp & zn
                if any(common <= z for r, z in rays if r != p and r != n):
                    continue
                comb = primitive([vp * x - vn * y for x, y in zip(n, p)])
                new_rays.append((comb, common | {k}))
        rays = new_rays
    out = []
    for r, _ in rays:
        if any(r) and r not in out:
            out.append(r)
    return lin, out


def dual_description(rays: Iterable[Sequence[int]], ambient_rank: int) -> RationalCone:
    """Irredundant facet normals of cone(rays), computed by double description.

    The normals describe the cone inside the linear span of the rays; the
    lineality space is returned as a basis of primitive vectors.
    """
    rays = _clean_rays(rays)
    if not rays:
        return RationalCone(ambient_rank, (), (), IntegerMatrix.zeros(0, ambient_rank), ())
    B, coords = _span_coordinates(rays, ambient_rank)
    r = B.nrows
    lin, extreme = _dd_extreme_rays(coords, r)
    assert not lin, "cone is full dimensional in span coordinates"
    normals = sorted(_to_ambient(B, f) for f in extreme)
    lineality = _lineality(B, [tuple(f) for f in extreme])
    return RationalCone(ambient_rank, rays, tuple(normals), B, lineality)


def _lineality(B: IntegerMatrix, coord_normals) -> tuple[Vector, ...]:
    r = B.nrows
    if not coord_normals:
        basis = [list(row) for row in B.rows]
    else:
        ys = rational_nullspace(coord_normals, r)
        basis = [[sum(y[i] * B.rows[i][k] for i in range(r)) for k in range(B.cols)] for y in ys]
    if not basis:
        return ()
    H = hermite_normal_form([primitive(v) for v in basis], B.cols)
    return H.rows


def fourier_motzkin_normals(rays: Iterable[Sequence[int]], ambient_rank: int) -> tuple[Vector, ...]:
    """Facet normals of cone(rays) by eliminating the multipliers.

    Independent of the double description; used as a cross-check on small
    instances (elimination blows up quickly).
    """
    rays = _clean_rays(rays)
    if not rays:
        return ()
    B, coords = _span_coordinates(rays, ambient_rank)
    r, m = B.nrows, len(coords)
    nv = m + r
    eqs = [[Fraction(-c[j]) for c in coords] + [Fraction(int(t == j)) for t in range(r)] for j in range(r)]
    ineqs = [[Fraction(int(t == i)) for t in range(nv)] for i in range(m)]
    alive = set(range(m))
    while eqs:
        e = eqs.pop(0)
        v = next((i for i in sorted(alive) if e[i] != 0), None)
        if v is None:
            assert not any(e), "cone is full dimensional in span coordinates"
            continue
        eqs = [[x - (row[v] / e[v]) * y for x, y in zip(row, e)] for row in eqs]
        ineqs = [[x - (row[v] / e[v]) * y for x, y in zip(row, e)] for row in ineqs]
        alive.discard(v)
    for v in sorted(alive):
        P = [row for row in ineqs if row[v] > 0]
        N = [row for row in ineqs if row[v] < 0]
        new = [row for row in ineqs if row[v] == 0]
        for p in P:
            for n in N:
                new.append([(-n[v]) * x + p[v] * y for x, y in zip(p, n)])
        uniq = []
        for row in new:
            if any(row):
                row = list(primitive(row))
                if row not in uniq:
                    uniq.append(row)
        ineqs = uniq
    facets = set()
    for row in ineqs:
        f = row[m:]
        if not any(f):
            continue
        tight = [c for c in coords if dot(f, c) == 0]
        if rank(tight) == r - 1 if tight else r == 1:
            facets.add(_to_ambient(B, primitive(f)))
    return tuple(sorted(facets))


def _parallelepiped_points(V: Sequence[Vector]) -> list[Vector]:
    """Lattice points sum t_i v_i with 0 <= t_i < 1, for independent rows v_i."""
    k = len(V)
    snf = smith_normal_form(IntegerMatrix.from_rows(V, k))
    Winv = unimodular_inverse(snf.V)
    Vinv = rational_inverse(V)
    pts = []
    for c in product(*(range(d) for d in snf.divisors)):
        x = vec_mat(c, Winv)
        t = [sum(Fraction(x[i]) * Vinv[i][j] for i in range(k)) for j in range(k)]
        t = [tj - floor(tj) for tj in t]
        p = tuple(int(sum(t[i] * V[i][j] for i in range(k))) for j in range(k))
        pts.append(p)
    return pts


def hilbert_basis(
    rays: Iterable[Sequence[int]],
    lattice_basis: Sequence[Sequence[int]],
    ambient_rank: int,
) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """Hilbert basis of cone(rays) intersected with a lattice.

    Returns ``(basis, units)``: the minimal generators modulo units and a
    basis of the unit lattice (lineality space intersected with the lattice).
    The cone is split into its lineality part and a pointed quotient; the
    pointed part is covered by simplicial cones spanned by extreme rays and
    fundamental parallelepiped points are minimalized.
    """
    rays = _clean_rays(rays)
    if not rays:
        return (), ()
    L = hermite_normal_form(lattice_basis, ambient_rank)
    # lattice N = L intersected with span(rays), and ray coordinates in it
    rc = []
    for r in rays:
        y = rational_solve(L.rows, r)
        if y is None:
            raise ValueError(f"ray {r} is not in the span of the lattice")
        rc.append(y)
    if rank(rc) < L.nrows:
        perp = [primitive(w) for w in rational_nullspace(rc, L.nrows)]
        Nc = kernel_basis(IntegerMatrix.from_rows(perp, L.nrows))
        BN = [vec_mat(row, L) for row in Nc.rows]
    else:
        BN = list(L.rows)
    k = len(BN)
    coords = [primitive(rational_solve(BN, r)) for r in rays]
    BNm = IntegerMatrix.from_rows(BN, ambient_rank)

    lin, normals = _dd_extreme_rays(coords, k)
    if normals:
        unit_coords = kernel_basis(IntegerMatrix.from_rows(normals, k)).rows
    else:
        unit_coords = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    quot = lattice_quotient(k, IntegerMatrix.from_rows(unit_coords, k))
    assert not quot.torsion
    kp = quot.free_rank
    units = tuple(vec_mat(u, BNm) for u in unit_coords)
    units = hermite_normal_form(units, ambient_rank).rows if units else ()
    if kp == 0:
        return (), units

    proj = _clean_rays(primitive(quot.project(c)) for c in coords)
    _, pnormals = _dd_extreme_rays(proj, kp)
    extreme = [r for r in proj if rank([n for n in pnormals if dot(n, r) == 0] or [[0] * kp]) == kp - 1]
    extreme = sorted(set(extreme))

    cands = set(extreme)
    for sub in combinations(extreme, kp):
        if determinant(sub) == 0:
            continue
        cands.update(p for p in _parallelepiped_points(list(sub)) if any(p))

    phi = [sum(col) for col in zip(*pnormals)]

    def in_cone(x):
        return all(dot(n, x) >= 0 for n in pnormals)

    basis = []
    for x in sorted(cands, key=lambda v: (dot(phi, v), v)):
        if not any(in_cone(vec_sub(x, h)) for h in basis):
            basis.append(x)
    lifted = sorted(vec_mat(quot.lift(b), BNm) for b in basis)
    return tuple(lifted), units
