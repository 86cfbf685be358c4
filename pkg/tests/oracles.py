"""Brute-force oracles used only by the tests."""
from itertools import product

from logreg.lattice import dot, solve_integer


def lattice_points_in_cone(normals, lattice_rows, bound, d):
    pts = []
    for x in product(range(-bound, bound + 1), repeat=d):
        if all(dot(n, x) >= 0 for n in normals) and solve_integer(lattice_rows, x) is not None:
            pts.append(x)
    return pts


def irreducibles(points):
    """Nonzero points that are not a sum of two nonzero points of the set."""
    s = set(points)
    zero = tuple(0 for _ in next(iter(s)))
    out = []
    for x in s:
        if x == zero:
            continue
        if not any(y != zero and y != x and tuple(a - b for a, b in zip(x, y)) in s for y in s):
            out.append(x)
    return sorted(out)


def bounded_member(gens, x, max_coeff=12):
    """Membership by enumerating coefficient vectors up to ``max_coeff``."""
    for c in product(range(max_coeff + 1), repeat=len(gens)):
        if all(sum(ci * g[k] for ci, g in zip(c, gens)) == x[k] for k in range(len(x))):
            return True
    return False
