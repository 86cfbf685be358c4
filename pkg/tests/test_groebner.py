import random
import threading
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from logreg.algebra import BaseRing
from logreg.errors import NotAFaceContraction, ResourceExceeded
from logreg.groebner import (
    PolyIdeal,
    PolyRingContext,
    buchberger,
    contract_prime_to_monoid,
    krull_dim,
    reduce,
    toric_ideal,
)
from logreg.monoid import AffineMonoid
from logreg.spectrum import primes

QQ = BaseRing.rationals()
ctx3 = PolyRingContext(QQ, 3)


def P(ctx, d):
    return ctx.poly(d)


def test_single_binomial_is_its_own_basis():
    I = PolyIdeal.of(ctx3, [{(1, 0, 1): 1, (0, 2, 0): -1}])
    assert I.format() == ["v^2 - u*w"]


def test_linear_elimination():
    I = PolyIdeal.of(ctx3, [{(1, 0, 0): 1, (0, 1, 0): -1}, {(0, 1, 0): 1, (0, 0, 1): -1}])
    assert I.format() == ["u - w", "v - w"]


def test_zero_ideal():
    assert PolyIdeal.of(ctx3, []).groebner_basis == []
    assert krull_dim(PolyIdeal.of(ctx3, [])) == 3


def test_maximal_ideal_dimension():
    I = PolyIdeal.of(ctx3, [{(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1}])
    assert krull_dim(I) == 0


def test_unit_ideal_dimension():
    I = PolyIdeal.of(ctx3, [{(1, 0, 0): 1}, {(1, 0, 0): 1, (0, 0, 0): 1}])
    assert I.is_unit and krull_dim(I) == -1


def test_toric_ideals():
    assert toric_ideal(AffineMonoid(2, [(1, 0), (1, 1), (1, 2)])).format() == ["v^2 - u*w"]
    assert toric_ideal(AffineMonoid(1, [(2,), (3,)])).format() == ["u^3 - v^2"]
    assert toric_ideal(AffineMonoid.free(2)).groebner_basis == []


def test_toric_ideal_needs_saturation():
    # the lattice basis binomials alone do not generate the toric ideal here
    Q = AffineMonoid(2, [(1, 0), (1, 1), (1, 2), (1, 3)])
    assert len(toric_ideal(Q).groebner_basis) == 3
    assert krull_dim(toric_ideal(Q)) == 2


def test_toric_ideal_over_prime_field():
    Q = AffineMonoid(2, [(1, 0), (1, 1), (1, 2)])
    I = toric_ideal(Q, BaseRing.prime_field(2))
    assert I.format() == ["v^2 + u*w"] or I.format() == ["v^2 - u*w"]
    assert krull_dim(I) == 2


def test_budget_is_enforced():
    Q = AffineMonoid(2, [(1, 0), (1, 1), (1, 2), (1, 3)])
    with pytest.raises(ResourceExceeded):
        toric_ideal(Q, budget=5)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("LOGREG_ORACLE_BUDGET", "3")
    with pytest.raises(ResourceExceeded):
        toric_ideal(AffineMonoid(2, [(1, 0), (1, 1), (1, 2), (1, 3)]))


def test_determinism_across_threads():
    gens = [{(2, 0, 1): 1, (0, 1, 1): -3}, {(1, 1, 0): 2, (0, 0, 2): 1}, {(0, 2, 0): 1, (1, 0, 0): -1}]
    ref = buchberger(ctx3, [ctx3.poly(g) for g in gens])
    out = []

    def run():
        out.append(buchberger(ctx3, [ctx3.poly(g) for g in gens]))

    ts = [threading.Thread(target=run) for _ in range(4)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert all(r == ref for r in out)


def _sympy_basis(polys, nvars):
    xs = sympy.symbols(f"x0:{nvars}")
    exprs = [sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[x**e for x, e in zip(xs, m)]) for m, c in p.items()) for p in polys]
    exprs = [e for e in exprs if e != 0]
    if not exprs:
        return []
    G = sympy.groebner(exprs, *xs, order="grevlex", domain="QQ")
    out = []
    for g in G.exprs:
        poly = sympy.Poly(g, *xs)
        lc = poly.LC(order="grevlex")
        out.append({tuple(m): Fraction(int((c / lc).p), int((c / lc).q)) for m, c in poly.terms()})
    return out


term = st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3))
poly = st.lists(term, min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(st.lists(poly, min_size=1, max_size=3))
def test_buchberger_matches_sympy(raw):
    polys = [ctx3.poly({m: c for m, c in p}) for p in raw]
    ours = buchberger(ctx3, polys, budget=200000)
    theirs = _sympy_basis(polys, 3)
    key = lambda g: sorted(g.items())
    assert sorted(map(key, ours)) == sorted(map(key, theirs))


def test_toric_quotient_has_no_zero_divisors():
    Q = AffineMonoid(2, [(1, 0), (1, 1), (1, 2), (1, 3)])
    I = toric_ideal(Q)
    G = I.groebner_basis
    ctx = I.ctx
    rng = random.Random(3)

    def sample():
        while True:
            f = ctx.poly({tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-2, 2) for _ in range(rng.randint(1, 3))})
            f = reduce(ctx, f, G)
            if f:
                return f

    xs = [sample() for _ in range(40)]
    ys = [sample() for _ in range(25)]
    for f in xs:
        for g in ys:
            assert reduce(ctx, ctx.mul(f, g), G)


N2 = AffineMonoid.free(2)
ctx2 = PolyRingContext(QQ, 2)


def test_contraction_of_axis_prime():
    p = PolyIdeal.of(ctx2, [{(0, 1): 1}])
    assert contract_prime_to_monoid(p, N2).face.indices == (0,)


def test_contraction_of_non_monomial_prime():
    p = PolyIdeal.of(ctx2, [{(1, 0): 1, (0, 0): -1}])
    assert contract_prime_to_monoid(p, N2).is_empty


def test_contraction_of_maximal_monomial_prime():
    p = PolyIdeal.of(ctx2, [{(1, 0): 1}, {(0, 1): 1}])
    P = contract_prime_to_monoid(p, N2)
    assert P.face.indices == ()


def test_contraction_rejects_non_prime():
    with pytest.raises(NotAFaceContraction):
        contract_prime_to_monoid(PolyIdeal.of(ctx2, [{(1, 1): 1}]), N2)


def test_contraction_rejects_non_face_support(quadric):
    # v in p but u, w not: {u, w} is not a face of the quadric
    ctx = PolyRingContext(QQ, 3)
    with pytest.raises(NotAFaceContraction):
        contract_prime_to_monoid(PolyIdeal.of(ctx, [{(0, 1, 0): 1}]), quadric)


@pytest.mark.parametrize(
    "gens",
    [
        [(1,)],
        [(1, 0), (0, 1)],
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        [(2,), (3,)],
        [(1, 0), (1, 1), (1, 2)],
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 0), (-1, 0), (0, 1)],
    ],
)
def test_bridge_identity(gens):
    Q = AffineMonoid(len(gens[0]), gens)
    assert krull_dim(toric_ideal(Q)) == primes(Q).dimension + Q.units_basis.nrows
