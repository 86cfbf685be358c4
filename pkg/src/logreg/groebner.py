"""Gröbner bases over Q and F_p, toric ideals and Krull dimension.

This is the independent dimension oracle: it never looks at faces or cones
except in :func:`contract_prime_to_monoid`, which hands the generator set it
finds to the face test. Polynomials are dicts from exponent tuples to
coefficients (Fractions over Q, ints in [0, p) over F_p).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from threading import Lock
from typing import Callable, Mapping, Sequence

from .algebra import BaseRing
from .errors import NotAFace, NotAFaceContraction, ResourceExceeded
from .faces import face_from_support
from .lattice import IntegerMatrix, kernel_basis
from .monoid import AffineMonoid
from .spectrum import MonoidPrime

Monomial = tuple[int, ...]
Poly = dict  # Monomial -> coefficient

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    raw = os.environ.get("LOGREG_ORACLE_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def eliminate_last_key(m: Monomial):
    """Block order: the last variable first, grevlex on the others."""
    return (m[-1], grevlex_key(m[:-1]))


@dataclass(frozen=True)
class PolyRingContext:
    """Polynomial ring over Q or F_p with a fixed variable order and grevlex."""

    field: BaseRing
    nvars: int
    names: tuple[str, ...] = ()
    order: Callable = grevlex_key

    def __post_init__(self):
        if self.field.kind not in ("rationals", "prime_field"):
            raise ValueError(f"the oracle needs a field, got {self.field.label()}")
        if not self.names:
            default = "uvwxyz" if self.nvars <= 6 else None
            names = tuple(default[i] for i in range(self.nvars)) if default else tuple(f"x{i}" for i in range(self.nvars))
            object.__setattr__(self, "names", names)

    @property
    def p(self) -> int:
        return self.field.modulus or 0

    def coeff(self, c):
        if self.p:
            c = Fraction(c)
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return Fraction(c)

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c

    def poly(self, terms: Mapping) -> Poly:
        out: Poly = {}
        for m, c in terms.items():
            m = tuple(int(e) for e in m)
            if len(m) != self.nvars:
                raise ValueError(f"exponent {m} has the wrong length")
            c = self.coeff(c)
            c = self._norm(out.get(m, 0) + c)
            if c:
                out[m] = c
            else:
                out.pop(m, None)
        return out

    def _norm(self, c):
        return c % self.p if self.p else c

    def leading(self, f: Poly) -> Monomial:
        return max(f, key=self.order)

    def sub_scaled(self, f: Poly, c, m: Monomial, g: Poly) -> Poly:
        """f - c * x^m * g."""
        out = dict(f)
        for mg, cg in g.items():
            mm = tuple(a + b for a, b in zip(m, mg))
            v = self._norm(out.get(mm, 0) - c * cg)
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return out

    def monic(self, f: Poly) -> Poly:
        if not f:
            return f
        inv = self.inv(f[self.leading(f)])
        return {m: self._norm(c * inv) for m, c in f.items()}

    def mul(self, f: Poly, g: Poly) -> Poly:
        out: Poly = {}
        for m1, c1 in f.items():
            for m2, c2 in g.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = self._norm(out.get(m, 0) + c1 * c2)
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def with_order(self, order: Callable, extra_vars: int = 0, names: tuple[str, ...] = ()) -> "PolyRingContext":
        return PolyRingContext(self.field, self.nvars + extra_vars, names or self.names + ("t",) * extra_vars, order)

    def format(self, f: Poly) -> str:
        if not f:
            return "0"
        parts = []
        for m in sorted(f, key=self.order, reverse=True):
            c = f[m]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, m) if e
            )
            if self.p and c > self.p // 2:
                c = c - self.p
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = mono if (mono and a == 1) else (f"{a}*{mono}" if mono else f"{a}")
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self, f: Poly) -> list:
        return [
            {"coeff": str(c) if isinstance(c, Fraction) and c.denominator != 1 else int(c), "exponent_vector": list(m)}
            for m, c in sorted(f.items(), key=lambda t: self.order(t[0]), reverse=True)
        ]

    def from_json(self, terms: Sequence[Mapping]) -> Poly:
        return self.poly({tuple(t["exponent_vector"]): Fraction(str(t["coeff"])) for t in terms})


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise ResourceExceeded(f"Gröbner step budget of {self.limit} reduction steps exceeded")


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def reduce(ctx: PolyRingContext, f: Poly, basis: Sequence[Poly], budget: _Budget | None = None) -> Poly:
    """Full reduction of f by ``basis`` (remainder of multivariate division)."""
    f = dict(f)
    rem: Poly = {}
    leads = [(ctx.leading(g), g) for g in basis if g]
    while f:
        m = ctx.leading(f)
        for lm, g in leads:
            if _divides(lm, m):
                if budget:
                    budget.tick()
                c = f[m] * ctx.inv(g[lm])
                f = ctx.sub_scaled(f, c, tuple(a - b for a, b in zip(m, lm)), g)
                break
        else:
            rem[m] = f.pop(m)
    return rem


def _spoly(ctx, f, g):
    lf, lg = ctx.leading(f), ctx.leading(g)
    l = tuple(max(a, b) for a, b in zip(lf, lg))
    s = ctx.sub_scaled({}, -ctx.inv(f[lf]), tuple(a - b for a, b in zip(l, lf)), f)
    return ctx.sub_scaled(s, ctx.inv(g[lg]), tuple(a - b for a, b in zip(l, lg)), g)


def _canonical(ctx, basis):
    return tuple(sorted((tuple(sorted(g.items())) for g in basis), key=lambda t: ctx.order(ctx.leading(dict(t))), reverse=True))


def buchberger(ctx: PolyRingContext, generators: Sequence[Poly], budget: int | None = None) -> list[Poly]:
    """Reduced Gröbner basis (monic, sorted by decreasing leading monomial).

    Pairs are processed smallest lcm first; pairs with coprime leading
    monomials are skipped. Raises ResourceExceeded after ``budget``
    reduction steps (default from LOGREG_ORACLE_BUDGET or 10^6).
    """
    b = _Budget(default_budget() if budget is None else budget)
    G: list[Poly] = []
    for f in generators:
        r = reduce(ctx, f, G, b)
        if r:
            G.append(ctx.monic(r))
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]

    def lcm_key(pair):
        i, j = pair
        l = tuple(max(a, c) for a, c in zip(ctx.leading(G[i]), ctx.leading(G[j])))
        return (ctx.order(l), pair)

    while pairs:
        pairs.sort(key=lcm_key)
        i, j = pairs.pop(0)
        li, lj = ctx.leading(G[i]), ctx.leading(G[j])
        if all(min(a, c) == 0 for a, c in zip(li, lj)):
            continue
        r = reduce(ctx, _spoly(ctx, G[i], G[j]), G, b)
        if r:
            G.append(ctx.monic(r))
            k = len(G) - 1
            pairs.extend((m, k) for m in range(k))
    return _autoreduce(ctx, G, b)


def _autoreduce(ctx, G, budget):
    # drop elements whose leading monomial is divisible by another's, then tail-reduce
    G = [g for g in G if g]
    keep = []
    for i, g in enumerate(G):
        lg = ctx.leading(g)
        if any(
            _divides(ctx.leading(h), lg) and (ctx.leading(h) != lg or j < i)
            for j, h in enumerate(G)
            if j != i
        ):
            continue
        keep.append(g)
    out = []
    for i, g in enumerate(keep):
        rest = keep[:i] + keep[i + 1 :]
        lg = ctx.leading(g)
        tail = {m: c for m, c in g.items() if m != lg}
        r = reduce(ctx, tail, rest, budget)
        r[lg] = g[lg]
        out.append(ctx.monic(r))
    out.sort(key=lambda g: ctx.order(ctx.leading(g)), reverse=True)
    return out


@dataclass(frozen=True, eq=False)
class PolyIdeal:
    """Ideal of a polynomial ring, with a lazily cached reduced Gröbner basis."""

    ctx: PolyRingContext
    generators: tuple[tuple[tuple[Monomial, object], ...], ...]
    budget: int | None = None
    _lock: Lock = field(default_factory=Lock, repr=False, compare=False)

    @classmethod
    def of(cls, ctx: PolyRingContext, polys: Sequence[Mapping], budget: int | None = None) -> "PolyIdeal":
        gens = tuple(tuple(sorted(ctx.poly(p).items())) for p in polys)
        return cls(ctx, tuple(g for g in gens if g), budget)

    @property
    def polys(self) -> list[Poly]:
        return [dict(g) for g in self.generators]

    @cached_property
    def _gb(self) -> list[Poly]:
        return buchberger(self.ctx, self.polys, self.budget)

    @property
    def groebner_basis(self) -> list[Poly]:
        with self._lock:
            return self._gb

    def contains(self, f: Mapping) -> bool:
        return not reduce(self.ctx, self.ctx.poly(f), self.groebner_basis)

    @property
    def is_unit(self) -> bool:
        zero = (0,) * self.ctx.nvars
        return any(set(g) == {zero} for g in self.groebner_basis)

    def format(self) -> list[str]:
        return [self.ctx.format(g) for g in self.groebner_basis]


def monomial(nvars: int, exps: Sequence[int]) -> Poly:
    return {tuple(exps): 1}


def binomial(ctx: PolyRingContext, u: Sequence[int]) -> Poly:
    pos = tuple(max(a, 0) for a in u)
    neg = tuple(max(-a, 0) for a in u)
    return ctx.poly({pos: 1, neg: -1})


def lattice_ideal_generators(Q: AffineMonoid) -> tuple[tuple[int, ...], ...]:
    """Basis of the relation lattice {c : sum c_i g_i = 0}."""
    M = IntegerMatrix.from_rows(Q.generators, Q.ambient_rank).transpose()
    if Q.ngens == 0:
        return ()
    return kernel_basis(M).rows


def saturate_by_variables(ctx: PolyRingContext, polys: Sequence[Poly], budget: int | None = None) -> list[Poly]:
    """I : (x_1 ... x_n)^inf via an extra variable t with t * prod(x) - 1."""
    n = ctx.nvars
    ext = ctx.with_order(eliminate_last_key, 1)
    lifted = [{m + (0,): c for m, c in f.items()} for f in polys]
    lifted.append(ext.poly({(1,) * (n + 1): 1, (0,) * (n + 1): -1}))
    G = buchberger(ext, lifted, budget)
    return [{m[:-1]: c for m, c in g.items()} for g in G if all(m[-1] == 0 for m in g)]


def toric_ideal(Q: AffineMonoid, field_ring: BaseRing | None = None, budget: int | None = None) -> PolyIdeal:
    """The kernel of k[x_1..x_n] -> k[Q], x_i -> e^{g_i}."""
    ctx = PolyRingContext(field_ring or BaseRing.rationals(), Q.ngens)
    binomials = [binomial(ctx, u) for u in lattice_ideal_generators(Q)]
    if not binomials:
        return PolyIdeal.of(ctx, [], budget)
    sat = saturate_by_variables(ctx, binomials, budget)
    ideal = PolyIdeal.of(ctx, sat, budget)
    return ideal


def leading_monomials(ctx: PolyRingContext, G: Sequence[Poly]) -> list[Monomial]:
    return [ctx.leading(g) for g in G if g]


def max_independent_set(nvars: int, leads: Sequence[Monomial]) -> tuple[int, ...] | None:
    """Largest variable set containing the support of no leading monomial.

    Returns None when a leading monomial is constant (unit ideal).
    """
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    if any(not s for s in supports):
        return None
    for k in range(nvars, -1, -1):
        for S in combinations(range(nvars), k):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return S
    return ()


def krull_dim(I: PolyIdeal) -> int:
    """Dimension of k[x]/I; -1 for the unit ideal."""
    S = max_independent_set(I.ctx.nvars, leading_monomials(I.ctx, I.groebner_basis))
    return -1 if S is None else len(S)


def sum_ideal(I: PolyIdeal, polys: Sequence[Mapping]) -> PolyIdeal:
    return PolyIdeal.of(I.ctx, I.polys + [I.ctx.poly(p) for p in polys], I.budget)


def contract_prime_to_monoid(p: PolyIdeal, Q: AffineMonoid, toric: PolyIdeal | None = None) -> MonoidPrime:
    """P = {q : e^q in p}, where p is given by polynomials in the generator variables.

    S is the set of generators whose variable does not reduce to zero modulo
    toric + p; it must be a face, and P is its complement.
    """
    if p.ctx.nvars != Q.ngens:
        raise ValueError("prime polynomials must use one variable per generator")
    toric = toric or toric_ideal(Q, p.ctx.field, p.budget)
    full = PolyIdeal.of(p.ctx, toric.polys + p.polys, p.budget)
    if full.is_unit:
        raise NotAFaceContraction("the ideal is not proper in k[Q]")
    n = Q.ngens
    S = [i for i in range(n) if not full.contains({tuple(int(i == j) for j in range(n)): 1})]
    if S and full.contains({tuple(int(j in S) for j in range(n)): 1}):
        # a face is closed under sums, so its monomials avoid a prime
        raise NotAFaceContraction(f"the product of the generators {tuple(S)} lies in the ideal; the ideal is not prime")
    try:
        face = face_from_support(Q, S)
    except NotAFace as e:
        raise NotAFaceContraction(
            f"generators outside the ideal {tuple(S)} do not form a face (witness {e.witness}); the ideal is likely not prime"
        ) from e
    return MonoidPrime(Q, face)
