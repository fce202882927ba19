"""Ideal arithmetic in F_p[x_1..x_n].

Ideals carry a generator list and a lazily computed, cached reduced
Groebner basis under grevlex; every predicate (membership, containment,
equality) routes through that canonical basis. Buchberger's algorithm is
used with the coprimality and chain criteria and the normal selection
strategy, which keeps runs deterministic.
"""

from __future__ import annotations

import enum
import heapq

from .grammar import format_poly
from .ring import Monomial, Polynomial, RingContext, grevlex_key, lex_key

BUCHBERGER_PAIR_BUDGET = 200_000


class BudgetExceededError(RuntimeError):
    """A configured computation budget was exhausted before completion."""


class MonomialOrder(enum.Enum):
    GREVLEX = "grevlex"
    LEX = "lex"

    @property
    def key(self):
        return grevlex_key if self is MonomialOrder.GREVLEX else lex_key


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _make_monic(f: Polynomial, key) -> Polynomial:
    lc = f.terms[f.leading_monomial(key)]
    if lc == 1:
        return f
    inv = pow(lc, -1, f.ctx.p)
    return Polynomial(
        f.ctx, {m: (c * inv) % f.ctx.p for m, c in f.terms.items()}, _canonical=True
    )


def normal_form(f: Polynomial, basis, key=grevlex_key) -> Polynomial:
    """Remainder of multivariate division of f by ``basis``.

    The basis polynomials must be nonzero; they need not be monic or a
    Groebner basis (but the remainder is only canonical when they are).
    """
    if f.is_zero() or not basis:
        return f
    p = f.ctx.p
    prepared = [(g.leading_monomial(key), g) for g in basis]

    if all(len(g.terms) == 1 for _, g in prepared):
        # pure monomial basis: reduction just drops divisible terms
        lts = [lt for lt, _ in prepared]
        kept = {
            m: c for m, c in f.terms.items() if not any(_divides(lt, m) for lt in lts)
        }
        return Polynomial(f.ctx, kept, _canonical=True)

    work = dict(f.terms)
    remainder: dict[Monomial, int] = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lt, g in prepared:
            if _divides(lt, m):
                shift = _mono_sub(m, lt)
                factor = (c * pow(g.terms[lt], -1, p)) % p
                for gm, gc in g.terms.items():
                    if gm == lt:
                        continue
                    tm = tuple(a + b for a, b in zip(gm, shift))
                    s = (work.get(tm, 0) - factor * gc) % p
                    if s:
                        work[tm] = s
                    elif tm in work:
                        del work[tm]
                break
        else:
            remainder[m] = c
    return Polynomial(f.ctx, remainder, _canonical=True)


def _s_poly(f: Polynomial, g: Polynomial, key) -> Polynomial:
    lf, lg = f.leading_monomial(key), g.leading_monomial(key)
    lcm = _mono_lcm(lf, lg)
    p = f.ctx.p
    cf = pow(f.terms[lf], -1, p)
    cg = pow(g.terms[lg], -1, p)
    return f.scale_term(_mono_sub(lcm, lf), cf) - g.scale_term(_mono_sub(lcm, lg), cg)


def reduced_groebner(
    generators, ctx: RingContext, key=grevlex_key, pair_budget: int = BUCHBERGER_PAIR_BUDGET
) -> tuple[Polynomial, ...]:
    """The unique reduced Groebner basis of <generators> under ``key``."""
    basis = [g for g in generators if not g.is_zero()]
    if not basis:
        return ()
    if any(g.is_constant() for g in basis):
        return (Polynomial.one(ctx),)
    # deterministic seed order
    basis.sort(key=lambda g: sorted(map(key, g.terms)))
    basis = [_make_monic(g, key) for g in basis]

    lts = [g.leading_monomial(key) for g in basis]
    heap: list = []
    done: set[tuple[int, int]] = set()

    def push_pair(i: int, j: int):
        lcm = _mono_lcm(lts[i], lts[j])
        heapq.heappush(heap, (sum(lcm), key(lcm), i, j))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push_pair(i, j)

    steps = 0
    while heap:
        steps += 1
        if steps > pair_budget:
            raise BudgetExceededError(
                f"Groebner pair budget of {pair_budget} exhausted"
            )
        _, _, i, j = heapq.heappop(heap)
        done.add((i, j))
        li, lj = lts[i], lts[j]
        lcm = _mono_lcm(li, lj)
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue  # coprime leading terms
        chained = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lts[k], lcm):
                continue
            a, b = min(i, k), max(i, k)
            c, d = min(j, k), max(j, k)
            if (a, b) in done and (c, d) in done:
                chained = True
                break
        if chained:
            continue
        s = normal_form(_s_poly(basis[i], basis[j], key), basis, key)
        if s.is_zero():
            continue
        if s.is_constant():
            return (Polynomial.one(ctx),)
        s = _make_monic(s, key)
        basis.append(s)
        lts.append(s.leading_monomial(key))
        new = len(basis) - 1
        for i2 in range(new):
            push_pair(i2, new)

    # minimalize: drop elements whose leading term another one divides
    minimal: list[Polynomial] = []
    for i, g in enumerate(basis):
        lt = lts[i]
        if any(
            _divides(lts[j], lt) and (j < i or lts[j] != lt)
            for j in range(len(basis))
            if j != i
        ):
            continue
        minimal.append(g)
    # inter-reduce tails
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, others, key)
        if not r.is_zero():
            reduced.append(_make_monic(r, key))
    reduced.sort(key=lambda g: key(g.leading_monomial(key)))
    return tuple(reduced)


class Ideal:
    """An ideal of F_p[x_1..x_n] given by finitely many generators.

    Logically immutable; the reduced Groebner basis is computed at most
    once and cached (idempotent, so concurrent duplicate computation is
    harmless). Equality and containment are mathematical, via the basis.
    """

    __slots__ = ("ctx", "generators", "_gb")

    def __init__(self, ctx: RingContext, generators=()):
        gens = tuple(g for g in generators if not g.is_zero())
        for g in gens:
            if g.ctx != ctx:
                raise ValueError("generator from a different ring context")
        self.ctx = ctx
        self.generators = gens
        self._gb: tuple[Polynomial, ...] | None = None

    @classmethod
    def zero(cls, ctx: RingContext) -> Ideal:
        return cls(ctx, ())

    @classmethod
    def unit(cls, ctx: RingContext) -> Ideal:
        return cls(ctx, (Polynomial.one(ctx),))

    def groebner_basis(self) -> tuple[Polynomial, ...]:
        if self._gb is None:
            self._gb = reduced_groebner(self.generators, self.ctx)
        return self._gb

    def _with_basis(self, gb: tuple[Polynomial, ...]) -> Ideal:
        ideal = Ideal(self.ctx, gb)
        ideal._gb = gb
        return ideal

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.groebner_basis() == ()

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.groebner_basis())

    def contains_poly(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def contains(self, other: Ideal) -> bool:
        if self.ctx != other.ctx:
            raise ValueError("ring context mismatch")
        return all(self.contains_poly(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        return self.groebner_basis() == other.groebner_basis()

    __hash__ = None

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: Ideal) -> Ideal:
        if self.ctx != other.ctx:
            raise ValueError("ring context mismatch")
        return Ideal(self.ctx, self.generators + other.generators)

    def __mul__(self, other: Ideal) -> Ideal:
        if self.ctx != other.ctx:
            raise ValueError("ring context mismatch")
        return Ideal(
            self.ctx, tuple(f * g for f in self.generators for g in other.generators)
        )

    def scale(self, h: Polynomial) -> Ideal:
        """The ideal h * self."""
        if self.ctx != h.ctx:
            raise ValueError("ring context mismatch")
        return Ideal(self.ctx, tuple(h * g for g in self.generators))

    def bracket_power(self, q: int) -> Ideal:
        """The ideal generated by g**q over generators g, for q a power of p.

        Well-defined independently of the generating set. When the reduced
        Groebner basis is already cached its q-th powers are again a reduced
        Groebner basis (Frobenius powers of an S-pair reduction are an
        S-pair reduction, by the p-th power additivity), so the cache is
        transferred instead of recomputed.
        """
        p = self.ctx.p
        e = 0
        qq = q
        while qq > 1 and qq % p == 0:
            qq //= p
            e += 1
        if qq != 1:
            raise ValueError(f"{q} is not a power of the characteristic {p}")
        out = Ideal(self.ctx, tuple(g.frobenius_stretch(e) for g in self.generators))
        if self._gb is not None:
            out._gb = tuple(g.frobenius_stretch(e) for g in self._gb)
        return out

    # -- presentation -------------------------------------------------

    def generator_strings(self) -> list[str]:
        """Sorted formatted strings of the reduced Groebner basis."""
        return sorted(format_poly(g) for g in self.groebner_basis())

    def __repr__(self):
        return f"Ideal<{', '.join(self.generator_strings()) or '0'}>"
