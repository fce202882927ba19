"""Ambient ring F_p[x_1..x_n]: ring context, sparse polynomials, term orders.

Coefficients are plain ints in [0, p); monomials are exponent tuples of
length n with unbounded non-negative entries. Polynomials are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

import math
import re

Monomial = tuple[int, ...]

MAX_VARS = 8
MAX_CHAR = 1 << 16

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


class RingContext:
    """The ring F_p[vars]: fixes the characteristic and the variable names."""

    __slots__ = ("p", "vars")

    def __init__(self, p: int, vars: tuple[str, ...] | list[str]):
        names = tuple(vars)
        if not (2 <= p < MAX_CHAR):
            raise ValueError(f"characteristic must satisfy 2 <= p < {MAX_CHAR}, got {p}")
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if not (1 <= len(names) <= MAX_VARS):
            raise ValueError(f"need between 1 and {MAX_VARS} variables, got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not (name.isascii() and _NAME_RE.match(name)):
                raise ValueError(f"invalid variable name {name!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "vars", names)

    def __setattr__(self, name, value):
        raise AttributeError("RingContext is immutable")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def __eq__(self, other):
        return (
            isinstance(other, RingContext)
            and self.p == other.p
            and self.vars == other.vars
        )

    def __hash__(self):
        return hash((self.p, self.vars))

    def __repr__(self):
        return f"RingContext(p={self.p}, vars={self.vars})"


def grevlex_key(m: Monomial):
    """Sort key realizing graded reverse lexicographic order (ascending)."""
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    """Sort key realizing lexicographic order with x_1 > x_2 > ... (ascending)."""
    return m


def _check_same_context(a: Polynomial, b: Polynomial):
    if a.ctx != b.ctx:
        raise ValueError(f"ring context mismatch: {a.ctx!r} vs {b.ctx!r}")


class Polynomial:
    """Sparse multivariate polynomial over F_p.

    ``terms`` maps exponent tuples to nonzero coefficients in [1, p); the
    zero polynomial is the empty map. Instances are canonical: equal
    polynomials have identical term maps.
    """

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: RingContext, terms, *, _canonical: bool = False):
        if _canonical:
            clean = terms
        else:
            p = ctx.p
            n = ctx.nvars
            clean: dict[Monomial, int] = {}
            for mono, coeff in dict(terms).items():
                mono = tuple(mono)
                if len(mono) != n:
                    raise ValueError(f"monomial {mono} has wrong arity for {ctx!r}")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in monomial {mono}")
                c = coeff % p
                if c:
                    clean[mono] = (clean.get(mono, 0) + c) % p
                    if not clean[mono]:
                        del clean[mono]
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ctx: RingContext) -> Polynomial:
        return cls(ctx, {}, _canonical=True)

    @classmethod
    def one(cls, ctx: RingContext) -> Polynomial:
        return cls.constant(ctx, 1)

    @classmethod
    def constant(cls, ctx: RingContext, c: int) -> Polynomial:
        c %= ctx.p
        if not c:
            return cls.zero(ctx)
        return cls(ctx, {(0,) * ctx.nvars: c}, _canonical=True)

    @classmethod
    def variable(cls, ctx: RingContext, name: str) -> Polynomial:
        if name not in ctx.vars:
            raise ValueError(f"unknown variable {name!r} in {ctx!r}")
        i = ctx.vars.index(name)
        mono = tuple(1 if j == i else 0 for j in range(ctx.nvars))
        return cls(ctx, {mono: 1}, _canonical=True)

    @classmethod
    def monomial(cls, ctx: RingContext, mono, coeff: int = 1) -> Polynomial:
        return cls(ctx, {tuple(mono): coeff})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and self.is_constant()

    def constant_value(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def num_terms(self) -> int:
        return len(self.terms)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: Polynomial) -> Polynomial:
        _check_same_context(self, other)
        p = self.ctx.p
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = (out.get(mono, 0) + c) % p
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        return Polynomial(self.ctx, out, _canonical=True)

    def __neg__(self) -> Polynomial:
        p = self.ctx.p
        return Polynomial(
            self.ctx, {m: p - c for m, c in self.terms.items()}, _canonical=True
        )

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial) -> Polynomial:
        _check_same_context(self, other)
        p = self.ctx.p
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Monomial, int] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                mono = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                s = (out.get(mono, 0) + c1 * c2) % p
                if s:
                    out[mono] = s
                elif mono in out:
                    del out[mono]
        return Polynomial(self.ctx, out, _canonical=True)

    def scale_term(self, mono: Monomial, coeff: int = 1) -> Polynomial:
        """Multiply by the single term coeff * x^mono (fast path)."""
        p = self.ctx.p
        coeff %= p
        if not coeff:
            return Polynomial.zero(self.ctx)
        out = {}
        for m, c in self.terms.items():
            out[tuple(e1 + e2 for e1, e2 in zip(m, mono))] = (c * coeff) % p
        return Polynomial(self.ctx, out, _canonical=True)

    def frobenius_stretch(self, e: int) -> Polynomial:
        """Return self**(p**e), using that c**(p**e) = c for c in F_p."""
        if e < 0:
            raise ValueError("negative Frobenius power")
        if e == 0:
            return self
        q = self.ctx.p**e
        return Polynomial(
            self.ctx,
            {tuple(x * q for x in m): c for m, c in self.terms.items()},
            _canonical=True,
        )

    def _small_pow(self, r: int) -> Polynomial:
        result = Polynomial.one(self.ctx)
        base = self
        while r:
            if r & 1:
                result = result * base
            r >>= 1
            if r:
                base = base * base
        return result

    def __pow__(self, r: int) -> Polynomial:
        """Binary exponentiation, splitting off Frobenius powers base p.

        f**r is assembled as the product of (f**d_i)**(p**i) over the base-p
        digits d_i of r; each p-power factor is a cheap exponent stretch, so
        intermediate blowup stays proportional to the size of the result.
        """
        if r < 0:
            raise ValueError("negative exponent")
        if r == 0:
            return Polynomial.one(self.ctx)
        if self.is_zero():
            return self
        if len(self.terms) == 1:
            ((m, c),) = self.terms.items()
            return Polynomial(
                self.ctx, {tuple(e * r for e in m): pow(c, r, self.ctx.p)}
            )
        p = self.ctx.p
        result = None
        level = 0
        while r:
            d = r % p
            r //= p
            if d:
                factor = self._small_pow(d).frobenius_stretch(level)
                result = factor if result is None else result * factor
            level += 1
        return result

    # -- comparisons --------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ctx, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def sorted_terms(self, key=grevlex_key, reverse: bool = True):
        """Terms as a list of (monomial, coeff), leading term first by default."""
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    def leading_monomial(self, key=grevlex_key) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=key)

    def __str__(self):
        from .grammar import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({self.ctx.p}, {dict(self.sorted_terms())})"
