"""p^e-th Frobenius roots via decomposition over the p^e-power basis.

Over R = F_p[x_1..x_n] the monomials x^lam with lam in [0, p^e)^n form a
free basis of R over the subring of p^e-th powers, so every f splits
uniquely as f = sum_lam (g_lam)^{p^e} x^lam. Because coefficients in F_p
are fixed by Frobenius, the split is a per-term exponent div/mod: the term
c*x^mu lands in residue class lam = mu mod p^e and contributes
c*x^{mu div p^e} to g_lam.

The Frobenius root of <f> (the smallest ideal I with I^{[p^e]} containing
f) is then exactly the ideal generated by the parts g_lam, and the root of
a general ideal is the sum of the roots of any set of generators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import Ideal
from .ring import Monomial, Polynomial, RingContext


@dataclass(frozen=True)
class FrobeniusDecomposition:
    """The split f = sum over lam of parts[lam]^(p^e) * x^lam."""

    ctx: RingContext
    e: int
    parts: dict[Monomial, Polynomial]

    def reconstruct(self) -> Polynomial:
        total = Polynomial.zero(self.ctx)
        for lam, g in self.parts.items():
            total = total + g.frobenius_stretch(self.e).scale_term(lam)
        return total


def frobenius_decompose(f: Polynomial, e: int) -> FrobeniusDecomposition:
    if e < 1:
        raise ValueError(f"Frobenius level must be >= 1, got {e}")
    q = f.ctx.p**e
    split: dict[Monomial, dict[Monomial, int]] = {}
    for mono, c in f.terms.items():
        lam = tuple(x % q for x in mono)
        outer = tuple(x // q for x in mono)
        split.setdefault(lam, {})[outer] = c
    parts = {
        lam: Polynomial(f.ctx, terms, _canonical=True) for lam, terms in split.items()
    }
    return FrobeniusDecomposition(f.ctx, e, parts)


def frobenius_root_poly(f: Polynomial, e: int) -> Ideal:
    """The minimal ideal I with I^{[p^e]} containing f."""
    return Ideal(f.ctx, tuple(frobenius_decompose(f, e).parts.values()))


def frobenius_root_ideal(I: Ideal, e: int) -> Ideal:
    """The minimal ideal J with J^{[p^e]} containing I.

    Generated by the decomposition parts of any generating set; the result
    does not depend on the choice (the generator-independence property is
    exercised by the test suite).
    """
    if e < 1:
        raise ValueError(f"Frobenius level must be >= 1, got {e}")
    gens: list[Polynomial] = []
    for g in I.generators:
        gens.extend(frobenius_decompose(g, e).parts.values())
    return Ideal(I.ctx, tuple(gens))


def verify_star(I: Ideal, e: int) -> bool:
    """Check I_e(I)^{[p^e]} contains I (true for every ideal and level)."""
    root = frobenius_root_ideal(I, e)
    return root.bracket_power(I.ctx.p**e).contains(I)
