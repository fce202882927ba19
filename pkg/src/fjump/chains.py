"""Descending ideal chains C_s = I_{s*beta}(g^(a*psi_s(p^beta))).

Each C_s is the annihilator-ideal stand-in for the space killed by the
s-th power of the skew operator m -> g^a * F^beta(m) on the injective hull
of the residue field; that module-theoretic side is never materialized.
The chain descends, stabilizes, and its stable value equals the left limit
of tau at gamma = a/(p^beta - 1). Containments between stable values run
opposite to the containments of the nilpotent spaces they represent
(annihilators reverse inclusions), so ordering reports record the ideal
direction explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frobenius import frobenius_root_poly
from .ideals import BudgetExceededError, Ideal
from .ring import Polynomial
from .testideals import (
    DEFAULT_S_MAX,
    _phi_fixed_point,
    enumerate_jumps,
    tau,
)

CROSS_CHECK_TERM_BUDGET = 200_000


class TotalOrderViolation(RuntimeError):
    """Two stabilized chain values failed to be comparable."""


def psi(e: int, q: int) -> int:
    """The geometric sum 1 + q + ... + q^(e-1) = (q^e - 1)/(q - 1)."""
    if e < 0 or q < 2:
        raise ValueError("need e >= 0 and q >= 2")
    return (q**e - 1) // (q - 1)


@dataclass
class ChainTrace:
    """The chain C_1 contains C_2 contains ..., recorded to stabilization.

    ``terms[s]`` is C_{s+1}; the list ends with the first repeated value,
    so terms[-1] == terms[-2] and stab_index is the first s with
    C_s = C_{s+1}.
    """

    g: Polynomial
    a: int
    beta: int
    terms: list[Ideal]
    stab_index: int

    @property
    def stable(self) -> Ideal:
        return self.terms[-1]


def _binomial_bound(n: int, k: int) -> int:
    out = 1
    for i in range(1, k + 1):
        out = out * (n + i) // i
    return out


def chain(
    g: Polynomial,
    a: int,
    beta: int,
    s_max: int = DEFAULT_S_MAX,
    cross_check: bool = True,
) -> ChainTrace:
    """Run the chain to its fixed point via the step Phi(J) = I_beta(g^a J).

    With ``cross_check`` the first terms (s <= 3) are recomputed from the
    definition, expanding g^(a*psi_s(p^beta)) and taking one Frobenius
    root, and compared; the expansion is skipped when its predicted size
    exceeds an internal budget.
    """
    if g.is_zero():
        raise ValueError("need a nonzero polynomial")
    if a < 0 or beta < 1:
        raise ValueError("need a >= 0 and beta >= 1")
    q = g.ctx.p**beta
    trace = _phi_fixed_point(g, a, beta, Ideal.unit(g.ctx), s_max)
    terms = trace[1:]  # drop the seed <1>; terms[s-1] = C_s
    if len(terms) == 1:
        # the first term already equals the seed; record C_2 = C_1 so the
        # trace ends with the repeated pair like every other trace
        terms.append(terms[0])
    for s in range(1, len(terms)):
        if not terms[s - 1].contains(terms[s]):
            raise AssertionError(f"chain failed to descend at step {s + 1}; this is a bug")
    if cross_check:
        for s in range(1, min(3, len(terms)) + 1):
            n = a * psi(s, q)
            if _binomial_bound(n, g.num_terms() - 1) > CROSS_CHECK_TERM_BUDGET:
                continue  # expanding g^n would be too large; skip the self-check
            direct = frobenius_root_poly(g**n, s * beta)
            if direct != terms[s - 1]:
                raise AssertionError(
                    f"chain recursion disagrees with the definition at s={s}"
                )
    return ChainTrace(g, a, beta, terms, len(terms) - 1)


@dataclass
class NilClass:
    """A stabilized chain value for parameters (a, beta), with gamma."""

    g: Polynomial
    a: int
    beta: int
    representative: Ideal
    gamma: Fraction


def nil_class(
    g: Polynomial, a: int, beta: int, s_max: int = DEFAULT_S_MAX
) -> NilClass:
    trace = chain(g, a, beta, s_max, cross_check=False)
    gamma = Fraction(a, g.ctx.p**beta - 1)
    return NilClass(g, a, beta, trace.stable, gamma)


@dataclass(frozen=True)
class NilComparison:
    """Ordering report for two classes over the same polynomial.

    ``gamma_order`` and ``representative_order`` are each one of
    '<', '=', '>' ; representatives of the class with the larger gamma are
    contained in those of the smaller (the nilpotent spaces themselves
    grow with gamma, the annihilator ideals shrink), recorded in
    ``direction``.
    """

    gamma_order: str
    representative_order: str
    direction: str = "larger gamma gives smaller representative ideal"

    @property
    def consistent(self) -> bool:
        if self.gamma_order == "=":
            return self.representative_order == "="
        flipped = "<" if self.gamma_order == ">" else ">"
        return self.representative_order in ("=", flipped)


def nil_compare(n1: NilClass, n2: NilClass) -> NilComparison:
    """Compare two classes; raises if the representatives are incomparable."""
    if n1.g != n2.g:
        raise ValueError("classes belong to different polynomials")
    gamma_order = "<" if n1.gamma < n2.gamma else (">" if n1.gamma > n2.gamma else "=")
    r1, r2 = n1.representative, n2.representative
    if r1 == r2:
        representative_order = "="
    elif r1.contains(r2):
        representative_order = ">"
    elif r2.contains(r1):
        representative_order = "<"
    else:
        raise TotalOrderViolation(
            f"representatives for gamma={n1.gamma} and gamma={n2.gamma} "
            "are not comparable"
        )
    return NilComparison(gamma_order, representative_order)


def bijection_check(
    g: Polynomial,
    c: Fraction,
    next_jump: Fraction | None = None,
    beta_max: int = 12,
    s_max: int = DEFAULT_S_MAX,
) -> bool:
    """Check that some class (a, beta) realizes tau(g^c) as its stable value.

    Sweeps beta upward taking the least a with gamma = a/(p^beta - 1) > c;
    any gamma at most the next jump must reproduce tau(g^c) exactly (the
    left limit at the next jump equals tau on the gap). When ``next_jump``
    is unknown, mismatches are retried with larger beta since gamma may
    have overshot a jump.
    """
    c = Fraction(c)
    if c < 0:
        raise ValueError(f"need c >= 0, got {c}")
    if next_jump is None:
        scan = enumerate_jumps(g, c + 1, s_max=s_max)
        later = [j for j in scan.coefficients() if j > c]
        if later:
            next_jump = later[0]
    target = tau(g, c, s_max)
    p = g.ctx.p
    for beta in range(1, beta_max + 1):
        den = p**beta - 1
        a = (c.numerator * den) // c.denominator + 1
        gamma = Fraction(a, den)
        if next_jump is not None and gamma > next_jump:
            continue
        rep = nil_class(g, a, beta, s_max).representative
        if rep == target:
            return True
        if next_jump is not None:
            return False
    raise BudgetExceededError(
        f"no class with gamma in ({c}, next jump] found for beta <= {beta_max}"
    )
