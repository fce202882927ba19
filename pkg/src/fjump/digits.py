"""Base-p digit dynamics of rationals.

Exact base-p expansions (preperiod + minimal period via remainder-cycle
detection), the mod-m fractional map s -> p*s mod m, orbit analysis, and
reconstruction of a rational from its digit data in the canonical shape
a / (p^d (p^beta - 1)).

Expansions ending in an all-(p-1) period never arise from ``expand`` and
are normalized away by ``reconstruct``: the terminating representative is
the canonical one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def multiplicative_order(p: int, n: int) -> int:
    """Least k >= 1 with p^k = 1 mod n (n coprime to p); order 1 for n = 1."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if n == 1:
        return 1
    t = p % n
    if t == 0:
        raise ValueError(f"{p} and {n} are not coprime")
    k = 1
    while t != 1:
        t = (t * p) % n
        k += 1
        if k > n:
            raise ValueError(f"{p} and {n} are not coprime")
    return k


@dataclass(frozen=True)
class CanonicalForm:
    """A rational written as a / (p^d (p^beta - 1)) with minimal beta."""

    a: int
    d: int
    beta: int
    p: int

    def value(self) -> Fraction:
        return Fraction(self.a, self.p**self.d * (self.p**self.beta - 1))


def canonicalize(c: Fraction, p: int) -> CanonicalForm:
    """Write c > 0 as a / (p^d (p^beta - 1)).

    d is the p-adic valuation of the denominator and beta the
    multiplicative order of p modulo the p-free part (the minimal valid
    exponent; Euler's totient of that part also works but can be much
    larger).
    """
    if c <= 0:
        raise ValueError(f"need a positive rational, got {c}")
    den = c.denominator
    d = 0
    while den % p == 0:
        den //= p
        d += 1
    beta = multiplicative_order(p, den)
    a = c * p**d * (p**beta - 1)
    assert a.denominator == 1
    return CanonicalForm(int(a), d, beta, p)


@dataclass(frozen=True)
class BasePExpansion:
    """Eventually periodic base-p digits: integer_part.preperiod(period)*."""

    p: int
    integer_part: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digit_prefix(self, k: int) -> list[int]:
        """First k fractional digits."""
        out = list(self.preperiod[:k])
        while len(out) < k and self.period:
            out.extend(self.period)
        return out[:k] + [0] * (k - len(out))


def expand(s: Fraction, p: int) -> BasePExpansion:
    """Exact base-p expansion of s >= 0 with minimal preperiod and period."""
    if s < 0:
        raise ValueError(f"need a non-negative rational, got {s}")
    if p < 2:
        raise ValueError(f"base must be >= 2, got {p}")
    integer_part = s.numerator // s.denominator
    num = s.numerator - integer_part * s.denominator
    den = s.denominator
    digits: list[int] = []
    seen: dict[int, int] = {}
    while num and num not in seen:
        seen[num] = len(digits)
        num *= p
        digits.append(num // den)
        num %= den
    if num == 0:
        if not digits:
            return BasePExpansion(p, integer_part, (), ())
        return BasePExpansion(p, integer_part, tuple(digits), (0,))
    start = seen[num]
    return BasePExpansion(p, integer_part, tuple(digits[:start]), tuple(digits[start:]))


def frac_mod(s: Fraction, m: int) -> Fraction:
    """The representative of s modulo m in [0, m)."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    return s - m * (s // m)


@dataclass(frozen=True)
class OrbitReport:
    """Forward orbit of s under t -> p*t mod m, up to the first repeat."""

    s: Fraction
    p: int
    m: int
    orbit: tuple[Fraction, ...]
    entry_index: int
    cycle_length: int


def orbit(s: Fraction, p: int, m: int = 1) -> OrbitReport:
    """Iterate s -> frac_mod(p*s, m) until a value repeats.

    All iterates share a denominator dividing den(s), so the orbit has at
    most m*den(s) elements (at most den(s) when m = 1).
    """
    if not (0 <= s < m):
        raise ValueError(f"need 0 <= s < {m}, got {s}")
    seq: list[Fraction] = [s]
    index = {s: 0}
    while True:
        t = frac_mod(p * seq[-1], m)
        if t in index:
            entry = index[t]
            return OrbitReport(s, p, m, tuple(seq), entry, len(seq) - entry)
        index[t] = len(seq)
        seq.append(t)


def reconstruct(exp: BasePExpansion) -> tuple[Fraction, CanonicalForm]:
    """The exact rational with the given digits, plus its canonical form.

    Digit data need not be minimal; the value is computed exactly, so an
    all-(p-1) period collapses to the terminating representative and the
    returned canonical form is the minimal one.
    """
    p = exp.p
    for digit in exp.preperiod + exp.period:
        if not (0 <= digit < p):
            raise ValueError(f"digit {digit} out of range for base {p}")
    d = len(exp.preperiod)
    pre = 0
    for digit in exp.preperiod:
        pre = pre * p + digit
    value = Fraction(exp.integer_part)
    if exp.period:
        beta = len(exp.period)
        per = 0
        for digit in exp.period:
            per = per * p + digit
        value += Fraction(pre * (p**beta - 1) + per, p**d * (p**beta - 1))
    elif d:
        value += Fraction(pre, p**d)
    if value == 0:
        return value, CanonicalForm(0, 0, 1, p)
    return value, canonicalize(value, p)
