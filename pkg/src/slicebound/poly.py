"""Sparse multivariate polynomials over F_p in three blocks of n variables.

The blocks (u, v, w) stand for the coordinates of the three points a
zero-sum indicator is evaluated at. Block structure is kept explicit
because the slice decomposition partitions terms by block degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from typing import Iterator

from .errors import BudgetExceededError, MismatchError
from .field import FpScalar, FpVector, PrimeModulus

DEFAULT_TERM_BUDGET = 10_000_000


@dataclass(frozen=True, order=True)
class ExponentVector:
    """Per-variable degrees for the u, v and w blocks; orders lexicographically."""

    u_deg: tuple[int, ...]
    v_deg: tuple[int, ...]
    w_deg: tuple[int, ...]

    def __post_init__(self):
        lengths = {len(self.u_deg), len(self.v_deg), len(self.w_deg)}
        if len(lengths) != 1:
            raise ValueError(f"block lengths differ: {self}")
        if any(e < 0 for block in (self.u_deg, self.v_deg, self.w_deg) for e in block):
            raise ValueError(f"negative exponent in {self}")

    @property
    def n(self) -> int:
        return len(self.u_deg)

    @property
    def u_sum(self) -> int:
        return sum(self.u_deg)

    @property
    def v_sum(self) -> int:
        return sum(self.v_deg)

    @property
    def w_sum(self) -> int:
        return sum(self.w_deg)

    @property
    def total_degree(self) -> int:
        return self.u_sum + self.v_sum + self.w_sum

    @classmethod
    def zero(cls, n: int) -> "ExponentVector":
        z = (0,) * n
        return cls(z, z, z)


@dataclass
class FpPolynomial:
    """Canonical sparse form: no zero coefficients, per-variable degree <= p-1."""

    modulus: PrimeModulus
    n: int
    terms: dict[ExponentVector, int] = dataclass_field(default_factory=dict)

    def __post_init__(self):
        p = self.modulus.p
        cap = p - 1
        cleaned: dict[ExponentVector, int] = {}
        for ev, coeff in self.terms.items():
            if ev.n != self.n:
                raise ValueError(f"exponent vector {ev} does not have {self.n} variables per block")
            if any(e > cap for block in (ev.u_deg, ev.v_deg, ev.w_deg) for e in block):
                raise ValueError(f"exponent vector {ev} exceeds the per-variable cap {cap}")
            if ev.total_degree > cap * self.n:
                raise ValueError(f"exponent vector {ev} exceeds total degree {cap * self.n}")
            c = coeff % p
            if c:
                cleaned[ev] = c
        self.terms = cleaned

    @classmethod
    def constant(cls, modulus: PrimeModulus, n: int, value: int) -> "FpPolynomial":
        return cls(modulus, n, {ExponentVector.zero(n): value})

    def coefficient(self, ev: ExponentVector) -> int:
        return self.terms.get(ev, 0)

    def sorted_terms(self) -> list[tuple[ExponentVector, int]]:
        return sorted(self.terms.items(), key=lambda item: item[0])

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, FpPolynomial)
            and self.modulus == other.modulus
            and self.n == other.n
            and self.terms == other.terms
        )

    def to_json_dict(self) -> dict:
        return {
            "p": self.modulus.p,
            "n": self.n,
            "terms": [
                {
                    "u": list(ev.u_deg),
                    "v": list(ev.v_deg),
                    "w": list(ev.w_deg),
                    "coeff": coeff,
                }
                for ev, coeff in self.sorted_terms()
            ],
        }


def multiply(f: FpPolynomial, g: FpPolynomial) -> FpPolynomial:
    """Term-by-term product; exponents add componentwise."""
    if f.modulus != g.modulus or f.n != g.n:
        raise MismatchError(f"cannot multiply polynomials with different context: {f.modulus} vs {g.modulus}")
    p = f.modulus.p
    acc: dict[ExponentVector, int] = {}
    for ev1, c1 in f.terms.items():
        for ev2, c2 in g.terms.items():
            ev = ExponentVector(
                tuple(a + b for a, b in zip(ev1.u_deg, ev2.u_deg)),
                tuple(a + b for a, b in zip(ev1.v_deg, ev2.v_deg)),
                tuple(a + b for a, b in zip(ev1.w_deg, ev2.w_deg)),
            )
            c = (acc.get(ev, 0) + c1 * c2) % p
            if c:
                acc[ev] = c
            else:
                acc.pop(ev, None)
    return FpPolynomial(f.modulus, f.n, acc)


def factor_expansion(modulus: PrimeModulus, n: int, ell: int) -> FpPolynomial:
    """The ell-th indicator factor, fully expanded.

    Returns 1 - sum over i+j+k = p-1 of C(p-1; i,j,k) u_ell^i v_ell^j w_ell^k
    with coefficients reduced mod p. ell is 1-based.
    """
    if not 1 <= ell <= n:
        raise ValueError(f"coordinate index {ell} out of range 1..{n}")
    p = modulus.p
    terms: dict[ExponentVector, int] = {ExponentVector.zero(n): 1}
    zero = (0,) * n

    def unit(e: int) -> tuple[int, ...]:
        out = list(zero)
        out[ell - 1] = e
        return tuple(out)

    d = p - 1
    for i in range(d + 1):
        for j in range(d - i + 1):
            k = d - i - j
            coeff = (-(math.comb(d, i) * math.comb(d - i, j))) % p
            if coeff:
                terms[ExponentVector(unit(i), unit(j), unit(k))] = coeff
    return FpPolynomial(modulus, n, terms)


def term_count_estimate(p: int, n: int) -> int:
    """Upper bound on the expanded product size: (1 + p(p+1)/2)**n."""
    return (1 + (p + 1) * p // 2) ** n


def expand_f(
    modulus: PrimeModulus, n: int, budget: int = DEFAULT_TERM_BUDGET
) -> FpPolynomial:
    """Product of the n indicator factors in canonical sparse form."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    estimate = term_count_estimate(modulus.p, n)
    if estimate > budget:
        raise BudgetExceededError(
            f"expansion may hold up to {estimate} terms, over the budget of {budget}",
            budget=budget,
            estimate=estimate,
        )
    poly = factor_expansion(modulus, n, 1)
    for ell in range(2, n + 1):
        poly = multiply(poly, factor_expansion(modulus, n, ell))
    return poly


def evaluate(poly: FpPolynomial, a: FpVector, b: FpVector, c: FpVector) -> FpScalar:
    """Substitute u = a, v = b, w = c coordinatewise and reduce mod p."""
    for vec in (a, b, c):
        if vec.modulus != poly.modulus or vec.n != poly.n:
            raise MismatchError(
                f"point {vec!r} does not match polynomial context (p={poly.modulus.p}, n={poly.n})"
            )
    p = poly.modulus.p
    total = 0
    for ev, coeff in poly.terms.items():
        t = coeff
        for point, block in ((a, ev.u_deg), (b, ev.v_deg), (c, ev.w_deg)):
            for x, e in zip(point.values, block):
                if e:
                    t = t * pow(x, e, p) % p
            if t == 0:
                break
        total += t
    return FpScalar(total, poly.modulus)
