"""Exact computation of the monomial-count bound N and 3N.

Two independent routes are kept side by side: compute_N sums multinomial
coefficients over admissible degree profiles, enumerate_monomials counts
exponent tuples directly. They must agree everywhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Iterator, Optional

from .errors import BudgetExceededError
from .field import PrimeModulus

DEFAULT_ENUMERATION_BUDGET = 10_000_000


def multinomial(counts: tuple[int, ...]) -> int:
    """n!/(c_0! c_1! ...) as an iterative product of exact binomials."""
    total = sum(counts)
    out = 1
    for c in counts:
        out *= math.comb(total, c)
        total -= c
    return out


@dataclass(frozen=True)
class DegreeProfile:
    """Counts (n_0, ..., n_{p-1}) of variables holding each degree.

    Admissibility (the weighted-sum cap) is compared with exact integers:
    3 * (n_1 + 2 n_2 + ...) <= (p-1) * n, never with floats.
    """

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts) or len(self.counts) < 1:
            raise ValueError(f"invalid degree profile {self.counts}")
        if 3 * self.weighted_sum > (self.p - 1) * self.n:
            raise ValueError(f"profile {self.counts} exceeds the degree cap")

    @property
    def p(self) -> int:
        return len(self.counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def weighted_sum(self) -> int:
        return sum(i * c for i, c in enumerate(self.counts))

    @property
    def multinomial(self) -> int:
        return multinomial(self.counts)


@dataclass(frozen=True)
class BoundReport:
    p: int
    n: int
    N: int
    three_N: int
    profile_count: int

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "N": str(self.N),
            "threeN": str(self.three_N),
            "profileCount": self.profile_count,
        }


def iter_profile_counts(
    p: int, n: int, weighted_cap: Optional[int] = None
) -> Iterator[tuple[int, ...]]:
    """Compositions (n_0, ..., n_{p-1}) of n, ascending lexicographic.

    With weighted_cap set, branches whose running weighted sum already
    exceeds the cap are pruned.
    """

    def rec(pos: int, remaining: int, weight_left: Optional[int], prefix: tuple[int, ...]):
        if pos == p - 1:
            if weight_left is None or (p - 1) * remaining <= weight_left:
                yield prefix + (remaining,)
            return
        for c in range(remaining + 1):
            w = pos * c
            if weight_left is not None and w > weight_left:
                break
            yield from rec(
                pos + 1,
                remaining - c,
                None if weight_left is None else weight_left - w,
                prefix + (c,),
            )

    yield from rec(0, n, weighted_cap, ())


def compute_N(modulus: PrimeModulus, n: int) -> BoundReport:
    """Sum of multinomials over admissible profiles; exact big integers."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    p = modulus.p
    cap = ((p - 1) * n) // 3
    total = 0
    profiles = 0
    for counts in iter_profile_counts(p, n, weighted_cap=cap):
        total += multinomial(counts)
        profiles += 1
    return BoundReport(p=p, n=n, N=total, three_N=3 * total, profile_count=profiles)


def enumerate_monomials(
    modulus: PrimeModulus, n: int, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> int:
    """Count tuples in {0..p-1}^n with coordinate sum <= floor((p-1)n/3).

    Direct enumeration: the independent oracle for compute_N.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    p = modulus.p
    size = p**n
    if size > budget:
        raise BudgetExceededError(
            f"enumerating {p}^{n} = {size} exponent tuples exceeds the budget of {budget}",
            budget=budget,
            estimate=size,
        )
    cap = ((p - 1) * n) // 3
    count = 0
    for exps in itertools.product(range(p), repeat=n):
        if sum(exps) <= cap:
            count += 1
    return count


@dataclass(frozen=True)
class GrowthPoint:
    n: int
    N: int
    nth_root: str  # approximate, 12 decimal digits

    def to_json_dict(self) -> dict:
        return {"n": self.n, "N": str(self.N), "nthRootApprox": self.nth_root}


def growth_sequence(modulus: PrimeModulus, n_max: int) -> list[GrowthPoint]:
    """Exact N per n, with N**(1/n) reported to 12 decimal digits."""
    points = []
    for n in range(1, n_max + 1):
        report = compute_N(modulus, n)
        with localcontext() as ctx:
            ctx.prec = 40
            root = Decimal(report.N) ** (Decimal(1) / Decimal(n))
            root_str = str(root.quantize(Decimal("1.000000000000")))
        points.append(GrowthPoint(n=n, N=report.N, nth_root=root_str))
    return points
