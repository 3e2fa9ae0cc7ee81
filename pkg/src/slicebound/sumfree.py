"""Tricolored ordered sum-free sets: verification, exhaustive and greedy search.

A system is an ordered list of triples (a_i, b_i, c_i) in F_p^n with
a_i + b_i + c_i = 0 for every index. It is valid when every zero cross
sum a_i + b_j + c_k forces i <= j <= k. Indices are 1-based throughout.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .bound import compute_N
from .errors import ZeroSumError
from .field import FpVector, PrimeModulus

DEFAULT_NODE_BUDGET = 1_000_000

IntVec = tuple[int, ...]


def _neg_sum(p: int, x: IntVec, y: IntVec) -> IntVec:
    """-(x + y) mod p, coordinatewise."""
    return tuple((-(u + v)) % p for u, v in zip(x, y))


@dataclass(frozen=True)
class TripleSystem:
    """Indexed triples with the per-index zero-sum constraint enforced."""

    modulus: PrimeModulus
    n: int
    triples: tuple[tuple[FpVector, FpVector, FpVector], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        for i, (a, b, c) in enumerate(self.triples, start=1):
            for vec in (a, b, c):
                if vec.modulus != self.modulus or vec.n != self.n:
                    raise ValueError(
                        f"triple {i}: vector {vec!r} does not match p={self.modulus.p}, n={self.n}"
                    )
            if any((x + y + z) % self.modulus.p for x, y, z in zip(a.values, b.values, c.values)):
                raise ZeroSumError(f"triple {i}: a_i + b_i + c_i != 0 ({a!r} + {b!r} + {c!r})")

    @property
    def m(self) -> int:
        return len(self.triples)

    def value_triples(self) -> list[tuple[IntVec, IntVec, IntVec]]:
        return [(a.values, b.values, c.values) for a, b, c in self.triples]

    def to_json_dict(self) -> dict:
        return {
            "p": self.modulus.p,
            "n": self.n,
            "triples": [
                {"a": list(a.values), "b": list(b.values), "c": list(c.values)}
                for a, b, c in self.triples
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TripleSystem":
        try:
            p = data["p"]
            n = data["n"]
            raw = data["triples"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"triple system JSON is missing field {exc}") from exc
        modulus = PrimeModulus(p)
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"dimension must be a positive integer, got {n!r}")
        triples = []
        for i, entry in enumerate(raw, start=1):
            vecs = []
            for name in ("a", "b", "c"):
                coords = entry.get(name) if isinstance(entry, dict) else None
                if not isinstance(coords, list) or len(coords) != n:
                    raise ValueError(f"triple {i}: field {name!r} must be a list of {n} integers")
                for x in coords:
                    if not isinstance(x, int) or not 0 <= x < p:
                        raise ValueError(
                            f"triple {i}: coordinate {x!r} in {name!r} is not an integer in [0, {p - 1}]"
                        )
                vecs.append(FpVector(modulus, tuple(coords)))
            triples.append(tuple(vecs))
        return cls(modulus, n, tuple(triples))


def system_from_values(
    modulus: PrimeModulus, n: int, values: list[tuple[IntVec, IntVec, IntVec]]
) -> TripleSystem:
    return TripleSystem(
        modulus,
        n,
        tuple(
            (FpVector(modulus, a), FpVector(modulus, b), FpVector(modulus, c))
            for a, b, c in values
        ),
    )


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violation: Optional[tuple[int, int, int]]
    m: int
    bound_3N: int
    slack: int

    def to_json_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violation": list(self.violation) if self.violation else None,
            "m": self.m,
            "bound3N": str(self.bound_3N),
            "slack": str(self.slack),
        }


def verify(system: TripleSystem) -> VerificationReport:
    """Check the ordering condition in O(m^2 n) using a c-value index.

    For each (i, j) the candidate third indices are {k : c_k = -(a_i+b_j)};
    a violation exists iff that set is nonempty and i > j or its minimum
    is below j. Reports the lexicographically smallest violation.
    """
    p = system.modulus.p
    values = system.value_triples()
    c_index: dict[IntVec, list[int]] = {}
    for k, (_, _, c) in enumerate(values, start=1):
        c_index.setdefault(c, []).append(k)

    violation: Optional[tuple[int, int, int]] = None
    for i, (a, _, _) in enumerate(values, start=1):
        for j, (_, b, _) in enumerate(values, start=1):
            ks = c_index.get(_neg_sum(p, a, b))
            if not ks:
                continue
            if i > j or ks[0] < j:
                violation = (i, j, ks[0])
                break
        if violation:
            break

    three_n = compute_N(system.modulus, system.n).three_N
    return VerificationReport(
        valid=violation is None,
        violation=violation,
        m=system.m,
        bound_3N=three_n,
        slack=three_n - system.m,
    )


def zero_sum_candidates(modulus: PrimeModulus, n: int) -> list[tuple[IntVec, IntVec, IntVec]]:
    """All zero-sum triples, lexicographic in (a, b); c is determined."""
    p = modulus.p
    out = []
    for a in itertools.product(range(p), repeat=n):
        for b in itertools.product(range(p), repeat=n):
            out.append((a, b, _neg_sum(p, a, b)))
    return out


class _IncrementalChecker:
    """Mutable sequence of triples with an O(m)-per-candidate append test.

    Appending triple M can only create violations with M in one of the
    three positions; each pattern reduces to a value-map lookup:
      as k:  some i > j with a_i + b_j = -c_new       (max a-index per value)
      as i:  some j < M with b_j + c_k = -a_new, any k (c presence or c_new)
      as i=j: some k < M with c_k = c_new
      as j:  some k < M with a_i + c_k = -b_new, i <= M-1
    """

    def __init__(self, p: int):
        self.p = p
        self.triples: list[tuple[IntVec, IntVec, IntVec]] = []
        self._a_index: dict[IntVec, list[int]] = {}
        self._c_index: dict[IntVec, list[int]] = {}

    def __len__(self):
        return len(self.triples)

    def can_append(self, a: IntVec, b: IntVec, c: IntVec) -> bool:
        p = self.p
        if c in self._c_index:
            return False
        for j, (_, bj, _) in enumerate(self.triples, start=1):
            idxs = self._a_index.get(_neg_sum(p, c, bj))
            if idxs and idxs[-1] > j:
                return False
            y = _neg_sum(p, a, bj)
            if y == c or y in self._c_index:
                return False
        for _, _, ck in self.triples:
            if _neg_sum(p, b, ck) in self._a_index:
                return False
        return True

    def append(self, a: IntVec, b: IntVec, c: IntVec):
        self.triples.append((a, b, c))
        m = len(self.triples)
        self._a_index.setdefault(a, []).append(m)
        self._c_index.setdefault(c, []).append(m)

    def pop(self):
        a, _, c = self.triples.pop()
        for index, key in ((self._a_index, a), (self._c_index, c)):
            index[key].pop()
            if not index[key]:
                del index[key]

    def snapshot(self) -> list[tuple[IntVec, IntVec, IntVec]]:
        return list(self.triples)


@dataclass(frozen=True)
class SearchResult:
    m: int
    witness: TripleSystem
    complete: bool
    nodes: int


def search_exhaustive(
    modulus: PrimeModulus,
    n: int,
    m_cap: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SearchResult:
    """Depth-first search over valid ordered sequences of zero-sum triples.

    Candidates are tried in lexicographic (a, b) order at every depth, so
    the returned witness is the lexicographically smallest maximum. The
    budget counts candidate expansions; exceeding it returns the best
    sequence found so far with complete=False.
    """
    candidates = zero_sum_candidates(modulus, n)
    checker = _IncrementalChecker(modulus.p)
    best: list[tuple[IntVec, IntVec, IntVec]] = []
    nodes = 0
    exhausted = False

    def dfs():
        nonlocal best, nodes, exhausted
        if len(checker) > len(best):
            best = checker.snapshot()
        if len(checker) >= m_cap or exhausted:
            return
        for cand in candidates:
            nodes += 1
            if nodes > node_budget:
                exhausted = True
                return
            if checker.can_append(*cand):
                checker.append(*cand)
                dfs()
                checker.pop()
                if exhausted:
                    return

    if m_cap > 0:
        dfs()
    witness = system_from_values(modulus, n, best)
    return SearchResult(m=len(best), witness=witness, complete=not exhausted, nodes=nodes)


def search_greedy(modulus: PrimeModulus, n: int, seed: int) -> TripleSystem:
    """Append zero-sum triples in a seeded pseudorandom order when valid."""
    candidates = zero_sum_candidates(modulus, n)
    random.Random(seed).shuffle(candidates)
    checker = _IncrementalChecker(modulus.p)
    for cand in candidates:
        if checker.can_append(*cand):
            checker.append(*cand)
    return system_from_values(modulus, n, checker.snapshot())
