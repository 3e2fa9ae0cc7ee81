"""Tensors over F_p, slices, the explicit <= 3N decomposition, and rank tools.

A slice is a function on A^k that factors as h(x_axis) * g(rest). The
decomposition here collects the expanded indicator polynomial's monomials
by which block carries low degree, giving at most 3N slices whose sum
reproduces the zero-sum indicator tensor pointwise.

The rank oracle closes the set of one-slice functions under sums inside
the finite space of all functions A^3 -> F_p, which is feasible only at
toy sizes; it exists to confirm the certificate machinery empirically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .errors import BudgetExceededError, UnsupportedSizeError
from .field import PrimeModulus, indicator_value
from .poly import DEFAULT_TERM_BUDGET, expand_f
from .sumfree import TripleSystem

DEFAULT_TENSOR_BUDGET = 10_000_000


@dataclass(frozen=True)
class FpTensor:
    """A function {1..|A|}^k -> F_p stored as a row-major dense table."""

    modulus: PrimeModulus
    k: int
    domain_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"tensor arity must be >= 2, got {self.k}")
        if self.domain_size < 0:
            raise ValueError(f"domain size must be >= 0, got {self.domain_size}")
        expected = self.domain_size**self.k
        if len(self.values) != expected:
            raise ValueError(
                f"dense table must hold {expected} entries, got {len(self.values)}"
            )
        p = self.modulus.p
        object.__setattr__(self, "values", tuple(int(v) % p for v in self.values))

    def offset(self, index: tuple[int, ...]) -> int:
        off = 0
        for x in index:
            if not 1 <= x <= self.domain_size:
                raise ValueError(f"index {index} out of range 1..{self.domain_size}")
            off = off * self.domain_size + (x - 1)
        return off

    def get(self, index: tuple[int, ...]) -> int:
        if len(index) != self.k:
            raise ValueError(f"index {index} must have {self.k} components")
        return self.values[self.offset(index)]

    def iter_indices(self) -> Iterator[tuple[int, ...]]:
        """1-based index tuples in the same order as the values table."""
        return itertools.product(range(1, self.domain_size + 1), repeat=self.k)

    def is_zero(self) -> bool:
        return not any(self.values)

    @classmethod
    def from_entries(
        cls,
        modulus: PrimeModulus,
        k: int,
        domain_size: int,
        entries: dict[tuple[int, ...], int],
    ) -> "FpTensor":
        table = [0] * domain_size**k
        for index, value in entries.items():
            if len(index) != k:
                raise ValueError(f"index {index} must have {k} components")
            off = 0
            for x in index:
                if not 1 <= x <= domain_size:
                    raise ValueError(f"index {index} out of range 1..{domain_size}")
                off = off * domain_size + (x - 1)
            table[off] = value
        return cls(modulus, k, domain_size, tuple(table))

    def to_json_dict(self) -> dict:
        return {
            "p": self.modulus.p,
            "k": self.k,
            "domainSize": self.domain_size,
            "entries": [
                {"index": list(idx), "value": v}
                for idx, v in zip(self.iter_indices(), self.values)
                if v
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FpTensor":
        try:
            p = data["p"]
            k = data["k"]
            domain_size = data["domainSize"]
            raw = data["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"tensor JSON is missing field {exc}") from exc
        modulus = PrimeModulus(p)
        if not isinstance(k, int) or not isinstance(domain_size, int):
            raise ValueError("k and domainSize must be integers")
        entries: dict[tuple[int, ...], int] = {}
        for item in raw:
            index = item.get("index") if isinstance(item, dict) else None
            if not isinstance(index, list) or len(index) != k:
                raise ValueError(f"entry index {index!r} must list {k} components")
            value = item.get("value")
            if not isinstance(value, int):
                raise ValueError(f"entry value {value!r} must be an integer")
            entries[tuple(index)] = value
        return cls.from_entries(modulus, k, domain_size, entries)


@dataclass(frozen=True)
class TriangularCertificate:
    """Outcome of the support scan backing the rank lower bound."""

    holds: bool
    witness: Optional[tuple[int, ...]]
    diagonal_count: int

    @property
    def implied_lower_bound(self) -> Optional[int]:
        """Certified slice-rank lower bound, available only when holds."""
        return self.diagonal_count if self.holds else None

    def to_json_dict(self) -> dict:
        return {
            "holds": self.holds,
            "witness": list(self.witness) if self.witness else None,
            "diagonalCount": self.diagonal_count,
            "impliedLowerBound": self.implied_lower_bound,
        }


def check_triangular(t: FpTensor) -> TriangularCertificate:
    """Scan support: every nonzero entry needs x_1 <= x_i <= x_k throughout.

    When the scan holds, the count of nonzero diagonal entries is a
    certified lower bound on the slice rank. The first violating entry
    in lexicographic order is reported otherwise.
    """
    witness = None
    diagonal = 0
    for index, v in zip(t.iter_indices(), t.values):
        if not v:
            continue
        first, last = index[0], index[-1]
        if all(x == first for x in index):
            diagonal += 1
        if witness is None:
            if first > last or any(not first <= x <= last for x in index[1:-1]):
                witness = index
    return TriangularCertificate(holds=witness is None, witness=witness, diagonal_count=diagonal)


def gaussian_rank(rows: list[list[int]], p: int) -> int:
    """Row-echelon rank over F_p, pivoting on the first nonzero entry."""
    a = [[x % p for x in row] for row in rows]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        a[rank] = [v * inv % p for v in a[rank]]
        for r in range(rank + 1, n_rows):
            f = a[r][col]
            if f:
                a[r] = [(v - f * w) % p for v, w in zip(a[r], a[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def matrix_rank(t: FpTensor) -> int:
    """Rank of a k=2 tensor via Gaussian elimination."""
    if t.k != 2:
        raise ValueError(f"matrix rank needs arity 2, got k = {t.k}")
    s = t.domain_size
    rows = [[t.values[i * s + j] for j in range(s)] for i in range(s)]
    return gaussian_rank(rows, t.modulus.p)


def tensor_from_matrix_rows(modulus: PrimeModulus, rows: list[list[int]]) -> FpTensor:
    """Square matrix as a k=2 tensor."""
    s = len(rows)
    if any(len(row) != s for row in rows):
        raise ValueError("matrix must be square to form a k=2 tensor")
    return FpTensor(modulus, 2, s, tuple(v for row in rows for v in row))


@dataclass(frozen=True)
class Slice:
    """h(x_axis) * g(remaining arguments), tables over the shared domain.

    g is row-major over the remaining axes in ascending order. Tables
    produced by the term-collection decomposition may evaluate to zero
    on degenerate systems; minimal decompositions never include such
    slices but the constructive one keeps its term groups.
    """

    axis: int
    h: tuple[int, ...]
    g: tuple[int, ...]

    def value_at(self, index: tuple[int, ...], p: int, domain_size: int) -> int:
        hv = self.h[index[self.axis - 1] - 1]
        if hv == 0:
            return 0
        off = 0
        for pos, x in enumerate(index, start=1):
            if pos != self.axis:
                off = off * domain_size + (x - 1)
        return hv * self.g[off] % p

    def to_json_dict(self) -> dict:
        return {"axis": self.axis, "h": list(self.h), "g": list(self.g)}


@dataclass(frozen=True)
class SliceDecomposition:
    target: FpTensor
    slices: tuple[Slice, ...]

    @property
    def slice_count(self) -> int:
        return len(self.slices)

    def evaluate(self, index: tuple[int, ...]) -> int:
        p = self.target.modulus.p
        s = self.target.domain_size
        return sum(sl.value_at(index, p, s) for sl in self.slices) % p

    def first_mismatch(self) -> Optional[tuple[int, ...]]:
        for index, v in zip(self.target.iter_indices(), self.target.values):
            if self.evaluate(index) != v:
                return index
        return None

    def pointwise_equal(self) -> bool:
        """Exhaustive check that the slices sum to the target everywhere."""
        return self.first_mismatch() is None

    def to_json_dict(self) -> dict:
        return {
            "p": self.target.modulus.p,
            "k": self.target.k,
            "domainSize": self.target.domain_size,
            "sliceCount": self.slice_count,
            "slices": [sl.to_json_dict() for sl in self.slices],
        }


def indicator_tensor(system: TripleSystem) -> FpTensor:
    """f(x,y,z) = 1 iff a_x + b_y + c_z = 0, via the Fermat indicator."""
    p = system.modulus.p
    triples = system.value_triples()
    values = []
    for a, _, _ in triples:
        for _, b, _ in triples:
            for _, _, c in triples:
                v = 1
                for x, y, z in zip(a, b, c):
                    v *= indicator_value(x + y + z, p)
                    if not v:
                        break
                values.append(v)
    return FpTensor(system.modulus, 3, system.m, tuple(values))


def _monomial(point: tuple[int, ...], degrees: tuple[int, ...], p: int) -> int:
    out = 1
    for x, e in zip(point, degrees):
        if e:
            out = out * pow(x, e, p) % p
            if not out:
                return 0
    return out


def decompose(
    system: TripleSystem,
    term_budget: int = DEFAULT_TERM_BUDGET,
    tensor_budget: int = DEFAULT_TENSOR_BUDGET,
) -> SliceDecomposition:
    """Explicit slice decomposition of the indicator tensor, <= 3N slices.

    Expands the indicator product, then sends each monomial to the first
    block (u, then v, then w) whose degree is at most d = floor((p-1)n/3);
    the pigeonhole over total degree <= (p-1)n makes the split total.
    Monomials sharing a low-degree block exponent become one slice: h
    evaluates that exponent on the matching point family, g sums the
    complementary parts over the other two.
    """
    p = system.modulus.p
    n = system.n
    m = system.m
    if m**3 > tensor_budget:
        raise BudgetExceededError(
            f"indicator tensor needs {m**3} entries, over the budget of {tensor_budget}",
            budget=tensor_budget,
            estimate=m**3,
        )
    target = indicator_tensor(system)
    if m == 0:
        return SliceDecomposition(target=target, slices=())

    f = expand_f(system.modulus, n, budget=term_budget)
    d = ((p - 1) * n) // 3
    u_block: dict[tuple[int, ...], list] = {}
    v_block: dict[tuple[int, ...], list] = {}
    w_block: dict[tuple[int, ...], list] = {}
    for ev, coeff in f.sorted_terms():
        if ev.u_sum <= d:
            u_block.setdefault(ev.u_deg, []).append((ev, coeff))
        elif ev.v_sum <= d:
            v_block.setdefault(ev.v_deg, []).append((ev, coeff))
        elif ev.w_sum <= d:
            w_block.setdefault(ev.w_deg, []).append((ev, coeff))
        else:
            raise AssertionError(f"monomial {ev} escaped the three-way degree split")

    triples = system.value_triples()
    a_pts = [t[0] for t in triples]
    b_pts = [t[1] for t in triples]
    c_pts = [t[2] for t in triples]

    slices = []
    plan = (
        (1, u_block, a_pts, b_pts, c_pts, lambda ev: (ev.v_deg, ev.w_deg)),
        (2, v_block, b_pts, a_pts, c_pts, lambda ev: (ev.u_deg, ev.w_deg)),
        (3, w_block, c_pts, a_pts, b_pts, lambda ev: (ev.u_deg, ev.v_deg)),
    )
    for axis, block, h_pts, r1_pts, r2_pts, rest in plan:
        for key in sorted(block):
            group = block[key]
            h = tuple(_monomial(pt, key, p) for pt in h_pts)
            g = []
            for q1 in r1_pts:
                for q2 in r2_pts:
                    total = 0
                    for ev, coeff in group:
                        d1, d2 = rest(ev)
                        total += coeff * _monomial(q1, d1, p) * _monomial(q2, d2, p)
                    g.append(total % p)
            slices.append(Slice(axis=axis, h=h, g=tuple(g)))
    return SliceDecomposition(target=target, slices=tuple(slices))


@lru_cache(maxsize=8)
def _rank_one_functions(p: int, domain_size: int) -> tuple[tuple[int, ...], ...]:
    """Every function on A^3 expressible as one slice, deduplicated."""
    s = domain_size
    points = list(itertools.product(range(s), repeat=3))
    funcs = set()
    for axis in range(3):
        for h in itertools.product(range(p), repeat=s):
            if not any(h):
                continue
            for g in itertools.product(range(p), repeat=s * s):
                if not any(g):
                    continue
                vals = []
                for pt in points:
                    rest = [x for i, x in enumerate(pt) if i != axis]
                    vals.append(h[pt[axis]] * g[rest[0] * s + rest[1]] % p)
                funcs.add(tuple(vals))
    return tuple(sorted(funcs))


def slice_rank_oracle(
    t: FpTensor, max_rank: int, allow_big_table: bool = False
) -> Optional[int]:
    """Least r <= max_rank with t a sum of r one-slice functions, else None.

    Brute force over the full function space A^3 -> F_p: feasible for
    |A| <= 2 with p in {2, 3}, and for |A| = 3 with p = 2 behind
    allow_big_table (a 2^27-entry presence table, several hundred MB).
    """
    if t.k != 3:
        raise UnsupportedSizeError(f"rank oracle supports arity 3 only, got k = {t.k}")
    if max_rank < 0:
        raise ValueError("max_rank must be >= 0")
    if t.is_zero():
        return 0
    if max_rank == 0:
        return None

    p = t.modulus.p
    s = t.domain_size
    if s <= 1:
        pass  # function space has p points, trivial for any p
    elif s == 2 and p in (2, 3):
        pass
    elif s == 3 and p == 2:
        if not allow_big_table:
            raise UnsupportedSizeError(
                "|A| = 3 over F_2 requires allow_big_table=True (2^27-entry function table)"
            )
    else:
        raise UnsupportedSizeError(
            f"unsupported oracle instance |A| = {s}, p = {p}; "
            "supported: |A| <= 2 with p in {2, 3}, |A| = 3 with p = 2 behind a flag"
        )

    r1 = _rank_one_functions(p, s)
    p1 = set(r1)
    target = t.values
    if target in p1:
        return 1
    if max_rank == 1:
        return None

    def sub(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((u - v) % p for u, v in zip(x, y))

    for f1 in r1:
        if sub(target, f1) in p1:
            return 2
    if max_rank == 2:
        return None

    # Only a 3-point domain can carry rank 3: smaller domains always
    # split into at most |A| axis-1 slices and were resolved above.
    if s != 3:
        raise AssertionError(f"|A| = {s} tensor unresolved at rank 2")
    return _rank3_membership_f2(r1, target)


def _rank3_membership_f2(
    r1: tuple[tuple[int, ...], ...], target: tuple[int, ...]
) -> Optional[int]:
    """Rank-3 test for |A| = 3, p = 2 via a bit-encoded presence table."""
    import numpy as np

    size = len(target)

    def encode(vals: tuple[int, ...]) -> int:
        e = 0
        for i, v in enumerate(vals):
            if v:
                e |= 1 << i
        return e

    r1_enc = np.array(sorted(encode(f) for f in r1), dtype=np.uint32)
    reachable2 = np.zeros(1 << size, dtype=bool)
    for e in r1_enc:
        reachable2[np.bitwise_xor(r1_enc, e)] = True
    te = encode(target)
    for e in r1_enc:
        if reachable2[te ^ int(e)]:
            return 3
    raise AssertionError("arity-3 tensors on a 3-point domain have slice rank <= 3")
