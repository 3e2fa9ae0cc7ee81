"""Exact arithmetic in F_p and F_p^n."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import MismatchError, NonPrimeError


def _is_prime(n: int) -> bool:
    """Trial division; moduli here are desk-scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A verified prime p; the context for all arithmetic."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise NonPrimeError(f"modulus must be a prime integer, got {self.p!r}")

    def __repr__(self):
        return f"PrimeModulus({self.p})"


@dataclass(frozen=True)
class FpScalar:
    """An element of F_p held as its canonical representative in [0, p-1]."""

    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.modulus.p)

    def _check(self, other: "FpScalar"):
        if self.modulus != other.modulus:
            raise MismatchError(f"modulus mismatch between {self!r} and {other!r}")

    def __add__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar(self.value + other.value, self.modulus)

    def __sub__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar(self.value - other.value, self.modulus)

    def __mul__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar(self.value * other.value, self.modulus)

    def __neg__(self) -> "FpScalar":
        return FpScalar(-self.value, self.modulus)

    def __pow__(self, e: int) -> "FpScalar":
        return pow_scalar(self, e)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus.p})"


@dataclass(frozen=True)
class FpVector:
    """An element of F_p^n; coordinates are canonical representatives."""

    modulus: PrimeModulus
    values: tuple[int, ...]

    def __post_init__(self):
        p = self.modulus.p
        object.__setattr__(self, "values", tuple(int(v) % p for v in self.values))
        if len(self.values) == 0:
            raise ValueError("FpVector dimension must be positive")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def coords(self) -> tuple[FpScalar, ...]:
        return tuple(FpScalar(v, self.modulus) for v in self.values)

    @classmethod
    def zero(cls, modulus: PrimeModulus, n: int) -> "FpVector":
        return cls(modulus, (0,) * n)

    def __add__(self, other: "FpVector") -> "FpVector":
        return add(self, other)

    def __neg__(self) -> "FpVector":
        return FpVector(self.modulus, tuple(-v for v in self.values))

    def __repr__(self):
        return f"({','.join(str(v) for v in self.values)}) (mod {self.modulus.p})"


def add(u: FpVector, v: FpVector) -> FpVector:
    """Coordinatewise sum mod p."""
    if u.modulus != v.modulus or u.n != v.n:
        raise MismatchError(f"cannot add {u!r} and {v!r}: modulus or dimension mismatch")
    p = u.modulus.p
    return FpVector(u.modulus, tuple((a + b) % p for a, b in zip(u.values, v.values)))


def pow_scalar(s: FpScalar, e: int) -> FpScalar:
    """s**e mod p with 0**0 = 1."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return FpScalar(pow(s.value, e, s.modulus.p), s.modulus)


def fermat_indicator(s: FpScalar) -> FpScalar:
    """1 - s**(p-1) mod p: equals 1 iff s = 0."""
    p = s.modulus.p
    return FpScalar(1 - pow(s.value, p - 1, p), s.modulus)


def indicator_value(value: int, p: int) -> int:
    """Plain-int form of the Fermat indicator, for inner loops."""
    return (1 - pow(value % p, p - 1, p)) % p


def iter_vectors(modulus: PrimeModulus, n: int) -> Iterator[FpVector]:
    """All of F_p^n in lexicographic coordinate order."""
    for values in itertools.product(range(modulus.p), repeat=n):
        yield FpVector(modulus, values)
