"""Exact arithmetic in rings of cyclotomic integers Z[zeta_m].

Elements are integer coordinate vectors in the power basis
1, zeta, ..., zeta^(phi(m)-1), reduced modulo the m-th cyclotomic
polynomial, so equality is coordinate equality.  The only Galois
operation needed here is the conjugation zeta -> zeta^-1.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DimensionMismatch


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial.

    Computed by exact division of x^m - 1 by the proper-divisor factors.
    """
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(num[k + len(den) - 1], den[-1])
        assert r == 0, "cyclotomic division is always exact"
        out[k] = q
        for i, c in enumerate(den):
            num[k + i] -= q * c
    assert not any(num), "cyclotomic division is always exact"
    return out


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """zeta^k as a coordinate vector, for k = 0 .. m-1."""
    poly = cyclotomic_polynomial(m)
    deg = len(poly) - 1
    rows: list[tuple[int, ...]] = []
    current = [1] + [0] * (deg - 1) if deg > 0 else []
    for _ in range(m):
        rows.append(tuple(current))
        shifted = [0] + current[:-1]
        carry = current[-1] if deg > 0 else 0
        if carry:
            # zeta^deg = -(poly[0] + poly[1] zeta + ...)/poly[deg]; monic
            for i in range(deg):
                shifted[i] -= carry * poly[i]
        current = shifted
    return tuple(rows)


class CyclotomicInt:
    """An element of Z[zeta_m] in reduced power-basis coordinates."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        deg = len(cyclotomic_polynomial(conductor)) - 1
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != deg:
            raise DimensionMismatch(
                f"need {deg} coordinates for conductor {conductor}")
        self.conductor = conductor
        self.coeffs = coeffs

    @classmethod
    def from_int(cls, conductor: int, n: int) -> CyclotomicInt:
        deg = len(cyclotomic_polynomial(conductor)) - 1
        return cls(conductor, (n,) + (0,) * (deg - 1))

    @classmethod
    def zero(cls, conductor: int) -> CyclotomicInt:
        return cls.from_int(conductor, 0)

    @classmethod
    def one(cls, conductor: int) -> CyclotomicInt:
        return cls.from_int(conductor, 1)

    @classmethod
    def root_of_unity(cls, conductor: int, k: int) -> CyclotomicInt:
        """zeta_m^k."""
        return cls(conductor, _reduction_table(conductor)[k % conductor])

    def _check(self, other: CyclotomicInt) -> None:
        if self.conductor != other.conductor:
            raise DimensionMismatch("mixed conductors")

    def __add__(self, other: CyclotomicInt) -> CyclotomicInt:
        self._check(other)
        return CyclotomicInt(self.conductor,
                             (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CyclotomicInt) -> CyclotomicInt:
        self._check(other)
        return CyclotomicInt(self.conductor,
                             (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CyclotomicInt:
        return CyclotomicInt(self.conductor, (-a for a in self.coeffs))

    def scale(self, n: int) -> CyclotomicInt:
        return CyclotomicInt(self.conductor, (n * a for a in self.coeffs))

    def __mul__(self, other: CyclotomicInt) -> CyclotomicInt:
        self._check(other)
        table = _reduction_table(self.conductor)
        deg = len(self.coeffs)
        acc = [0] * deg
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                row = table[(i + j) % self.conductor] if i + j >= deg else None
                if row is None:
                    acc[i + j] += a * b
                else:
                    ab = a * b
                    for t, r in enumerate(row):
                        acc[t] += ab * r
        return CyclotomicInt(self.conductor, acc)

    def conjugate(self) -> CyclotomicInt:
        """The Galois automorphism zeta -> zeta^-1."""
        table = _reduction_table(self.conductor)
        deg = len(self.coeffs)
        acc = [0] * deg
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for t, r in enumerate(table[(-i) % self.conductor]):
                acc[t] += a * r
        return CyclotomicInt(self.conductor, acc)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0] if self.coeffs else 0

    def root_of_unity_log(self) -> int | None:
        """k with self = zeta^k, or None."""
        table = _reduction_table(self.conductor)
        for k in range(self.conductor):
            if self.coeffs == table[k]:
                return k
        return None

    def __eq__(self, other) -> bool:
        return (isinstance(other, CyclotomicInt)
                and self.conductor == other.conductor
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.conductor, self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicInt({self.conductor}, {self.coeffs})"

    def __str__(self) -> str:
        if self.is_integer():
            return str(self.as_integer())
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            unit = "1" if i == 0 else (f"z{self.conductor}" if i == 1
                                       else f"z{self.conductor}^{i}")
            terms.append(f"{c}*{unit}" if i else str(c))
        return " + ".join(terms).replace("+ -", "- ")
