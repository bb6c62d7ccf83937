"""Finite fields GF(p), GF(p^2) and the Bose-Chowla Golomb ruler.

Elements of GF(p^2) are pairs ``(a, b)`` meaning ``a + b*x`` modulo a monic
irreducible quadratic ``x^2 + c1*x + c0``.  Everything is exact integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .grid import SensorSet

MAX_PRIME = 1 << 15


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in ascending order."""
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p > MAX_PRIME:
            raise ValueError(f"prime {self.p} exceeds supported maximum {MAX_PRIME}")


def find_irreducible_quadratic(p: int) -> tuple[int, int]:
    """Smallest ``(c1, c0)`` (lexicographic) such that x^2 + c1 x + c0 has no root mod p."""
    PrimeField(p)
    for c1 in range(p):
        for c0 in range(p):
            if all((x * x + c1 * x + c0) % p for x in range(p)):
                return c1, c0
    raise AssertionError(f"no irreducible quadratic found mod {p}")


class QuadraticExtension:
    """The field GF(p^2) = GF(p)[x] / (x^2 + c1 x + c0)."""

    def __init__(self, p: int, modulus: tuple[int, int] | None = None):
        PrimeField(p)
        self.p = p
        self.modulus = find_irreducible_quadratic(p) if modulus is None else modulus
        c1, c0 = self.modulus
        if any((x * x + c1 * x + c0) % p == 0 for x in range(p)):
            raise ValueError(f"x^2 + {c1}x + {c0} is reducible mod {p}")
        self.order = p * p

    def __repr__(self):
        c1, c0 = self.modulus
        return f"GF({self.p}^2, x^2+{c1}x+{c0})"

    def element(self, a: int, b: int) -> "QuadExtElement":
        return QuadExtElement(a % self.p, b % self.p, self)

    @property
    def one(self):
        return self.element(1, 0)

    @property
    def zero(self):
        return self.element(0, 0)

    def elements(self):
        """All elements in (b, a) scan order: b outer, a inner."""
        for b in range(self.p):
            for a in range(self.p):
                yield self.element(a, b)


@dataclass(frozen=True)
class QuadExtElement:
    a: int
    b: int
    field: QuadraticExtension

    def _check(self, other):
        if not isinstance(other, QuadExtElement) or other.field is not self.field:
            raise TypeError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        return self.field.element(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        self._check(other)
        return self.field.element(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return self.field.element(-self.a, -self.b)

    def __mul__(self, other):
        self._check(other)
        p = self.field.p
        c1, c0 = self.field.modulus
        # (a1 + b1 x)(a2 + b2 x) with x^2 = -c1 x - c0
        hi = self.b * other.b
        a = self.a * other.a - hi * c0
        b = self.a * other.b + self.b * other.a - hi * c1
        return self.field.element(a % p, b % p)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, QuadExtElement)
            and other.field is self.field
            and (self.a, self.b) == (other.a, other.b)
        )

    def __hash__(self):
        return hash((self.a, self.b, self.field.p, self.field.modulus))

    def __bool__(self):
        return bool(self.a or self.b)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        # a^(q^2 - 2) = a^-1 in the multiplicative group of order q^2 - 1
        return self ** (self.field.order - 2)

    @property
    def in_base_field(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"{self.a}+{self.b}x"


def multiplicative_order(g: QuadExtElement) -> int:
    """Order of ``g`` in the multiplicative group of its field."""
    if not g:
        raise ValueError("zero has no multiplicative order")
    n = g.field.order - 1
    order = n
    for ell in prime_factors(n):
        while order % ell == 0 and (g ** (order // ell)) == g.field.one:
            order //= ell
    return order


def is_primitive(g: QuadExtElement) -> bool:
    if not g:
        return False
    n = g.field.order - 1
    one = g.field.one
    return all(g ** (n // ell) != one for ell in prime_factors(n))


def find_primitive_element(p: int, field: QuadraticExtension | None = None) -> QuadExtElement:
    """First primitive element of GF(p^2) in (b, a) scan order."""
    F = QuadraticExtension(p) if field is None else field
    for g in F.elements():
        if is_primitive(g):
            return g
    raise AssertionError(f"no primitive element in {F}")


@dataclass(frozen=True)
class GolombRuler:
    """Sidon set modulo ``modulus``: all differences of distinct marks differ."""

    marks: tuple
    modulus: int

    @property
    def differences(self) -> list[int]:
        return [(a - b) % self.modulus for a in self.marks for b in self.marks if a != b]

    def is_sidon(self) -> bool:
        diffs = self.differences
        return len(diffs) == len(set(diffs))

    def __len__(self):
        return len(self.marks)


def bose_chowla(p: int, g: QuadExtElement | None = None) -> GolombRuler:
    """Bose-Chowla ruler ``{i in 1..q^2-2 : g^i - g in GF(q)}`` for prime q = p.

    The powers of the primitive element are accumulated one multiplication
    at a time.  The result has ``p`` marks and is Sidon modulo ``p^2 - 1``;
    both are checked before returning.
    """
    if g is None:
        g = find_primitive_element(p)
    elif g.field.p != p or not is_primitive(g):
        raise ValueError("g must be a primitive element of GF(p^2)")
    n = p * p - 1
    marks = []
    power = g.field.one
    for i in range(1, n):
        power = power * g
        if (power - g).in_base_field:
            marks.append(i)
    ruler = GolombRuler(tuple(marks), n)
    if len(ruler) != p:
        raise RuntimeError(f"Bose-Chowla set has {len(ruler)} marks, expected {p}")
    if not ruler.is_sidon():
        raise RuntimeError("Bose-Chowla set failed the Sidon check")
    return ruler


def extend_ruler(ruler: GolombRuler, extra: int) -> SensorSet:
    """Append ``extra`` consecutive positions after the largest mark."""
    if extra < 0:
        raise ValueError("extra must be non-negative")
    top = max(ruler.marks)
    return SensorSet(tuple(ruler.marks) + tuple(range(top + 1, top + 1 + extra)))


def sidon_modular(marks, modulus: int) -> bool:
    """Brute-force Sidon check, independent of :class:`GolombRuler`."""
    seen = set()
    for a, b in combinations(marks, 2):
        for d in ((a - b) % modulus, (b - a) % modulus):
            if d in seen:
                return False
            seen.add(d)
    return True
