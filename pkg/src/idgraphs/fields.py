"""GF(p) and GF(p^2) for odd primes p, enough to build Paley graphs.

GF(p^2) elements are pairs (a, b) meaning a + b*x with x^2 = s, where s is
the smallest quadratic non-residue mod p. Element index is a + b*p.
"""

from __future__ import annotations

from dataclasses import dataclass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def odd_prime_power(q: int) -> tuple[int, int] | None:
    """(p, e) with q = p^e for an odd prime p and e in {1, 2}; None otherwise."""
    if q < 3 or q % 2 == 0:
        return None
    if is_prime(q):
        return q, 1
    r = round(q**0.5)
    if r * r == q and is_prime(r):
        return r, 2
    return None


def smallest_nonresidue(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise ValueError(f"no quadratic non-residue mod {p}")


@dataclass(frozen=True)
class Field:
    p: int
    degree: int

    @classmethod
    def of_order(cls, q: int) -> "Field":
        pe = odd_prime_power(q)
        if pe is None:
            raise ValueError(f"{q} is not p or p^2 for an odd prime p")
        return cls(*pe)

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def _s(self) -> int:
        return smallest_nonresidue(self.p)

    def element(self, index: int) -> tuple[int, int]:
        return (index % self.p, index // self.p) if self.degree == 2 else (index, 0)

    def index(self, e: tuple[int, int]) -> int:
        return e[0] + e[1] * self.p

    def elements(self) -> list[tuple[int, int]]:
        return [self.element(i) for i in range(self.order)]

    def add(self, a, b):
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a, b):
        p = self.p
        return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def neg(self, a):
        return self.sub((0, 0), a)

    def mul(self, a, b):
        p = self.p
        if self.degree == 1:
            return (a[0] * b[0] % p, 0)
        s = self._s
        return ((a[0] * b[0] + s * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def pow(self, a, e: int):
        out = (1, 0)
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def inv(self, a):
        if a == (0, 0):
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def is_square(self, a) -> bool:
        """Nonzero square test by Euler's criterion a^((q-1)/2) = 1."""
        if a == (0, 0):
            return False
        return self.pow(a, (self.order - 1) // 2) == (1, 0)
