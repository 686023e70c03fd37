"""Reduced binary quadratic forms, class numbers, and the precision sum.

A form (a, b, c) has discriminant b^2 - 4ac < 0 and a > 0. Reduced means
|b| <= a <= c with b >= 0 whenever |b| = a or a = c. Only primitive forms
(gcd(a, b, c) = 1) are enumerated, so the count is the class number h(D)
of the order of discriminant D, fundamental or not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import is_discriminant


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if b < 0 and (abs(b) == a or a == c):
            return False
        return True

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1


def reduce(f: QuadForm) -> QuadForm:
    """The unique reduced form equivalent to f (Gauss reduction)."""
    a, b, c = f.a, f.b, f.c
    if a <= 0 or b * b - 4 * a * c >= 0:
        raise ValueError("form must be positive definite")
    while True:
        # normalize b into (-a, a]
        r = (a - b) // (2 * a)
        b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if b < 0 and (a == c or -b == a):
        b = -b
    return QuadForm(a, b, c)


@lru_cache(maxsize=None)
def reduced_forms(D: int) -> tuple[QuadForm, ...]:
    """All primitive reduced forms of discriminant D, sorted by (a, b)."""
    if not is_discriminant(D):
        raise ValueError("D must be a negative discriminant")
    out = []
    for a in range(1, isqrt(-D // 3) + 1):
        # b = D mod 2, -a < b <= a
        b0 = -a + 1
        if (b0 - D) % 2:
            b0 += 1
        for b in range(b0, a + 1, 2):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == c or -b == a):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
    out.sort(key=lambda f: (f.a, f.b))
    return tuple(out)


def class_number(D: int) -> int:
    """h(D): the number of primitive reduced forms of discriminant D."""
    return len(reduced_forms(D))


def inv_a_sum(D: int) -> Fraction:
    """Sum of 1/a over the reduced forms, exact; drives working precision."""
    return sum((Fraction(1, f.a) for f in reduced_forms(D)), Fraction(0))


def unit_group_order(D: int) -> int:
    """Order of the unit group of the order of discriminant D: 6, 4 or 2."""
    if not is_discriminant(D):
        raise ValueError("D must be a negative discriminant")
    if D == -3:
        return 6
    if D == -4:
        return 4
    return 2
