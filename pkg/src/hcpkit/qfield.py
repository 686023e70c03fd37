"""Exact arithmetic in Z[(1+sqrt5)/2] and the conjugate-support verifier.

Elements are (u + v*sqrt5)/2 with u and v of equal parity. The ring is
norm-Euclidean, so gcds come from rounding exact quotients to the nearest
lattice point, and "every prime of x divides y" is decided by repeated
gcd stripping with no factorization of the enormous norms involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .classpoly import hilbert_class_polynomial
from .errors import CapExceeded
from .quadforms import class_number


@dataclass(frozen=True)
class QuadIntEl:
    """(u + v*sqrt5)/2 with u = v mod 2."""

    u: int
    v: int

    def __post_init__(self) -> None:
        if (self.u - self.v) % 2:
            raise ValueError(f"({self.u} + {self.v} sqrt5)/2 is not integral")

    @classmethod
    def from_int(cls, n: int) -> QuadIntEl:
        return cls(2 * n, 0)

    @property
    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    @property
    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def conjugate(self) -> QuadIntEl:
        return QuadIntEl(self.u, -self.v)

    def norm(self) -> int:
        return (self.u * self.u - 5 * self.v * self.v) // 4

    def trace(self) -> int:
        return self.u

    def _coerce(self, other):
        if isinstance(other, QuadIntEl):
            return other
        if isinstance(other, int):
            return QuadIntEl.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadIntEl(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self) -> QuadIntEl:
        return QuadIntEl(-self.u, -self.v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        big_u = self.u * o.u + 5 * self.v * o.v
        big_v = self.u * o.v + self.v * o.u
        return QuadIntEl(big_u // 2, big_v // 2)

    __rmul__ = __mul__

    def divexact(self, d: QuadIntEl) -> QuadIntEl:
        """Exact quotient self/d; ValueError when d does not divide self."""
        if d.is_zero:
            raise ZeroDivisionError("division by zero")
        num = self * d.conjugate()
        n = d.norm()
        if num.u % n or num.v % n:
            raise ValueError("inexact division")
        return QuadIntEl(num.u // n, num.v // n)

    def __repr__(self) -> str:
        return f"QuadIntEl({self.u}, {self.v})"


PHI = QuadIntEl(1, 1)  # the fundamental unit (1 + sqrt5)/2
SQRT5 = QuadIntEl(0, 2)

# the two conjugate roots of T^2 + 191025 T - 121287375 (the degree-2
# class polynomial at discriminant -15), the default evaluation pair
H_M15_ROOT = QuadIntEl(-191025, -85995)
H_M15_ROOT_CONJ = H_M15_ROOT.conjugate()


def _round_nearest(a: int, b: int) -> int:
    """Nearest integer to a/b, halves away from ties consistently."""
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


def divmod_euclid(x: QuadIntEl, d: QuadIntEl) -> tuple[QuadIntEl, QuadIntEl]:
    """Quotient and remainder with |norm(remainder)| < |norm(d)|.

    The exact quotient is written in the basis (1, phi) and both
    coordinates round to the nearest integer; the coordinate error of at
    most 1/2 each bounds the remainder norm factor strictly below 1.
    """
    if d.is_zero:
        raise ZeroDivisionError("division by zero")
    num = x * d.conjugate()
    n = d.norm()
    # exact quotient = r + s*phi with r = (U - V)/(2N), s = V/N
    s = _round_nearest(num.v, n)
    r = _round_nearest(num.u - num.v, 2 * n)
    q = QuadIntEl(2 * r + s, s)
    return q, x - q * d


def euclidean_gcd(x: QuadIntEl, y: QuadIntEl) -> QuadIntEl:
    """A gcd of x and y, determined up to the (infinite) unit group."""
    if x.is_zero and y.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    while not y.is_zero:
        _, rem = divmod_euclid(x, y)
        x, y = y, rem
    return x


def support_subset(x: QuadIntEl, y: QuadIntEl) -> bool:
    """Whether every prime dividing x also divides y.

    Strips common parts: z starts at x and is divided by gcd(z, y) until
    the gcd is a unit; x's support lies inside y's exactly when z ends a
    unit. Conventions for degenerate inputs match the rational version:
    zero x demands zero y, unit x always passes, zero y absorbs all.
    """
    if x.is_zero:
        return y.is_zero
    if x.is_unit:
        return True
    if y.is_zero:
        return True
    if y.is_unit:
        return False
    z = x
    while True:
        g = euclidean_gcd(z, y)
        if g.is_unit:
            break
        z = z.divexact(g)
    return z.is_unit


def evaluate_at(coeffs, x: QuadIntEl) -> QuadIntEl:
    """Horner evaluation of an integer polynomial at a ring element."""
    acc = QuadIntEl.from_int(0)
    for c in reversed(tuple(coeffs)):
        acc = acc * x + int(c)
    return acc


@dataclass(frozen=True)
class SupportPairReport:
    forward: bool
    backward: bool

    @property
    def both(self) -> bool:
        return self.forward and self.backward


def verify_thm54(
    D: int,
    j_pair: tuple[QuadIntEl, QuadIntEl] | None = None,
    h_cap: int = 2000,
    cache_dir: str | Path | None = None,
) -> SupportPairReport:
    """Support agreement between the class polynomial's values at a
    conjugate pair of ring elements.

    Evaluates H_D exactly at both elements of the pair (default: the two
    conjugate roots of the discriminant -15 class polynomial) and tests
    the prime-support inclusion in each direction.
    """
    if j_pair is None:
        j_pair = (H_M15_ROOT, H_M15_ROOT_CONJ)
    h = class_number(D)
    if h_cap and h > h_cap:
        raise CapExceeded(f"h({D}) = {h} exceeds cap {h_cap}")
    poly = hilbert_class_polynomial(D, cache_dir=cache_dir)
    x = evaluate_at(poly.coeffs, j_pair[0])
    y = evaluate_at(poly.coeffs, j_pair[1])
    return SupportPairReport(
        forward=support_subset(x, y),
        backward=support_subset(y, x),
    )
