"""Finite fields F_{p^m}, their polynomials, and curve-counting helpers.

A field context fixes the monic irreducible modulus of degree m over F_p
with the lexicographically least coefficient encoding sum(c_i * p^i), so
every run and every implementation agrees on coordinates. Elements store
coordinate tuples against that modulus. On top sit polynomial gcd and
root finding, the supersingular polynomial, Frobenius traces by
exhaustive point counting, Deuring discriminant search, and reduction
histograms of class polynomials at inert primes.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import count
from math import comb, isqrt

import numpy as np

from .arith import factorize, is_fundamental_discriminant, is_prime, kronecker
from .errors import FieldMismatch, FieldTooLarge, NotFound, NotInert, SupersingularInput
from .intpoly import IntPolynomial

FIELD_CAP = 1 << 20  # exhaustive point counting stays below this order

# ---------------------------------------------------------------------------
# Internal dense F_p[X] arithmetic on int tuples, constant term first.


def _fp_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _fp_add(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _fp_trim(out)


def _fp_sub(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _fp_trim(out)


def _fp_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _fp_trim([c % p for c in out])


def _fp_divmod(
    a: tuple[int, ...], b: tuple[int, ...], p: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv_lead = pow(b[-1], -1, p)
    rem = list(a)
    dq = len(a) - len(b)
    if dq < 0:
        return (), a
    quot = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        q = rem[i + len(b) - 1] * inv_lead % p
        if q:
            quot[i] = q
            for j, c in enumerate(b):
                rem[i + j] = (rem[i + j] - q * c) % p
    return _fp_trim(quot), _fp_trim(rem)


def _fp_monic(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def _fp_gcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return _fp_monic(a, p)


def _fp_pow_elt(base: tuple[int, ...], e: int, mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _fp_divmod(_fp_mul(result, base, p), mod, p)[1]
        base = _fp_divmod(_fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _fp_deriv(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    return _fp_trim([i * c % p for i, c in enumerate(a) if i])


def _fp_pth_root(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    # valid over F_p only: coefficients are their own p-th roots
    return _fp_trim([a[i] for i in range(0, len(a), p)])


def _fp_radical(f: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Monic product of the distinct irreducible factors of f (char p aware)."""
    f = _fp_monic(f, p)
    if len(f) <= 1:
        return (1,) if f else ()
    d = _fp_deriv(f, p)
    if not d:
        return _fp_radical(_fp_pth_root(f, p), p)
    g = _fp_gcd(f, d, p)
    w = _fp_divmod(f, g, p)[0]
    while True:
        h = _fp_gcd(g, w, p)
        if len(h) == 1:
            break
        g = _fp_divmod(g, h, p)[0]
    if len(g) == 1:
        return _fp_monic(w, p)
    return _fp_monic(_fp_mul(w, _fp_radical(_fp_pth_root(g, p), p), p), p)


def _fp_resultant(a: tuple[int, ...], b: tuple[int, ...], p: int) -> int:
    """Res(a, b) over F_p by the Euclidean recurrence."""
    if not a or not b:
        return 0
    res = 1
    while True:
        if len(b) == 1:
            return res * pow(b[0], len(a) - 1, p) % p
        r = _fp_divmod(a, b, p)[1]
        if not r:
            return 0 if len(b) > 1 else res
        da, db, dr = len(a) - 1, len(b) - 1, len(r) - 1
        res = res * pow(-1, da * db, p) % p
        res = res * pow(b[-1], da - dr, p) % p
        a, b = b, r


def _fp_interpolate(points: list[tuple[int, int]], p: int) -> tuple[int, ...]:
    """Lagrange interpolation through distinct nodes over F_p."""
    poly: tuple[int, ...] = ()
    for i, (xi, yi) in enumerate(points):
        num: tuple[int, ...] = (1,)
        den = 1
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = _fp_mul(num, ((-xj) % p, 1), p)
            den = den * (xi - xj) % p
        scale = yi * pow(den, -1, p) % p
        poly = _fp_add(poly, tuple(c * scale % p for c in num), p)
    return poly


def _fp_is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x: tuple[int, ...] = (0, 1)
    frob = [x]  # frob[i] = X^(p^i) mod f
    t = x
    for _ in range(m):
        t = _fp_pow_elt(t, p, f, p)
        frob.append(t)
    if frob[m] != _fp_divmod(x, f, p)[1]:
        return False
    for r in {q for q, _ in factorize(m, 1 << 16).factors}:
        h = _fp_sub(frob[m // r], x, p)
        if len(_fp_gcd(h, f, p)) != 1:
            return False
    return True


def _least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m minimizing sum(c_i * p^i) over F_p."""
    for enc in count(0):
        digits = []
        e = enc
        for _ in range(m):
            e, d = divmod(e, p)
            digits.append(d)
        if e:
            raise NotFound(f"no irreducible of degree {m} over F_{p}")
        f = tuple(digits) + (1,)
        if _fp_is_irreducible(f, p):
            return f


# ---------------------------------------------------------------------------
# Field contexts and elements.


class Fq:
    """Immutable context for F_{p^m} with the canonical modulus."""

    __slots__ = ("p", "m", "q", "modulus")

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus

    def element(self, coords) -> FqElement:
        c = [int(x) % self.p for x in coords]
        if len(c) > self.m:
            raise ValueError("too many coordinates")
        c += [0] * (self.m - len(c))
        return FqElement(self, tuple(c))

    def from_int(self, n: int) -> FqElement:
        return self.element([n])

    def from_encoding(self, enc: int) -> FqElement:
        if not 0 <= enc < self.q:
            raise ValueError("encoding out of range")
        coords = []
        for _ in range(self.m):
            enc, d = divmod(enc, self.p)
            coords.append(d)
        return FqElement(self, tuple(coords))

    def zero(self) -> FqElement:
        return self.element([])

    def one(self) -> FqElement:
        return self.element([1])

    def gen(self) -> FqElement:
        """Residue of X, a root of the modulus (equals 0 when m = 1)."""
        return self.element([0, 1][: self.m] if self.m > 1 else [0])

    def elements(self):
        for enc in range(self.q):
            yield self.from_encoding(enc)

    def multiplicative_generator(self) -> FqElement:
        primes = sorted({r for r, _ in factorize(self.q - 1, 1 << 16).factors})
        for enc in range(1, self.q):
            g = self.from_encoding(enc)
            if all(g ** ((self.q - 1) // r) != self.one() for r in primes):
                return g
        raise NotFound("no generator found")  # unreachable for a true field

    def __repr__(self) -> str:
        return f"Fq({self.p}^{self.m})"


@lru_cache(maxsize=None)
def fq_context(p: int, m: int = 1) -> Fq:
    """The field F_{p^m}; contexts are cached so identity implies equality."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    return Fq(p, m, _least_irreducible(p, m))


class FqElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: Fq, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def encoding(self) -> int:
        enc = 0
        for c in reversed(self.coords):
            enc = enc * self.field.p + c
        return enc

    def _coerce(self, other) -> FqElement:
        if isinstance(other, FqElement):
            if other.field is not self.field:
                raise FieldMismatch("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FqElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElement(self.field, tuple(-a % p for a in self.coords))

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
        f = self.field
        prod = _fp_mul(_fp_trim(list(self.coords)), _fp_trim(list(o.coords)), f.p)
        rem = _fp_divmod(prod, f.modulus, f.p)[1]
        return f.element(rem)

    __rmul__ = __mul__

    def inverse(self) -> FqElement:
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        # extended Euclid against the modulus
        a, b = _fp_trim(list(self.coords)), f.modulus
        s0: tuple[int, ...] = (1,)
        s1: tuple[int, ...] = ()
        while b:
            q, r = _fp_divmod(a, b, f.p)
            a, b = b, r
            s0, s1 = s1, _fp_sub(s0, _fp_mul(q, s1, f.p), f.p)
        inv_lead = pow(a[0], -1, f.p)
        return f.element(tuple(c * inv_lead % f.p for c in s0))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int) -> FqElement:
        if e < 0:
            return self.inverse() ** (-e)
        f = self.field
        rem = _fp_pow_elt(_fp_trim(list(self.coords)), e, f.modulus, f.p)
        return f.element(rem)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FqElement):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.coords))

    def __repr__(self) -> str:
        return f"Fq({self.field.p}^{self.field.m})#{self.encoding}"


# ---------------------------------------------------------------------------
# Polynomials over a field context.


class FqPoly:
    """Dense polynomial over one Fq context, constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Fq, coeffs=()):
        cs = []
        for c in coeffs:
            if isinstance(c, FqElement):
                if c.field is not field:
                    raise FieldMismatch("coefficient from a different field")
                cs.append(c)
            else:
                cs.append(field.from_int(int(c)))
        while cs and cs[-1].is_zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def from_int_polynomial(cls, field: Fq, poly: IntPolynomial) -> FqPoly:
        return cls(field, poly.coeffs)

    @classmethod
    def x(cls, field: Fq) -> FqPoly:
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> FqElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other: FqPoly) -> None:
        if self.field is not other.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other: FqPoly) -> FqPoly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return FqPoly(self.field, out)

    def __neg__(self) -> FqPoly:
        return FqPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: FqPoly) -> FqPoly:
        return self + (-other)

    def __mul__(self, other) -> FqPoly:
        if isinstance(other, (FqElement, int)):
            s = self.field.from_int(other) if isinstance(other, int) else other
            return FqPoly(self.field, [c * s for c in self.coeffs])
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FqPoly(self.field)
        zero = self.field.zero()
        out = [zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca.is_zero:
                for j, cb in enumerate(b):
                    out[i + j] = out[i + j] + ca * cb
        return FqPoly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other: FqPoly) -> tuple[FqPoly, FqPoly]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        inv_lead = other.leading.inverse()
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return FqPoly(self.field), self
        zero = self.field.zero()
        quot = [zero] * (dq + 1)
        for i in range(dq, -1, -1):
            q = rem[i + other.degree] * inv_lead
            if not q.is_zero:
                quot[i] = q
                for j, c in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - q * c
        return FqPoly(self.field, quot), FqPoly(self.field, rem)

    def __mod__(self, other: FqPoly) -> FqPoly:
        return divmod(self, other)[1]

    def __floordiv__(self, other: FqPoly) -> FqPoly:
        return divmod(self, other)[0]

    def monic(self) -> FqPoly:
        if self.is_zero or self.leading == self.field.one():
            return self
        inv = self.leading.inverse()
        return FqPoly(self.field, [c * inv for c in self.coeffs])

    def evaluate(self, x: FqElement) -> FqElement:
        if x.field is not self.field:
            raise FieldMismatch("argument from a different field")
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> FqPoly:
        return FqPoly(self.field, [i * c for i, c in enumerate(self.coeffs) if i])

    def __eq__(self, other):
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.m, tuple(c.coords for c in self.coeffs)))

    def __repr__(self) -> str:
        return f"FqPoly({self.field!r}, {[c.encoding for c in self.coeffs]})"


def poly_pow_mod(base: FqPoly, e: int, mod: FqPoly) -> FqPoly:
    if e < 0:
        raise ValueError("negative exponent")
    result = FqPoly(mod.field, [1])
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def poly_gcd(f: FqPoly, g: FqPoly) -> FqPoly:
    """Monic gcd over the common field; gcd(f, 0) is the monic multiple of f."""
    if f.field is not g.field:
        raise FieldMismatch("polynomials over different fields")
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


# ---------------------------------------------------------------------------
# Root finding.


def lift_poly(f: FqPoly, target: Fq) -> FqPoly:
    """Reinterpret a prime-field polynomial over an extension of it."""
    if f.field is target:
        return f
    if f.field.m != 1 or f.field.p != target.p:
        raise FieldMismatch("coefficients must lie in the prime field or the target field")
    return FqPoly(target, [c.coords[0] for c in f.coeffs])


def _distinct_roots(g: FqPoly, rng: random.Random) -> list[FqElement]:
    """Roots of a polynomial that splits into distinct linear factors."""
    field = g.field
    if g.degree <= 0:
        return []
    if g.degree == 1:
        return [-g.coeffs[0] / g.coeffs[1]]
    if field.q <= 4096:
        return [x for x in field.elements() if g.evaluate(x).is_zero]
    x = FqPoly.x(field)
    for _ in range(256):
        if field.p == 2:
            # Tr(cx) = sum (cx)^(2^i) for i < m splits g for random c
            c = field.from_encoding(rng.randrange(1, field.q))
            term = (x * c) % g
            tr = term
            for _ in range(field.m - 1):
                term = (term * term) % g
                tr = tr + term
            h = poly_gcd(tr % g, g)
        else:
            shift = field.from_encoding(rng.randrange(field.q))
            probe = (x + FqPoly(field, [shift])) % g
            h = poly_gcd(poly_pow_mod(probe, (field.q - 1) // 2, g) - FqPoly(field, [1]), g)
        if 0 < h.degree < g.degree:
            return _distinct_roots(h, rng) + _distinct_roots(g // h, rng)
    raise NotFound("random splitting failed to converge")


def roots_in(f: FqPoly, m: int) -> list[tuple[FqElement, int]]:
    """All roots of f in F_{p^m} with multiplicities, sorted by encoding.

    Coefficients may live in the prime field (they are embedded) or in
    F_{p^m} itself.
    """
    if m < 1:
        raise ValueError("extension degree must be positive")
    if f.is_zero:
        raise ValueError("zero polynomial has every element as a root")
    target = fq_context(f.field.p, m)
    fl = lift_poly(f, target)
    if fl.degree <= 0:
        return []
    x = FqPoly.x(target)
    g = poly_gcd(fl, poly_pow_mod(x, target.q, fl) - x)
    seed = hash((target.p, target.m, tuple(c.encoding for c in fl.coeffs)))
    roots = _distinct_roots(g, random.Random(seed))
    out: list[tuple[FqElement, int]] = []
    for r in sorted(roots, key=lambda e: e.encoding):
        lin = FqPoly(target, [-r, target.one()])
        mult = 0
        h = fl
        while True:
            q, rem = divmod(h, lin)
            if not rem.is_zero:
                break
            mult += 1
            h = q
        out.append((r, mult))
    return out


# ---------------------------------------------------------------------------
# Supersingular polynomial.


@lru_cache(maxsize=None)
def supersingular_polynomial(p: int) -> FqPoly:
    """Monic squarefree polynomial over F_p cutting out the supersingular
    j-invariants in F_{p^2}.

    For p >= 5 the Hasse polynomial sum(C(m,i)^2 * x^i), m = (p-1)/2, is
    pushed to the j-line through the degree-2 cover j(lambda) and the
    squarefree part of the resultant is returned. Interpolation from m+1
    nodes suffices: the image has degree at most m in j and its leading
    coefficient cannot vanish since the Hasse polynomial avoids 0 and 1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    field = fq_context(p, 1)
    if p in (2, 3):
        return FqPoly(field, [0, 1])
    m = (p - 1) // 2
    hasse = tuple(comb(m, i) ** 2 % p for i in range(m + 1))
    nodes: list[tuple[int, int]] = []
    for j0 in range(m + 1):
        # lambda^2 (1-lambda)^2 j0 - 256 (1 - lambda + lambda^2)^3
        a = _fp_mul((0, 0, 1), (1, -2 % p, 1), p)  # lambda^2 (1-lambda)^2
        a = tuple(c * j0 % p for c in a)
        b = (1, -1 % p, 1)
        b3 = _fp_mul(_fp_mul(b, b, p), b, p)
        g = _fp_sub(a, tuple(c * 256 % p for c in b3), p)
        nodes.append((j0, _fp_resultant(hasse, g, p)))
    res_poly = _fp_interpolate(nodes, p)
    sqfree = _fp_radical(res_poly, p)
    return FqPoly(field, sqfree)


def supersingular_count(p: int) -> int:
    return max(supersingular_polynomial(p).degree, 0)


# ---------------------------------------------------------------------------
# Point counting.


def _curve_from_j(j0: FqElement):
    """Coefficients of the canonical model with invariant j0 (char > 3)."""
    field = j0.field
    if j0.is_zero:
        return field.zero(), field.one()  # y^2 = x^3 + 1
    if j0 == 1728:
        return field.one(), field.zero()  # y^2 = x^3 + x
    k = j0 / (field.from_int(1728) - j0)
    return 3 * k, 2 * k


def _count_p_gt3_prime(j0: FqElement) -> int:
    p = j0.field.p
    a, b = _curve_from_j(j0)
    av, bv = a.coords[0], b.coords[0]
    ys = np.arange(p, dtype=np.int64)
    counts = np.bincount(ys * ys % p, minlength=p)
    xs = np.arange(p, dtype=np.int64)
    fx = ((xs * xs % p) * xs + av * xs + bv) % p
    return 1 + int(counts[fx].sum())


def _count_odd_generic(j0: FqElement) -> int:
    field = j0.field
    if field.p == 3:
        if j0.is_zero:
            a2, a4, a6 = field.zero(), field.one(), field.zero()  # y^2 = x^3 + x
        else:
            a2, a4, a6 = field.one(), field.zero(), -j0.inverse()  # y^2 = x^3 + x^2 - 1/j
    else:
        a4, a6 = _curve_from_j(j0)
        a2 = field.zero()
    counts: dict[int, int] = {}
    for y in field.elements():
        e = (y * y).encoding
        counts[e] = counts.get(e, 0) + 1
    total = 1
    for x in field.elements():
        x2 = x * x
        fx = x2 * x + a2 * x2 + a4 * x + a6
        total += counts.get(fx.encoding, 0)
    return total


def _count_char2(j0: FqElement) -> int:
    field = j0.field
    # trace to F_2 is linear: precompute it on the power basis
    bits = []
    for i in range(field.m):
        b = field.element([0] * i + [1])
        t = b
        acc = b
        for _ in range(field.m - 1):
            t = t * t
            acc = acc + t
        bits.append(acc.coords[0] & 1)

    def tr(e: FqElement) -> int:
        return sum(c * t for c, t in zip(e.coords, bits)) & 1

    if j0.is_zero:
        # y^2 + y = x^3: 2 points over x when Tr(x^3) = 0
        total = 1
        for x in field.elements():
            if tr(x * x * x) == 0:
                total += 2
        return total
    a6 = j0.inverse()
    total = 2  # infinity plus the single point at x = 0
    for x in field.elements():
        if x.is_zero:
            continue
        w = x + a6 * (x * x).inverse()
        if tr(w) == 0:
            total += 2
    return total


def frobenius_trace(j0: FqElement) -> int:
    """Trace t = q + 1 - #E(F_q) of the canonical curve with invariant j0.

    Counts points exhaustively; the field order must not exceed 2^20.
    """
    field = j0.field
    if field.q > FIELD_CAP:
        raise FieldTooLarge(f"point counting capped at order {FIELD_CAP}")
    if field.p == 2:
        n = _count_char2(j0)
    elif field.m == 1 and field.p > 3:
        n = _count_p_gt3_prime(j0)
    else:
        n = _count_odd_generic(j0)
    t = field.q + 1 - n
    if t * t > 4 * field.q:
        raise RuntimeError("trace exceeds the Hasse bound; counting bug")
    return t


# ---------------------------------------------------------------------------
# Deuring discriminants and reduction histograms.


def deuring_discriminants(j0: FqElement) -> list[int]:
    """Discriminants D with (H_D mod p)(j0) = 0 among divisors of t^2 - 4q.

    Candidates are D = (t^2 - 4q)/f^2 for f^2 dividing t^2 - 4q with
    D congruent to 0 or 1 mod 4; the class polynomial filter keeps those
    vanishing at j0 over F_q. Ordinary inputs only; sorted by |D|.
    """
    from .classpoly import hilbert_class_polynomial

    field = j0.field
    t = frobenius_trace(j0)
    if t % field.p == 0:
        raise SupersingularInput(f"trace {t} divisible by {field.p}")
    disc = t * t - 4 * field.q
    out = []
    for f in range(1, isqrt(-disc) + 1):
        if disc % (f * f):
            continue
        D = disc // (f * f)
        if D % 4 not in (0, 1):
            continue
        h = hilbert_class_polynomial(D)
        val = FqPoly.from_int_polynomial(field, h.reduce_mod(field.p)).evaluate(j0)
        if val.is_zero:
            out.append(D)
    if not out:
        raise NotFound("no discriminant vanishes at j0; counting or filter bug")
    return sorted(out, key=abs)


def michel_counts(D: int, p: int) -> dict[FqElement, int]:
    """Histogram of the roots of H_D mod p over F_{p^2} for inert p.

    Keys are supersingular j-invariants; multiplicities sum to h(D).
    """
    from .classpoly import hilbert_class_polynomial

    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    if kronecker(D, p) != -1:
        raise NotInert(f"{p} is not inert for discriminant {D}")
    h = hilbert_class_polynomial(D)
    fp = fq_context(p, 1)
    hp = FqPoly.from_int_polynomial(fp, h.reduce_mod(p))
    return {r: mult for r, mult in roots_in(hp, 2)}
