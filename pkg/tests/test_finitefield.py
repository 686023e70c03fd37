"""Finite fields, root finding, and supersingular machinery."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcpkit.errors import (
    FieldMismatch,
    FieldTooLarge,
    NotInert,
    SupersingularInput,
)
from hcpkit.finitefield import (
    FqPoly,
    deuring_discriminants,
    fq_context,
    frobenius_trace,
    lift_poly,
    michel_counts,
    poly_gcd,
    poly_pow_mod,
    roots_in,
    supersingular_count,
    supersingular_polynomial,
)
from hcpkit.quadforms import class_number


class TestFieldConstruction:
    def test_rejects_composite_characteristic(self):
        for p in (1, 4, 6, 9):
            with pytest.raises(ValueError):
                fq_context(p, 1)

    def test_rejects_nonpositive_degree(self):
        with pytest.raises(ValueError):
            fq_context(5, 0)

    def test_contexts_are_cached(self):
        assert fq_context(5, 2) is fq_context(5, 2)

    def test_canonical_moduli(self):
        assert fq_context(2, 2).modulus == (1, 1, 1)
        assert fq_context(3, 2).modulus == (1, 0, 1)
        assert fq_context(5, 2).modulus == (2, 0, 1)

    def test_generator_satisfies_modulus(self):
        for p, m in [(2, 4), (3, 3), (5, 2), (7, 2)]:
            field = fq_context(p, m)
            g = field.gen()
            acc = field.zero()
            power = field.one()
            for c in field.modulus:
                acc = acc + power * c
                power = power * g
            assert acc.is_zero

    def test_encoding_round_trip(self):
        field = fq_context(3, 3)
        for enc in range(field.q):
            assert field.from_encoding(enc).encoding == enc
        with pytest.raises(ValueError):
            field.from_encoding(27)
        with pytest.raises(ValueError):
            field.from_encoding(-1)

    def test_prime_subfield_embedding(self):
        field = fq_context(7, 2)
        for n in range(7):
            assert field.from_int(n).encoding == n

    def test_multiplicative_generator(self):
        f7 = fq_context(7, 1)
        g = f7.multiplicative_generator()
        assert g.encoding == 3  # least primitive root mod 7
        f4 = fq_context(2, 2)
        assert f4.multiplicative_generator().encoding == 2

    def test_generator_has_full_order(self):
        for p, m in [(2, 3), (5, 2), (11, 1)]:
            field = fq_context(p, m)
            g = field.multiplicative_generator()
            seen = set()
            x = field.one()
            for _ in range(field.q - 1):
                x = x * g
                seen.add(x.encoding)
            assert len(seen) == field.q - 1


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (7, 1)])
class TestFieldAxioms:
    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_ring_identities(self, p, m, data):
        field = fq_context(p, m)
        enc = st.integers(0, field.q - 1)
        a = field.from_encoding(data.draw(enc))
        b = field.from_encoding(data.draw(enc))
        c = field.from_encoding(data.draw(enc))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == field.zero()
        assert (a + b) ** p == a**p + b**p  # Frobenius is additive

    @settings(max_examples=25, deadline=None)
    @given(data=st.data())
    def test_inverses(self, p, m, data):
        field = fq_context(p, m)
        a = field.from_encoding(data.draw(st.integers(1, field.q - 1)))
        assert a * a.inverse() == field.one()
        assert a / a == field.one()
        assert a ** (field.q - 1) == field.one()

    def test_zero_has_no_inverse(self, p, m):
        field = fq_context(p, m)
        with pytest.raises(ZeroDivisionError):
            field.zero().inverse()


class TestPolynomials:
    def test_trailing_zeros_trimmed(self):
        field = fq_context(5, 1)
        poly = FqPoly(field, [1, 2, 0, 0])
        assert poly.degree == 1
        assert FqPoly(field, [0]).is_zero

    def test_int_coefficients_coerced(self):
        field = fq_context(5, 1)
        assert FqPoly(field, [7, -1]) == FqPoly(field, [2, 4])

    def test_mixed_field_coefficients_rejected(self):
        f5 = fq_context(5, 1)
        f25 = fq_context(5, 2)
        with pytest.raises(FieldMismatch):
            FqPoly(f5, [f25.one()])
        with pytest.raises(FieldMismatch):
            FqPoly.x(f5) + FqPoly.x(f25)

    def test_division_by_zero_poly(self):
        field = fq_context(5, 1)
        with pytest.raises(ZeroDivisionError):
            divmod(FqPoly.x(field), FqPoly(field))

    @settings(max_examples=50, deadline=None)
    @given(
        f=st.lists(st.integers(0, 6), max_size=8),
        g=st.lists(st.integers(0, 6), min_size=1, max_size=5),
    )
    def test_divmod_identity(self, f, g):
        field = fq_context(7, 1)
        fp = FqPoly(field, f)
        gp = FqPoly(field, g)
        if gp.is_zero:
            return
        q, r = divmod(fp, gp)
        assert q * gp + r == fp
        assert r.is_zero or r.degree < gp.degree

    @settings(max_examples=40, deadline=None)
    @given(
        f=st.lists(st.integers(0, 4), min_size=1, max_size=6),
        g=st.lists(st.integers(0, 4), min_size=1, max_size=6),
    )
    def test_gcd_divides_both(self, f, g):
        field = fq_context(5, 1)
        fp = FqPoly(field, f)
        gp = FqPoly(field, g)
        d = poly_gcd(fp, gp)
        if d.is_zero:
            assert fp.is_zero and gp.is_zero
            return
        assert d.leading == field.one()
        assert (fp % d).is_zero
        assert (gp % d).is_zero

    def test_gcd_of_known_product(self):
        field = fq_context(7, 1)
        x = FqPoly.x(field)
        one = FqPoly(field, [1])
        a = (x - 2 * one) * (x - 3 * one)
        b = (x - 2 * one) * (x - 5 * one)
        assert poly_gcd(a, b) == x - 2 * one

    def test_pow_mod_matches_repeated_multiplication(self):
        field = fq_context(5, 1)
        x = FqPoly.x(field)
        mod = FqPoly(field, [2, 0, 1])
        base = FqPoly(field, [1, 3])
        acc = FqPoly(field, [1])
        for e in range(8):
            assert poly_pow_mod(base, e, mod) == acc % mod
            acc = acc * base

    def test_pow_mod_rejects_negative_exponent(self):
        field = fq_context(5, 1)
        with pytest.raises(ValueError):
            poly_pow_mod(FqPoly.x(field), -1, FqPoly(field, [1, 1]))

    def test_evaluate_and_derivative(self):
        field = fq_context(11, 1)
        poly = FqPoly(field, [3, 0, 1, 4])  # 4x^3 + x^2 + 3
        for n in range(11):
            x = field.from_int(n)
            assert poly.evaluate(x) == field.from_int(4 * n**3 + n**2 + 3)
        assert poly.derivative() == FqPoly(field, [0, 2, 12])

    def test_lift_poly_preserves_values(self):
        f5 = fq_context(5, 1)
        f25 = fq_context(5, 2)
        poly = FqPoly(f5, [1, 2, 3])
        lifted = lift_poly(poly, f25)
        for n in range(5):
            assert lifted.evaluate(f25.from_int(n)).encoding == poly.evaluate(f5.from_int(n)).encoding

    def test_lift_poly_rejects_cross_characteristic(self):
        with pytest.raises(FieldMismatch):
            lift_poly(FqPoly.x(fq_context(3, 1)), fq_context(5, 2))


class TestRoots:
    def test_prime_field_multiplicities(self):
        field = fq_context(7, 1)
        x = FqPoly.x(field)
        one = FqPoly(field, [1])
        f = (x - 2 * one) * (x - 2 * one) * (x - 3 * one)
        assert [(r.encoding, m) for r, m in roots_in(f, 1)] == [(2, 2), (3, 1)]

    def test_brute_force_oracle_small_extension(self):
        field = fq_context(5, 1)
        rng = random.Random(20260822)
        target = fq_context(5, 2)
        for _ in range(25):
            coeffs = [rng.randrange(5) for _ in range(rng.randrange(2, 7))]
            f = FqPoly(field, coeffs)
            if f.is_zero:
                continue
            lifted = lift_poly(f, target)
            expected = []
            for e in target.elements():
                mult = 0
                h = lifted
                lin = FqPoly(target, [-e, target.one()])
                while not h.is_zero and (divmod(h, lin)[1]).is_zero:
                    h = h // lin
                    mult += 1
                if mult and not lifted.evaluate(e).is_zero:
                    raise AssertionError("oracle inconsistency")
                if mult:
                    expected.append((e.encoding, mult))
            got = [(r.encoding, m) for r, m in roots_in(f, 2)]
            assert got == sorted(expected)

    def test_quadratic_nonresidue_splits_upstairs(self):
        field = fq_context(5, 1)
        f = FqPoly(field, [-2, 0, 1])  # x^2 - 2, irreducible over F_5
        assert roots_in(f, 1) == []
        found = roots_in(f, 2)
        assert len(found) == 2
        (r1, m1), (r2, m2) = found
        assert m1 == m2 == 1
        assert (r1 * r1).encoding == 2
        assert r1 + r2 == fq_context(5, 2).zero()

    def test_large_odd_field_splitting(self):
        # order 5^6 exceeds the exhaustive-scan threshold
        target = fq_context(5, 6)
        g = target.multiplicative_generator()
        r0, r1, r2 = g, g**7, g**319
        x = FqPoly.x(target)
        lin = lambda r: x - FqPoly(target, [r])
        f = lin(r0) * lin(r0) * lin(r1) * lin(r2)
        got = roots_in(f, 6)
        assert sorted(((r.encoding, m) for r, m in got)) == sorted(
            [(r0.encoding, 2), (r1.encoding, 1), (r2.encoding, 1)]
        )

    def test_large_char2_field_splitting(self):
        # char 2 takes the trace-map splitting branch
        target = fq_context(2, 13)
        g = target.multiplicative_generator()
        roots = [g, g**100, g**1000, g**5000]
        x = FqPoly.x(target)
        f = FqPoly(target, [1])
        for r in roots:
            f = f * (x - FqPoly(target, [r]))
        got = roots_in(f, 13)
        assert sorted(r.encoding for r, _ in got) == sorted(r.encoding for r in roots)
        assert all(m == 1 for _, m in got)

    def test_rejects_zero_polynomial(self):
        field = fq_context(5, 1)
        with pytest.raises(ValueError):
            roots_in(FqPoly(field), 1)


def ss_count_formula(p):
    if p in (2, 3):
        return 1
    base = p // 12
    return base + {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]


def primes_upto(n):
    sieve = [True] * (n + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            for j in range(i * i, n + 1, i):
                sieve[j] = False
    return [i for i, f in enumerate(sieve) if f]


class TestSupersingular:
    def test_tiny_characteristics(self):
        for p in (2, 3):
            field = fq_context(p, 1)
            assert supersingular_polynomial(p) == FqPoly.x(field)

    def test_frozen_small_primes(self):
        assert supersingular_polynomial(7) == FqPoly(fq_context(7, 1), [1, 1])
        assert supersingular_polynomial(11) == FqPoly(fq_context(11, 1), [0, -1, 1])
        assert supersingular_polynomial(13) == FqPoly(fq_context(13, 1), [8, 1])

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            supersingular_polynomial(10)

    @pytest.mark.parametrize("p", primes_upto(200))
    def test_count_formula(self, p):
        ss = supersingular_polynomial(p)
        assert ss.leading == fq_context(p, 1).one()
        assert supersingular_count(p) == ss_count_formula(p)

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31])
    def test_splits_simply_over_quadratic_extension(self, p):
        ss = supersingular_polynomial(p)
        found = roots_in(ss, 2)
        assert len(found) == ss.degree
        assert all(m == 1 for _, m in found)

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
    def test_roots_have_trace_divisible_by_p(self, p):
        for r, _ in roots_in(supersingular_polynomial(p), 2):
            assert frobenius_trace(r) % p == 0

    @pytest.mark.parametrize("p", [11, 13, 23])
    def test_prime_field_detection_agrees_with_counting(self, p):
        ss = supersingular_polynomial(p)
        field = fq_context(p, 1)
        for j in field.elements():
            vanishes = ss.evaluate(j).is_zero
            assert vanishes == (frobenius_trace(j) % p == 0)


def brute_trace_char_gt3_prime(p, j):
    if j % p == 0:
        a, b = 0, 1
    elif j % p == 1728 % p:
        a, b = 1, 0
    else:
        k = j * pow(1728 - j, -1, p) % p
        a, b = 3 * k % p, 2 * k % p
    total = 0
    for x in range(p):
        fx = (x * x * x + a * x + b) % p
        if fx:
            total += 1 if pow(fx, (p - 1) // 2, p) == 1 else -1
    return -total


class TestFrobeniusTrace:
    @pytest.mark.parametrize("j", [0, 1728, 5, 23, 77])
    def test_prime_field_matches_character_sum(self, j):
        p = 101
        field = fq_context(p, 1)
        assert frobenius_trace(field.from_int(j)) == brute_trace_char_gt3_prime(p, j)

    def test_char2_matches_exhaustive_count(self):
        field = fq_context(2, 4)
        for j0 in field.elements():
            if j0.is_zero:
                continue  # j = 0 is supersingular in char 2
            a6 = j0.inverse()
            affine = 0
            for x in field.elements():
                for y in field.elements():
                    if y * y + x * y == x * x * x + a6:
                        affine += 1
            assert frobenius_trace(j0) == field.q + 1 - (affine + 1)

    def test_char3_matches_exhaustive_count(self):
        field = fq_context(3, 2)
        for j0 in field.elements():
            if j0.is_zero:
                continue
            a6 = -j0.inverse()
            affine = 0
            for x in field.elements():
                for y in field.elements():
                    if y * y == x * x * x + x * x + a6:
                        affine += 1
            assert frobenius_trace(j0) == field.q + 1 - (affine + 1)

    def test_hasse_bound_everywhere_small(self):
        for p, m in [(5, 2), (7, 1), (2, 5)]:
            field = fq_context(p, m)
            for j in field.elements():
                t = frobenius_trace(j)
                assert t * t <= 4 * field.q

    def test_field_cap_enforced(self):
        field = fq_context(2, 21)
        with pytest.raises(FieldTooLarge):
            frobenius_trace(field.one())


class TestDeuring:
    def test_rejects_supersingular_j(self):
        with pytest.raises(SupersingularInput):
            deuring_discriminants(fq_context(5, 1).zero())

    def test_known_small_cases(self):
        # the vanishing discriminant is forced by which H_D(j) hits 0 mod p
        assert deuring_discriminants(fq_context(3, 1).from_int(2)) == [-8]
        assert abs(frobenius_trace(fq_context(3, 1).from_int(2))) == 2
        assert deuring_discriminants(fq_context(5, 1).from_int(2)) == [-11]
        assert abs(frobenius_trace(fq_context(5, 1).from_int(2))) == 3
        assert deuring_discriminants(fq_context(7, 1).from_int(2)) == [-12]
        assert abs(frobenius_trace(fq_context(7, 1).from_int(2))) == 4

    def test_cm_j_values_recover_their_order(self):
        assert -4 in deuring_discriminants(fq_context(13, 1).from_int(1728 % 13))
        assert -3 in deuring_discriminants(fq_context(7, 1).zero())
        assert -8 in deuring_discriminants(fq_context(17, 1).from_int(8000 % 17))


class TestMichelCounts:
    def test_frozen_histograms(self):
        f49 = fq_context(7, 2)
        assert michel_counts(-8, 7) == {f49.from_int(6): 1}
        assert michel_counts(-15, 7) == {f49.from_int(6): 2}
        f4 = fq_context(2, 2)
        assert michel_counts(-3, 2) == {f4.zero(): 1}
        f25 = fq_context(5, 2)
        assert michel_counts(-23, 5) == {f25.zero(): 3}

    def test_rejects_split_or_ramified_prime(self):
        with pytest.raises(NotInert):
            michel_counts(-15, 2)  # kronecker(-15, 2) = +1
        with pytest.raises(NotInert):
            michel_counts(-15, 3)  # ramified

    def test_rejects_non_fundamental(self):
        with pytest.raises(ValueError):
            michel_counts(-12, 5)

    @pytest.mark.parametrize("D,p", [(-20, 11), (-23, 5), (-31, 3), (-47, 5)])
    def test_multiplicities_sum_to_class_number(self, D, p):
        counts = michel_counts(D, p)
        assert sum(counts.values()) == class_number(D)
        ss = lift_poly(supersingular_polynomial(p), fq_context(p, 2))
        for r in counts:
            assert ss.evaluate(r).is_zero
