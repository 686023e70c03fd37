"""Arbitrary-precision evaluation of E4, Delta and j by q-series.

Values are mpmath complex numbers computed under an explicit working
precision; callers state the target precision in bits and receive a value
carrying a 32-bit internal guard. mpmath's global context is not thread
safe, so every precision-scoped block takes a module lock; at desk scale
the interpreter lock serializes this work anyway.
"""

from __future__ import annotations

import threading
from math import ceil

import mpmath
from mpmath import mp

from .quadforms import class_number, inv_a_sum

MP_LOCK = threading.RLock()

_sigma3: list[int] = [0]  # divisor power sums, extended on demand
_sigma3_lock = threading.Lock()


def _sigma3_upto(n: int) -> list[int]:
    """Return a list s with s[m] = sum of d^3 over divisors d of m, m <= n."""
    with _sigma3_lock:
        if n >= len(_sigma3):
            grow = max(n, 2 * len(_sigma3))
            s = [0] * (grow + 1)
            for d in range(1, grow + 1):
                d3 = d * d * d
                for m in range(d, grow + 1, d):
                    s[m] += d3
            _sigma3[:] = s
        return _sigma3


def required_precision(D: int) -> int:
    """Working precision in bits for assembling the degree-h(D) product.

    ceil(pi*sqrt(|D|)/ln 2 * sum(1/a)) bounds the dominant coefficient
    size; 64 bits of margin plus 8 per degree guard the rounding.
    """
    s = inv_a_sum(D)  # validates D
    with MP_LOCK, mp.workprec(96 + abs(D).bit_length()):
        base = mp.pi * mp.sqrt(-D) / mp.ln(2) * mp.mpf(s.numerator) / mp.mpf(s.denominator)
        base_int = int(mp.ceil(base))
    return base_int + 64 + 8 * class_number(D)


def j_tau(tau, prec_bits: int) -> mpmath.mpc:
    """j(tau) = E4(q)^3 / Delta(q), q = exp(2 pi i tau).

    E4 = 1 + 240*sum(n^3 q^n/(1-q^n)) evaluated as the equivalent power
    series sum(sigma_3(n) q^n); Delta = q*prod((1-q^n)^24) via the literal
    eta product. Both truncate once |q|^n < 2^-(prec_bits+32). Requires
    Im(tau) > 0.4 (callers supply near-reduced arguments) and prec_bits
    >= 64. Absolute error is within 2^-(prec_bits-8)*max(1, |j|).
    """
    if prec_bits < 64:
        raise ValueError("prec_bits must be >= 64")
    with MP_LOCK, mp.workprec(prec_bits + 32):
        t = mp.mpc(tau)
        im = mp.im(t)
        if not im > 0.4:
            raise ValueError("Im(tau) must exceed 0.4")
        q = mp.exp(2j * mp.pi * t)
        absq = abs(q)
        if not absq < 1:
            raise ValueError("|q| must be below 1")
        # |q|^n < 2^-(prec+32)  <=>  n > (prec+32) / (-log2 |q|)
        nterms = int(ceil((prec_bits + 32) / float(-mp.log(absq, 2)))) + 1
        sigma = _sigma3_upto(nterms)
        e4 = mp.mpc(1)
        eta = mp.mpc(1)
        qpow = mp.mpc(1)
        for n in range(1, nterms + 1):
            qpow *= q
            e4 += 240 * sigma[n] * qpow
            eta *= 1 - qpow
        delta = q * eta**24
        return e4**3 / delta
