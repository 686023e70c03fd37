"""Exact Hilbert class polynomials with a persistent text cache.

H_D is assembled as the product of (T - j(tau)) over the reduced forms of
discriminant D in complex arithmetic at required_precision(D), with every
coefficient rounded to the nearest integer. A rounding residual of 0.25
or worse triggers a retry at doubled precision (three retries, then
PrecisionExhausted). Cache files are plain text with a CRC-64/XZ trailer
and are written via atomic rename.
"""

from __future__ import annotations

import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

from mpmath import mp

from .arith import is_discriminant, is_prime, kronecker
from .errors import CapExceeded, CorruptCache, PrecisionExhausted
from .intpoly import IntPolynomial
from .modfunc import MP_LOCK, j_tau, required_precision
from .quadforms import class_number, reduced_forms, unit_group_order

_memo: dict[int, IntPolynomial] = {}
_memo_lock = threading.Lock()

MAX_RETRIES = 3


def _product_tree(factors: list[list]) -> list:
    """Multiply monic linear factors pairwise to keep rounding error flat."""
    while len(factors) > 1:
        nxt = []
        for i in range(0, len(factors) - 1, 2):
            a, b = factors[i], factors[i + 1]
            out = [mp.mpc(0)] * (len(a) + len(b) - 1)
            for ia, ca in enumerate(a):
                for ib, cb in enumerate(b):
                    out[ia + ib] += ca * cb
            nxt.append(out)
        if len(factors) % 2:
            nxt.append(factors[-1])
        factors = nxt
    return factors[0]


def round_real_coeffs(coeffs, prec: int) -> list[int] | None:
    """Round complex coefficients to ints; None when the evidence is weak.

    Acceptance needs the imaginary part below 2^-(prec/2) relative to the
    coefficient and the real part within 0.25 of an integer.
    """
    out = []
    imag_tol = mp.ldexp(1, -(prec // 2))
    for c in coeffs:
        re, im = mp.re(c), mp.im(c)
        if abs(im) > imag_tol * max(1, abs(re)):
            return None
        n = mp.nint(re)
        if abs(re - n) >= 0.25:
            return None
        out.append(int(n))
    return out


def _assemble(D: int, prec: int) -> IntPolynomial | None:
    forms = reduced_forms(D)
    with MP_LOCK, mp.workprec(prec + 32):
        sqrt_abs_d = mp.sqrt(-D)
        factors = []
        for f in forms:
            tau = mp.mpc(mp.mpf(-f.b) / (2 * f.a), sqrt_abs_d / (2 * f.a))
            factors.append([-j_tau(tau, prec), mp.mpc(1)])
        coeffs = _product_tree(factors)
        ints = round_real_coeffs(coeffs, prec)
    if ints is None:
        return None
    poly = IntPolynomial(tuple(ints))
    if poly.degree != len(forms) or not poly.is_monic:
        return None
    return poly


def hilbert_class_polynomial(
    D: int,
    cache_dir: str | Path | None = None,
    prec_bits: int | None = None,
) -> IntPolynomial:
    """H_D(T), monic of degree h(D) over Z.

    Results are memoized in process and, when cache_dir is given, stored
    on disk. An explicit prec_bits bypasses both caches and starts the
    retry ladder at that precision instead of required_precision(D).
    """
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a negative discriminant")
    if prec_bits is None:
        with _memo_lock:
            memoized = _memo.get(D)
        if memoized is not None:
            # a memo hit must still honor the on-disk contract
            if cache_dir is not None and not _cache_path(D, cache_dir).exists():
                cache_store(D, memoized, cache_dir)
            return memoized
        if cache_dir is not None:
            cached = cache_load(D, cache_dir)
            if cached is not None:
                with _memo_lock:
                    _memo[D] = cached
                return cached
    prec = prec_bits if prec_bits is not None else required_precision(D)
    poly = None
    for _ in range(MAX_RETRIES + 1):
        poly = _assemble(D, prec)
        if poly is not None:
            break
        prec *= 2
    if poly is None:
        raise PrecisionExhausted(f"H_{D} did not round cleanly after {MAX_RETRIES} retries")
    if prec_bits is None:
        with _memo_lock:
            _memo[D] = poly
        if cache_dir is not None:
            cache_store(D, poly, cache_dir)
    return poly


# ---------------------------------------------------------------------------
# Congruence verifier.


@dataclass(frozen=True)
class Prop23Report:
    k: int
    congruence_holds: bool


def verify_prop23(
    D: int,
    p: int,
    n: int,
    h_cap: int = 2000,
    cache_dir: str | Path | None = None,
) -> Prop23Report:
    """Check H_{D p^(2n)} = H_D^k mod p and report the exponent k.

    k is (2 p^(n-1) / u)(p - kronecker(D, p)) with u the unit group order
    for D; it must also equal the class number ratio, which is asserted.
    """
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a negative discriminant")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    big_d = D * p ** (2 * n)
    h_big = class_number(big_d)
    if h_cap and h_big > h_cap:
        raise CapExceeded(f"h({big_d}) = {h_big} exceeds cap {h_cap}")
    num = 2 * p ** (n - 1) * (p - kronecker(D, p))
    u = unit_group_order(D)
    if num % u:
        raise ValueError(f"exponent formula not integral for D={D}, p={p}, n={n}")
    k = num // u
    h_small = class_number(D)
    if k * h_small != h_big:
        raise ValueError(f"exponent {k} disagrees with class number ratio {h_big}/{h_small}")
    h_d = hilbert_class_polynomial(D, cache_dir=cache_dir)
    h_big_poly = hilbert_class_polynomial(big_d, cache_dir=cache_dir)
    holds = h_big_poly.reduce_mod(p) == h_d.pow_mod(k, p)
    return Prop23Report(k=k, congruence_holds=holds)


# ---------------------------------------------------------------------------
# Disk cache.

_CRC_POLY = 0xC96C5795D7870F42  # CRC-64/XZ, reflected


def _crc_table() -> list[int]:
    table = []
    for i in range(256):
        crc = i
        for _ in range(8):
            crc = (crc >> 1) ^ _CRC_POLY if crc & 1 else crc >> 1
        table.append(crc)
    return table


_CRC_TABLE = _crc_table()


def crc64_xz(data: bytes) -> int:
    crc = 0xFFFFFFFFFFFFFFFF
    for byte in data:
        crc = (crc >> 8) ^ _CRC_TABLE[(crc ^ byte) & 0xFF]
    return crc ^ 0xFFFFFFFFFFFFFFFF


def _cache_path(D: int, cache_dir: str | Path) -> Path:
    return Path(cache_dir) / f"hd_{abs(D)}.txt"


def cache_store(D: int, poly: IntPolynomial, cache_dir: str | Path) -> Path:
    """Write the cache file for D atomically; returns the final path."""
    path = _cache_path(D, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    body_lines = ["HDPOLY 1", str(D), str(poly.degree)]
    body_lines.extend(str(c) for c in poly.coeffs)
    body = ("\n".join(body_lines) + "\n").encode("ascii")
    trailer = f"CRC64 {crc64_xz(body):016x}\n".encode("ascii")
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(body + trailer)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_load(D: int, cache_dir: str | Path) -> IntPolynomial | None:
    """Read the cached H_D, or None when absent; CorruptCache on damage."""
    path = _cache_path(D, cache_dir)
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        return None
    try:
        text = raw.decode("ascii")
        lines = text.split("\n")
        while lines and lines[-1] == "":
            lines.pop()
        if not lines or not lines[-1].startswith("CRC64 "):
            raise CorruptCache(f"{path}: missing checksum line")
        crc_line = lines[-1]
        body = raw[: raw.rindex(b"CRC64 ")]
        if crc64_xz(body) != int(crc_line.split()[1], 16):
            raise CorruptCache(f"{path}: checksum mismatch")
        if lines[0] != "HDPOLY 1":
            raise CorruptCache(f"{path}: bad magic")
        file_d = int(lines[1])
        h = int(lines[2])
        if len(lines) != h + 5:  # magic, D, h, h+1 coefficients, checksum
            raise CorruptCache(f"{path}: expected {h + 5} lines, found {len(lines)}")
        coeffs = [int(s) for s in lines[3 : 3 + h + 1]]
        if file_d != D:
            raise CorruptCache(f"{path}: holds D={file_d}, expected {D}")
    except CorruptCache:
        raise
    except (ValueError, IndexError) as exc:
        raise CorruptCache(f"{path}: malformed ({exc})") from exc
    poly = IntPolynomial(tuple(coeffs))
    if poly.degree != h or h != class_number(D) or not poly.is_monic:
        raise CorruptCache(f"{path}: degree or monicity does not match h({D})")
    return poly
