#!/usr/bin/env python3
"""Regenerates golden_vectors.csv.

Searches nonces 0,1,2,... for the first SHA-256 digest of

    APW1:<ts>:<seed 32 lowercase hex>:<d>:<ip>:<nonce 8 lowercase hex>

with at least d leading zero bits, and records (nonce, attempts).
Run from this directory: python3 make_golden_vectors.py > golden_vectors.csv
"""

import hashlib

CASES = [
    (1700000000, "00000000000000000000000000000000", 0, "10.0.0.1"),
    (1700000000, "00000000000000000000000000000000", 4, "10.0.0.1"),
    (1700000000, "000102030405060708090a0b0c0d0e0f", 8, "10.0.0.1"),
    (1725000000, "ffeeddccbbaa99887766554433221100", 8, "192.0.2.9"),
    (1725000000, "5ca1ab1e5ca1ab1e5ca1ab1e5ca1ab1e", 8, "203.0.113.77"),
    (1700000001, "0123456789abcdef0123456789abcdef", 10, "::1"),
    (1711111111, "deadbeefdeadbeefdeadbeefdeadbeef", 12, "2001:db8::1"),
    (1699999999, "c0ffee00c0ffee00c0ffee00c0ffee00", 16, "10.0.0.200"),
]


def leading_zero_bits(digest: bytes) -> int:
    n = 0
    for b in digest:
        if b == 0:
            n += 8
            continue
        while not (b & 0x80):
            n += 1
            b <<= 1
        break
    return n


def first_nonce(ts: int, seed_hex: str, d: int, ip: str) -> tuple[int, int]:
    prefix = f"APW1:{ts}:{seed_hex}:{d}:{ip}:".encode("ascii")
    for nonce in range(1 << 32):
        digest = hashlib.sha256(prefix + f"{nonce:08x}".encode("ascii")).digest()
        if leading_zero_bits(digest) >= d:
            return nonce, nonce + 1
    raise RuntimeError("nonce space exhausted")


def main() -> None:
    print("ts,seed_hex,d,ip,expected_nonce,expected_attempts")
    for ts, seed_hex, d, ip in CASES:
        nonce, attempts = first_nonce(ts, seed_hex, d, ip)
        print(f"{ts},{seed_hex},{d},{ip},{nonce},{attempts}")


if __name__ == "__main__":
    main()
