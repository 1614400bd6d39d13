"""Segmented reference sieve with a persistent, checksummed prime table.

The table is the ground truth the rest of the toolkit measures itself
against.  Primality for odd numbers is kept in a packed bitmap (bit k of
byte j answers for the number 2*(8*j + k) + 3), built segment by segment
so memory stays near limit/16 bytes plus one working segment.  A
smallest-prime-factor array can be attached for factor diagnostics; it
is never persisted and is rebuilt on demand.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

MAGIC = b"DSVE"
FORMAT_VERSION = 1

# Odd entries sieved per segment.  Must stay a multiple of 8 so finished
# segments pack byte-aligned into the master bitmap.
DEFAULT_SEGMENT_ODDS = 1 << 18

_HEADER = struct.Struct("<4sBQQ")
_CRC = struct.Struct("<I")


class CorruptCacheError(Exception):
    """A cached table failed validation; ``field`` names the bad part."""

    def __init__(self, field: str, detail: str):
        super().__init__(f"corrupt prime table cache ({field}): {detail}")
        self.field = field


def _odd_count(limit: int) -> int:
    # odd numbers 3, 5, ..., <= limit
    return (limit - 1) // 2 if limit >= 3 else 0


def _base_odd_primes(n: int) -> list[int]:
    """Odd primes <= n by a plain byte sieve (n is small: sqrt of limit)."""
    if n < 3:
        return []
    flags = bytearray(b"\x01") * (n + 1)
    for p in range(3, int(n**0.5) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = b"\x00" * len(flags[p * p :: 2 * p])
    return [i for i in range(3, n + 1, 2) if flags[i]]


class PrimeTable:
    """Immutable primality table for 1..limit.

    ``odd_bitmap`` holds one bit per odd number starting at 3.  The
    ``spf`` array (lazily built unless requested at construction) maps
    each 2 <= n <= limit to its smallest prime factor.
    """

    __slots__ = ("limit", "odd_bitmap", "_spf")

    def __init__(self, limit: int, odd_bitmap: bytes, spf=None):
        self.limit = limit
        self.odd_bitmap = bytes(odd_bitmap)
        self._spf = spf

    def is_prime(self, n: int) -> bool:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside table range 1..{self.limit}")
        if n < 3 or n % 2 == 0:
            return n == 2
        k = (n - 3) >> 1
        return bool(self.odd_bitmap[k >> 3] >> (k & 7) & 1)

    def primes(self) -> list[int]:
        """All primes <= limit, ascending."""
        out = [2] if self.limit >= 2 else []
        count = _odd_count(self.limit)
        if count:
            bits = np.unpackbits(
                np.frombuffer(self.odd_bitmap, dtype=np.uint8),
                count=count,
                bitorder="little",
            )
            out.extend((np.nonzero(bits)[0] * 2 + 3).tolist())
        return out

    def prime_count(self) -> int:
        n = int.from_bytes(self.odd_bitmap, "little").bit_count()
        return n + 1 if self.limit >= 2 else n

    @property
    def spf(self) -> np.ndarray:
        """Smallest prime factor of each index 2..limit (0 and 1 unused).

        Built on first access; concurrent first reads may duplicate the
        work but settle on equal arrays.
        """
        if self._spf is None:
            self._spf = _spf_array(self.limit)
        return self._spf


def _spf_array(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in [2] + _base_odd_primes(int(limit**0.5) + 1):
        if p * p > limit:
            break
        view = spf[p * p :: p]
        view[view == 0] = p
    untouched = np.nonzero(spf == 0)[0]
    spf[untouched] = untouched  # remaining entries >= 2 are prime
    spf[:2] = 0
    spf.flags.writeable = False
    return spf


def build(limit: int, with_spf: bool = False, segment_odds: int = DEFAULT_SEGMENT_ODDS) -> PrimeTable:
    """Sieve 1..limit segment by segment and return the packed table.

    Args:
        limit: inclusive upper bound, at least 2.
        with_spf: also build the smallest-prime-factor array eagerly.
        segment_odds: odd entries per working segment; multiple of 8.
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if segment_odds < 8 or segment_odds % 8:
        raise ValueError("segment_odds must be a positive multiple of 8")
    count = _odd_count(limit)
    bitmap = bytearray((count + 7) // 8)
    base = _base_odd_primes(int(limit**0.5) + 1)
    for k0 in range(0, count, segment_odds):
        k1 = min(k0 + segment_odds, count)
        lo = 2 * k0 + 3
        hi = 2 * (k1 - 1) + 3
        seg = bytearray(b"\x01") * (k1 - k0)
        for p in base:
            if p * p > hi:
                break
            start = max(p * p, lo + (-lo) % p)
            if start % 2 == 0:
                start += p
            if start > hi:
                continue
            i = (start - lo) >> 1
            seg[i::p] = b"\x00" * len(range(i, k1 - k0, p))
        packed = np.packbits(np.frombuffer(seg, dtype=np.uint8), bitorder="little")
        bitmap[k0 >> 3 : (k0 >> 3) + len(packed)] = packed.tobytes()
    spf = _spf_array(limit) if with_spf else None
    return PrimeTable(limit, bytes(bitmap), spf)


def save_cache(table: PrimeTable, path) -> None:
    """Write the table to ``path`` in the versioned binary layout.

    Little-endian: magic ``DSVE``, version byte, u64 limit, u64 bitmap
    byte length, bitmap, then CRC32 (u32) of every preceding byte.  The
    spf array is deliberately not persisted.
    """
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, table.limit, len(table.odd_bitmap))
    crc = zlib.crc32(table.odd_bitmap, zlib.crc32(header))
    with open(path, "wb") as fp:
        fp.write(header)
        fp.write(table.odd_bitmap)
        fp.write(_CRC.pack(crc))


def load_cache(path) -> PrimeTable:
    """Read a table written by :func:`save_cache`, validating every field."""
    with open(path, "rb") as fp:
        raw = fp.read()
    if len(raw) < 4 or raw[:4] != MAGIC:
        raise CorruptCacheError("magic", f"expected {MAGIC!r}")
    if len(raw) < 5 or raw[4] != FORMAT_VERSION:
        got = raw[4] if len(raw) >= 5 else None
        raise CorruptCacheError("version", f"expected {FORMAT_VERSION}, got {got}")
    if len(raw) < _HEADER.size:
        raise CorruptCacheError("header", "file truncated inside the header")
    _, _, limit, blen = _HEADER.unpack_from(raw)
    if limit < 2:
        raise CorruptCacheError("limit", f"limit {limit} below 2")
    expected_blen = (_odd_count(limit) + 7) // 8
    if blen != expected_blen:
        raise CorruptCacheError(
            "bitmap length", f"{blen} bytes recorded, limit {limit} needs {expected_blen}"
        )
    body_end = _HEADER.size + blen
    if len(raw) < body_end:
        raise CorruptCacheError("bitmap", "file truncated inside the bitmap")
    if len(raw) < body_end + _CRC.size:
        raise CorruptCacheError("crc32", "file truncated inside the checksum")
    if len(raw) > body_end + _CRC.size:
        raise CorruptCacheError("trailing data", f"{len(raw) - body_end - _CRC.size} extra bytes")
    (stored,) = _CRC.unpack_from(raw, body_end)
    actual = zlib.crc32(raw[:body_end])
    if stored != actual:
        raise CorruptCacheError("crc32", f"stored {stored:#010x}, computed {actual:#010x}")
    return PrimeTable(limit, raw[_HEADER.size : body_end])
