"""Bit-string codecs shared by every label format.

Labels are plain ``str`` objects over the alphabet ``{'0', '1'}`` so that
proof sizes can be read off with ``len``.  All decoders raise
:class:`DecodeError` on malformed input; verifiers turn that into a reject.
"""

from __future__ import annotations

from typing import List, Sequence


class DecodeError(ValueError):
    """Raised when a bit string does not parse under the expected layout."""


def is_bits(s: object) -> bool:
    return isinstance(s, str) and all(ch in "01" for ch in s)


def uint(x: int, width: int) -> str:
    """Fixed-width unsigned encoding (most significant bit first)."""
    if x < 0 or (width == 0 and x != 0) or x >= (1 << width):
        raise ValueError(f"{x} does not fit in {width} unsigned bits")
    return format(x, "b").zfill(width) if width else ""


def read_uint(bits: str) -> int:
    if not bits:
        return 0
    if not is_bits(bits):
        raise DecodeError("not a bit string")
    return int(bits, 2)


def nat(x: int) -> str:
    """Minimal unsigned encoding; zero is the single bit ``0``."""
    if x < 0:
        raise ValueError("nat() takes non-negative integers")
    return format(x, "b")


def read_nat(bits: str) -> int:
    if not bits:
        raise DecodeError("empty natural number")
    return read_uint(bits)


def sint_width(x: int) -> int:
    """Bits needed for ``x`` in two's complement (at least one)."""
    if x >= 0:
        return x.bit_length() + 1
    return (-x - 1).bit_length() + 1


def sint(x: int, width: int | None = None) -> str:
    """Two's complement encoding, minimal width unless ``width`` is given."""
    w = sint_width(x) if width is None else width
    if w < sint_width(x):
        raise ValueError(f"{x} does not fit in {w} signed bits")
    return uint(x & ((1 << w) - 1), w)


def read_sint(bits: str) -> int:
    if not bits:
        raise DecodeError("empty signed integer")
    v = read_uint(bits)
    if bits[0] == "1":
        v -= 1 << len(bits)
    return v


def gamma(n: int) -> str:
    """Elias gamma code of ``n >= 1``."""
    if n < 1:
        raise ValueError("gamma code needs n >= 1")
    body = format(n, "b")
    return "0" * (len(body) - 1) + body


def read_gamma(bits: str, pos: int = 0) -> tuple[int, int]:
    """Decode a gamma code starting at ``pos``; returns ``(value, new_pos)``."""
    zeros = 0
    while pos + zeros < len(bits) and bits[pos + zeros] == "0":
        zeros += 1
    end = pos + 2 * zeros + 1
    if end > len(bits):
        raise DecodeError("truncated gamma code")
    return int(bits[pos + zeros:end], 2), end


def pack(parts: Sequence[str]) -> str:
    """Concatenate parts, length-prefixing all but the last one."""
    if not parts:
        return ""
    out = [gamma(len(p) + 1) + p for p in parts[:-1]]
    out.append(parts[-1])
    return "".join(out)


def unpack(bits: str, count: int) -> List[str]:
    """Inverse of :func:`pack` for a known number of parts."""
    if not is_bits(bits):
        raise DecodeError("not a bit string")
    parts: List[str] = []
    pos = 0
    for _ in range(count - 1):
        n, pos = read_gamma(bits, pos)
        end = pos + n - 1
        if end > len(bits):
            raise DecodeError("truncated frame")
        parts.append(bits[pos:end])
        pos = end
    parts.append(bits[pos:])
    return parts


class BitReader:
    """Sequential reader over a bit string."""

    def __init__(self, bits: str) -> None:
        if not is_bits(bits):
            raise DecodeError("not a bit string")
        self.bits = bits
        self.pos = 0

    def take(self, width: int) -> str:
        end = self.pos + width
        if width < 0 or end > len(self.bits):
            raise DecodeError("truncated field")
        chunk = self.bits[self.pos:end]
        self.pos = end
        return chunk

    def uint(self, width: int) -> int:
        return read_uint(self.take(width))

    def gamma(self) -> int:
        value, self.pos = read_gamma(self.bits, self.pos)
        return value

    def rest(self) -> str:
        chunk = self.bits[self.pos:]
        self.pos = len(self.bits)
        return chunk

    def done(self) -> bool:
        return self.pos == len(self.bits)

    def expect_done(self) -> None:
        if not self.done():
            raise DecodeError("trailing bits")


def to_hex(bits: str) -> str:
    """Hex rendering used by the output sidecar: ``<hex>/<nbits>``."""
    if not bits:
        return "-"
    pad = (-len(bits)) % 4
    value = int(bits + "0" * pad, 2)
    return f"{value:0{(len(bits) + pad) // 4}x}/{len(bits)}"


def from_hex(token: str) -> str:
    if token == "-":
        return ""
    if "/" in token:
        digits, _, nbits = token.partition("/")
        n = int(nbits)
    else:
        digits, n = token, 4 * len(token)
    value = int(digits, 16)
    full = format(value, "b").zfill(4 * len(digits))
    if n > len(full) or any(ch != "0" for ch in full[n:]):
        raise DecodeError(f"bad hex bitstring {token!r}")
    return full[:n]
