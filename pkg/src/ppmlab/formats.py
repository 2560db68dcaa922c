"""On-disk formats: bit files and the two code containers.

PPM code file (all integers big-endian)::

    8s   magic  b"PPMLAB\\x00\\x01"
    B    mode   0 = bounded, 1 = star
    H    k      context bound (0 for star)
    Q    declared source length in bits
    B    number of zero padding bits in the final byte
    ...  code bits, MSB first

LZ78 code file::

    8s   magic  b"LZ78LAB\\x01"
    B    flags  bit 0 = final phrase complete, bit 1 = Elias-gamma pointers
    Q    phrase count
    B    number of zero padding bits in the final byte
    ...  code bits, MSB first
"""

from __future__ import annotations

import struct
from typing import Tuple

from .coder import CodeOutput
from .lz78 import FIXED, GAMMA, LZCode
from .model import ModelConfig

PPM_MAGIC = b"PPMLAB\x00\x01"
LZ_MAGIC = b"LZ78LAB\x01"
_PPM_HEADER = struct.Struct(">8sBHQB")
_LZ_HEADER = struct.Struct(">8sBQB")


class FormatError(ValueError):
    pass


def pack_bits(bits: str) -> Tuple[bytes, int]:
    """Pack '0'/'1' characters MSB first; returns (bytes, padding bit count)."""
    pad = (-len(bits)) % 8
    padded = bits + "0" * pad
    data = int(padded, 2).to_bytes(len(padded) // 8, "big") if padded else b""
    return data, pad


def unpack_bits(data: bytes, pad: int = 0) -> str:
    if not data:
        return ""
    bits = format(int.from_bytes(data, "big"), "0%db" % (8 * len(data)))
    return bits[:len(bits) - pad] if pad else bits


def clean_bits(text: str) -> str:
    """Strip whitespace from an ASCII bit file and validate it."""
    bits = "".join(text.split())
    if bits.strip("01"):
        raise FormatError("bit files may only contain '0' and '1'")
    return bits


def read_bits(path: str, packed: bool = False, nbits: int = None) -> str:
    with open(path, "rb") as fh:
        raw = fh.read()
    if packed:
        bits = unpack_bits(raw)
        return bits if nbits is None else bits[:nbits]
    return clean_bits(raw.decode("ascii"))


def write_bits(path: str, bits: str, packed: bool = False) -> None:
    with open(path, "wb") as fh:
        fh.write(pack_bits(bits)[0] if packed else bits.encode("ascii"))


def dump_ppm(config: ModelConfig, code: CodeOutput) -> bytes:
    data, pad = pack_bits(code.bits)
    mode = 1 if config.mode == "star" else 0
    k = 0 if config.k is None else config.k
    return _PPM_HEADER.pack(PPM_MAGIC, mode, k, code.declared_length, pad) + data


def load_ppm(blob: bytes) -> Tuple[ModelConfig, CodeOutput]:
    if len(blob) < _PPM_HEADER.size or blob[:8] != PPM_MAGIC:
        raise FormatError("not a PPM code file")
    _, mode, k, length, pad = _PPM_HEADER.unpack_from(blob)
    if mode not in (0, 1) or pad > 7:
        raise FormatError("corrupt PPM header")
    config = ModelConfig("star") if mode else ModelConfig("bounded", k)
    bits = unpack_bits(blob[_PPM_HEADER.size:], pad)
    return config, CodeOutput(bits, length)


def dump_lz(code: LZCode) -> bytes:
    data, pad = pack_bits(code.bits)
    flags = (1 if code.complete else 0) | (2 if code.pointer_code == GAMMA else 0)
    return _LZ_HEADER.pack(LZ_MAGIC, flags, code.phrase_count, pad) + data


def load_lz(blob: bytes) -> LZCode:
    if len(blob) < _LZ_HEADER.size or blob[:8] != LZ_MAGIC:
        raise FormatError("not an LZ78 code file")
    _, flags, count, pad = _LZ_HEADER.unpack_from(blob)
    if flags > 3 or pad > 7:
        raise FormatError("corrupt LZ78 header")
    bits = unpack_bits(blob[_LZ_HEADER.size:], pad)
    return LZCode(bits, count, bool(flags & 1), GAMMA if flags & 2 else FIXED)
