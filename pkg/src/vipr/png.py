"""Minimal PNG codec for the pipeline's image boundary.

Decodes non-interlaced 8/16-bit grayscale, gray+alpha, RGB and RGBA
files (color converted to Rec. 601 luma, alpha ignored) and encodes
8-bit grayscale. Chunk-level parsing keeps error messages specific:
every failure names the chunk it occurred in.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

from .errors import PngError, UnsupportedFormatError
from .image import GrayImage

_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_CHANNELS = {0: 1, 2: 3, 4: 2, 6: 4}

__all__ = ["decode_png", "encode_png"]


def _iter_chunks(data: bytes):
    pos = len(_SIGNATURE)
    while pos < len(data):
        if pos + 8 > len(data):
            raise PngError(f"chunk header truncated at offset {pos}")
        (length,) = struct.unpack(">I", data[pos : pos + 4])
        ctype = data[pos + 4 : pos + 8]
        if pos + 12 + length > len(data):
            raise PngError(f"{ctype.decode('latin-1')}: chunk payload truncated")
        payload = data[pos + 8 : pos + 8 + length]
        (crc,) = struct.unpack(">I", data[pos + 8 + length : pos + 12 + length])
        if zlib.crc32(ctype + payload) & 0xFFFFFFFF != crc:
            raise PngError(f"{ctype.decode('latin-1')}: CRC mismatch")
        yield ctype, payload
        pos += 12 + length


def _unfilter(raw: bytes, height: int, stride: int, bpp: int) -> np.ndarray:
    if len(raw) != height * (stride + 1):
        raise PngError(
            f"IDAT: expected {height * (stride + 1)} filtered bytes, got {len(raw)}"
        )
    out = np.empty((height, stride), dtype=np.uint8)
    prev = np.zeros(stride, dtype=np.uint8)
    pos = 0
    for y in range(height):
        ftype = raw[pos]
        row = np.frombuffer(raw, dtype=np.uint8, count=stride, offset=pos + 1).copy()
        pos += stride + 1
        if ftype == 0:
            rec = row
        elif ftype == 1:  # Sub: modular prefix sum per byte lane
            rec = row
            for lane in range(bpp):
                rec[lane::bpp] = np.cumsum(rec[lane::bpp], dtype=np.uint64) & 0xFF
        elif ftype == 2:  # Up
            rec = row + prev
        elif ftype == 3:  # Average
            rec = row
            up = prev
            for x in range(stride):
                left = int(rec[x - bpp]) if x >= bpp else 0
                rec[x] = (int(row[x]) + ((left + int(up[x])) >> 1)) & 0xFF
        elif ftype == 4:  # Paeth
            rec = row
            up = prev
            for x in range(stride):
                a = int(rec[x - bpp]) if x >= bpp else 0
                b = int(up[x])
                c = int(up[x - bpp]) if x >= bpp else 0
                p = a + b - c
                pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
                if pa <= pb and pa <= pc:
                    pred = a
                elif pb <= pc:
                    pred = b
                else:
                    pred = c
                rec[x] = (int(row[x]) + pred) & 0xFF
        else:
            raise PngError(f"IDAT: unknown filter type {ftype} on scanline {y}")
        out[y] = rec
        prev = rec
    return out


def decode_png(data: bytes) -> GrayImage:
    """Decode a PNG byte string to a grayscale image in [0, 1].

    RGB channels collapse to 0.299 R + 0.587 G + 0.114 B; an alpha
    channel, when present, is dropped.
    """
    if not data.startswith(_SIGNATURE):
        raise PngError("signature: not a PNG stream")

    header = None
    idat = bytearray()
    saw_end = False
    for ctype, payload in _iter_chunks(data):
        name = ctype.decode("latin-1")
        if name == "IHDR":
            if len(payload) != 13:
                raise PngError("IHDR: expected 13 bytes")
            header = struct.unpack(">IIBBBBB", payload)
        elif name == "IDAT":
            if header is None:
                raise PngError("IDAT: appears before IHDR")
            idat.extend(payload)
        elif name == "IEND":
            saw_end = True
            break
    if header is None:
        raise PngError("IHDR: missing")
    if not idat:
        raise PngError("IDAT: missing")
    if not saw_end:
        raise PngError("IEND: missing")

    width, height, depth, color, compression, filt, interlace = header
    if width < 1 or height < 1:
        raise PngError(f"IHDR: invalid dimensions {width}x{height}")
    if compression != 0 or filt != 0:
        raise PngError("IHDR: unknown compression or filter method")
    if interlace != 0:
        raise UnsupportedFormatError("Adam7 interlaced PNG not supported")
    if color not in _CHANNELS:
        raise UnsupportedFormatError(f"color type {color} not supported")
    if depth not in (8, 16):
        raise UnsupportedFormatError(f"bit depth {depth} not supported")

    try:
        raw = zlib.decompress(bytes(idat))
    except zlib.error as exc:
        raise PngError(f"IDAT: corrupt deflate stream ({exc})") from exc

    channels = _CHANNELS[color]
    bpp = channels * depth // 8
    rows = _unfilter(raw, height, width * bpp, bpp)

    if depth == 8:
        samples = rows.reshape(height, width, channels).astype(np.float64) / 255.0
    else:
        pairs = rows.reshape(-1).view(">u2").reshape(height, width, channels)
        samples = pairs.astype(np.float64) / 65535.0

    if channels >= 3:
        luma = 0.299 * samples[:, :, 0] + 0.587 * samples[:, :, 1] + 0.114 * samples[:, :, 2]
    else:
        luma = samples[:, :, 0]
    return GrayImage(np.clip(luma, 0.0, 1.0))


def _chunk(ctype: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + ctype
        + payload
        + struct.pack(">I", zlib.crc32(ctype + payload) & 0xFFFFFFFF)
    )


def encode_png(img: GrayImage) -> bytes:
    """Encode as 8-bit grayscale PNG, each value stored as round(p * 255)."""
    raw = img.to_bytes()
    scanlines = bytearray()
    for y in range(img.height):
        scanlines.append(0)  # filter type None
        scanlines.extend(raw[y].tobytes())
    ihdr = struct.pack(">IIBBBBB", img.width, img.height, 8, 0, 0, 0, 0)
    return (
        _SIGNATURE
        + _chunk(b"IHDR", ihdr)
        + _chunk(b"IDAT", zlib.compress(bytes(scanlines), 6))
        + _chunk(b"IEND", b"")
    )
