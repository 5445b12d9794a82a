"""Grayscale image values and the geometric transforms built on them.

Pixels are real-valued in [0, 1] everywhere inside the package; 8-bit
quantization happens only at the PNG and Y4M boundaries. This keeps the
synthesis chain (crop, squish, seam repair, augmentation) free of
repeated quantization error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "GrayImage",
    "AffineTransform",
    "round_half_up",
    "resize_lanczos",
    "flip_horizontal",
    "warp_affine",
    "rotate_about_center",
]


def round_half_up(x: float) -> int:
    """Round with .5 going up, independent of the platform rounding mode."""
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class GrayImage:
    """Immutable single-channel raster, row-major, intensities in [0, 1].

    ``pixels`` is a read-only (height, width) float64 array.
    """

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"expected a 2-D image with positive dims, got shape {px.shape}")
        if not np.isfinite(px).all():
            raise ValueError("image contains non-finite values")
        lo, hi = float(px.min()), float(px.max())
        if lo < 0.0 or hi > 1.0:
            raise ValueError(f"intensities outside [0, 1]: min={lo}, max={hi}")
        px = px.copy()
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def constant(cls, width: int, height: int, value: float) -> "GrayImage":
        return cls(np.full((height, width), value, dtype=np.float64))

    def to_bytes(self) -> np.ndarray:
        """Quantize to uint8 with round(p * 255), the PNG/Y4M storage rule."""
        return np.clip(np.floor(self.pixels * 255.0 + 0.5), 0, 255).astype(np.uint8)

    @classmethod
    def from_bytes(cls, raw: np.ndarray) -> "GrayImage":
        return cls(np.asarray(raw, dtype=np.float64) / 255.0)


@dataclass(frozen=True)
class AffineTransform:
    """Sampling map from output coordinates to source coordinates.

    (x, y) in the output maps to (a*x + b*y + c, d*x + e*y + f) in the
    source, with x running along columns and y along rows. Storing the
    inverse (output-to-source) map is what warping needs directly.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self):
        if abs(self.a * self.e - self.b * self.d) < 1e-12:
            raise ValueError("affine transform is singular")

    @classmethod
    def identity(cls) -> "AffineTransform":
        return cls(1.0, 0.0, 0.0, 0.0, 1.0, 0.0)

    @classmethod
    def translation(cls, tx: float, ty: float) -> "AffineTransform":
        """Map for content shifted by (+tx, +ty) pixels."""
        return cls(1.0, 0.0, -tx, 0.0, 1.0, -ty)

    @classmethod
    def rotation(cls, degrees: float, cx: float, cy: float) -> "AffineTransform":
        """Map for content rotated by ``degrees`` about (cx, cy).

        Positive angles rotate content counterclockwise as displayed
        (x right, y down), so the sampling map applies the opposite
        rotation.
        """
        t = math.radians(degrees)
        cos, sin = math.cos(t), math.sin(t)
        # inverse of [[cos, sin], [-sin, cos]]
        return cls(
            cos, -sin, cx - cos * cx + sin * cy,
            sin, cos, cy - sin * cx - cos * cy,
        )

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "AffineTransform":
        """Build from a 2x3 or 3x3 output-to-source matrix."""
        m = np.asarray(m, dtype=np.float64)
        return cls(m[0, 0], m[0, 1], m[0, 2], m[1, 0], m[1, 1], m[1, 2])

    def apply(self, x, y):
        return self.a * x + self.b * y + self.c, self.d * x + self.e * y + self.f


def _lanczos3(x: np.ndarray) -> np.ndarray:
    # sinc(x) * sinc(x/3) on |x| < 3; np.sinc is the normalized sinc.
    out = np.where(np.abs(x) < 3.0, np.sinc(x) * np.sinc(x / 3.0), 0.0)
    return out


@lru_cache(maxsize=64)
def _lanczos_matrix(n_in: int, n_out: int) -> np.ndarray:
    """Dense (n_out, n_in) resampling matrix for one axis.

    Output sample i reads source coordinate (i + 0.5) * n_in / n_out - 0.5.
    Six taps cover the |x| < 3 support; taps are normalized to sum to 1
    and out-of-range taps are clamped onto the edge pixels, so constant
    inputs are reproduced exactly.
    """
    scale = n_in / n_out
    centers = (np.arange(n_out) + 0.5) * scale - 0.5
    base = np.floor(centers).astype(np.int64)
    taps = base[:, None] + np.arange(-2, 4)[None, :]
    weights = _lanczos3(taps - centers[:, None])
    weights /= weights.sum(axis=1, keepdims=True)
    cols = np.clip(taps, 0, n_in - 1)
    rows = np.repeat(np.arange(n_out), 6)
    matrix = np.zeros((n_out, n_in), dtype=np.float64)
    np.add.at(matrix, (rows, cols.ravel()), weights.ravel())
    matrix.setflags(write=False)
    return matrix


def resize_lanczos(img: GrayImage, out_w: int, out_h: int) -> GrayImage:
    """Separable Lanczos-3 resample to (out_w, out_h)."""
    if out_w < 1 or out_h < 1:
        raise ValueError(f"target dimensions must be positive, got {out_w}x{out_h}")
    px = img.pixels
    if out_h != img.height:
        px = _lanczos_matrix(img.height, out_h) @ px
    if out_w != img.width:
        px = px @ _lanczos_matrix(img.width, out_w).T
    return GrayImage(np.clip(px, 0.0, 1.0))


def flip_horizontal(img: GrayImage) -> GrayImage:
    return GrayImage(img.pixels[:, ::-1])


def warp_affine(img: GrayImage, t: AffineTransform, fill: float = 0.0) -> GrayImage:
    """Bilinear warp; sample points outside the source read ``fill``.

    Output dimensions equal the input's. A point counts as outside once
    it leaves [0, W-1] x [0, H-1], i.e. there is no partial blending with
    the fill value at the border.
    """
    h, w = img.height, img.width
    ys, xs = np.mgrid[0:h, 0:w]
    sx, sy = t.apply(xs.astype(np.float64), ys.astype(np.float64))

    valid = (sx >= 0.0) & (sx <= w - 1.0) & (sy >= 0.0) & (sy <= h - 1.0)
    x0 = np.floor(sx)
    y0 = np.floor(sy)
    fx = sx - x0
    fy = sy - y0
    x0i = np.clip(x0.astype(np.int64), 0, w - 1)
    y0i = np.clip(y0.astype(np.int64), 0, h - 1)
    x1i = np.minimum(x0i + 1, w - 1)
    y1i = np.minimum(y0i + 1, h - 1)

    px = img.pixels
    top = (1.0 - fx) * px[y0i, x0i] + fx * px[y0i, x1i]
    bot = (1.0 - fx) * px[y1i, x0i] + fx * px[y1i, x1i]
    out = (1.0 - fy) * top + fy * bot
    out = np.where(valid, out, fill)
    return GrayImage(np.clip(out, 0.0, 1.0))


def rotate_about_center(img: GrayImage, degrees: float) -> GrayImage:
    """Rotate content about the image center, filling exposed corners with 0."""
    cx = (img.width - 1) / 2.0
    cy = (img.height - 1) / 2.0
    return warp_affine(img, AffineTransform.rotation(degrees, cx, cy), fill=0.0)
