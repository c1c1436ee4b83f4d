"""Thin Pillow wrapper: RGBA arrays in, PNG/JPEG files and bytes out."""

from __future__ import annotations

import io

import numpy as np
from PIL import Image


def load_rgba(source) -> np.ndarray:
    """Decode a PNG/JPEG path or file object to an (H, W, 4) uint8 array."""
    with Image.open(source) as im:
        return np.asarray(im.convert("RGBA"), dtype=np.uint8).copy()


def decode_rgba(data: bytes) -> np.ndarray:
    return load_rgba(io.BytesIO(data))


def encode_png(arr: np.ndarray) -> bytes:
    """Encode an (H, W, 4) uint8 array as PNG bytes (deterministic for equal input)."""
    buf = io.BytesIO()
    Image.fromarray(np.ascontiguousarray(arr), "RGBA").save(buf, format="PNG")
    return buf.getvalue()


def save_png(arr: np.ndarray, path) -> None:
    Image.fromarray(np.ascontiguousarray(arr), "RGBA").save(path, format="PNG")


def box_resize(arr: np.ndarray, width: int, height: int) -> np.ndarray:
    """Box-filter downscale of an RGBA array."""
    im = Image.fromarray(np.ascontiguousarray(arr), "RGBA").resize((width, height), Image.BOX)
    return np.asarray(im, dtype=np.uint8).copy()
