"""Tangi: turn equirectangular 360 frames into printable artifacts."""

__version__ = "0.1.0"
