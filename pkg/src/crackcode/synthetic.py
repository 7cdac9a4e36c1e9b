"""Seeded synthetic test images.

A spec file is a JSON list of objects with the fields of
:class:`SyntheticSpec`, e.g.::

    [{"name": "flat", "width": 100, "height": 100, "depth": 8,
      "kind": "uniform", "value": 9},
     {"name": "noisy", "width": 64, "height": 64, "depth": 24,
      "kind": "noise", "seed": 42}]
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .bmp import BmpImage, new_image
from .errors import BadSpec

KINDS = ("uniform", "stripes", "blobs", "checker", "noise")
DEPTHS = (8, 24)


@dataclass(frozen=True)
class SyntheticSpec:
    width: int
    height: int
    depth: int = 8
    kind: str = "uniform"
    # bands for stripes, rectangles for blobs, cell side for checker
    region_count: int = 1
    seed: int = 0
    value: int | None = None
    name: str | None = None

    def __post_init__(self):
        if not (isinstance(self.width, int) and isinstance(self.height, int)) or self.width < 1 or self.height < 1:
            raise BadSpec(f"width and height must be positive integers, got {self.width}x{self.height}")
        if self.depth not in DEPTHS:
            raise BadSpec(f"depth must be one of {DEPTHS}, got {self.depth}")
        if self.kind not in KINDS:
            raise BadSpec(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not isinstance(self.region_count, int) or self.region_count < 1:
            raise BadSpec(f"region_count must be a positive integer, got {self.region_count}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 1 << 64:
            raise BadSpec(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.value is not None and not 0 <= self.value < 1 << self.depth:
            raise BadSpec(f"value {self.value} does not fit depth {self.depth}")

    @property
    def label(self) -> str:
        return self.name or f"{self.kind}_{self.width}x{self.height}_d{self.depth}_r{self.region_count}_s{self.seed}"

    @classmethod
    def from_dict(cls, data: dict) -> "SyntheticSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise BadSpec(f"unknown spec fields: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise BadSpec(str(exc)) from exc

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def load_specs(path) -> list[SyntheticSpec]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise BadSpec(f"{path}: {exc}") from exc
    if not isinstance(data, list) or not all(isinstance(d, dict) for d in data):
        raise BadSpec(f"{path}: expected a JSON list of objects")
    return [SyntheticSpec.from_dict(d) for d in data]


def _matrix(spec: SyntheticSpec) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    top = 1 << spec.depth
    h, w = spec.height, spec.width

    def draw(size=None):
        return rng.integers(0, top, size=size, dtype=np.int64)

    if spec.kind == "uniform":
        value = spec.value if spec.value is not None else int(draw())
        return np.full((h, w), value, dtype=np.int64)
    if spec.kind == "noise":
        return draw((h, w))
    if spec.kind == "stripes":
        band_values = draw(spec.region_count)
        band_of_row = np.arange(h) * spec.region_count // h
        return np.repeat(band_values[band_of_row][:, None], w, axis=1)
    if spec.kind == "checker":
        a = int(draw())
        b = (a + 1 + int(rng.integers(0, top - 1))) % top
        cell = spec.region_count
        parity = (np.arange(h)[:, None] // cell + np.arange(w)[None, :] // cell) % 2
        return np.where(parity == 0, a, b).astype(np.int64)
    # blobs: rectangles of random colour over a random background
    out = np.full((h, w), int(draw()), dtype=np.int64)
    for _ in range(spec.region_count):
        rh = int(rng.integers(1, max(1, h // 2) + 1))
        rw = int(rng.integers(1, max(1, w // 2) + 1))
        r0 = int(rng.integers(0, h - rh + 1))
        c0 = int(rng.integers(0, w - rw + 1))
        out[r0:r0 + rh, c0:c0 + rw] = int(draw())
    return out


def generate_synthetic(spec: SyntheticSpec) -> BmpImage:
    """Deterministic image for ``spec``; 8-bit images get a full grey palette."""
    return new_image(_matrix(spec), spec.depth)
