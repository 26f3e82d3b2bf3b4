"""Frame IO and per-frame record assembly.

Sampled frames live on disk as 8-bit grayscale PGM files named
``NNNNNN.pgm`` (zero-padded sample index).  Object detections arrive in
a sidecar JSON keyed by sample index; detections below the confidence
floor are dropped at load time.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np
from PIL import Image

from .analysis import (
    AnalysisConfig,
    FrameRecord,
    ObjectDetection,
    compute_focus_score,
    compute_luminance,
)
from .errors import InvalidFrame, MalformedInput

CONFIDENCE_FLOOR = 0.3

_FRAME_NAME = re.compile(r"^(\d{6})\.pgm$")


def read_pgm(path: Path) -> np.ndarray:
    """Read an 8-bit grayscale image into a uint8 array."""
    with Image.open(path) as img:
        if img.mode != "L":
            img = img.convert("L")
        return np.asarray(img, dtype=np.uint8)


def write_pgm(path: Path, pixels: np.ndarray) -> None:
    arr = np.asarray(pixels)
    if arr.ndim != 2:
        raise InvalidFrame("expected a 2-D pixel grid")
    Image.fromarray(arr.astype(np.uint8), mode="L").save(path, format="PPM")


class DirectoryFrameProvider:
    """Iterates frames/NNNNNN.pgm in sample order."""

    def __init__(self, directory: Path):
        self.directory = Path(directory)
        self._indices = []
        if self.directory.is_dir():
            for entry in sorted(self.directory.iterdir()):
                m = _FRAME_NAME.match(entry.name)
                if m:
                    self._indices.append(int(m.group(1)))
        self._indices.sort()
        if self._indices and self._indices != list(range(len(self._indices))):
            raise MalformedInput("frame files must be contiguous from 000000")

    def __len__(self) -> int:
        return len(self._indices)

    def indices(self) -> list[int]:
        return list(self._indices)

    def path_for(self, index: int) -> Path:
        return self.directory / f"{index:06d}.pgm"

    def load(self, index: int) -> np.ndarray:
        return read_pgm(self.path_for(index))


def load_detections(path: Path) -> dict[int, tuple[ObjectDetection, ...]]:
    """Load per-frame detections, keeping only confidence > 0.3.

    File format: {"<sample index>": [{"label", "confidence", "bbox"}]}.
    """
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read detections: {exc}") from exc
    if not isinstance(raw, dict):
        raise MalformedInput("detections must be a JSON object keyed by frame index")
    out: dict[int, tuple[ObjectDetection, ...]] = {}
    for key, items in raw.items():
        try:
            idx = int(key)
        except ValueError as exc:
            raise MalformedInput(f"bad frame index key: {key!r}") from exc
        dets = []
        for item in items:
            try:
                label = str(item["label"])
                conf = float(item["confidence"])
                bbox = tuple(float(v) for v in item["bbox"])
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedInput(f"bad detection for frame {idx}: {item!r}") from exc
            if len(bbox) != 4:
                raise MalformedInput(f"bbox must have 4 values, got {bbox!r}")
            if conf > CONFIDENCE_FLOOR:
                dets.append(ObjectDetection(label, conf, bbox))
        out[idx] = tuple(dets)
    return out


def build_records(
    provider: DirectoryFrameProvider,
    detections: dict[int, tuple[ObjectDetection, ...]],
    config: AnalysisConfig | None = None,
) -> list[FrameRecord]:
    """Compute luminance + focus for each frame and attach its detections."""
    config = config or AnalysisConfig()
    step = 1.0 / config.sample_rate
    records = []
    for idx in provider.indices():
        pixels = provider.load(idx)
        normalized = pixels.astype(np.float64) / 255.0
        records.append(
            FrameRecord(
                index=idx,
                time=idx * step,
                mean_luminance=compute_luminance(normalized, config),
                focus_score=compute_focus_score(pixels.astype(np.float64), config),
                objects=detections.get(idx, ()),
            )
        )
    return records
