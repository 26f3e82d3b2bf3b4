"""Shared fixtures: a tiny two-scene project for service-level tests."""

import json
from pathlib import Path

import numpy as np
import pytest

from avse.frames import write_pgm

MINI_DURATION = 40.0
MINI_FRAMES = 40

# 5-word sentences, 0.55s word spacing, 0.35s word length
MINI_SENTENCES = [
    (1.0, "Hello and welcome back friends."),
    (5.5, "Today we tidy the room."),
    (14.0, "This side needs more work."),
    (19.0, "Now the second half starts."),
    (24.0, "We are almost done now."),
]

MINI_DETECTIONS = {
    "first": {"cup": (0.0, 0.0, 30.0, 40.0), "table": (0.0, 0.0, 20.0, 30.0)},
    "second": {"lamp": (0.0, 0.0, 40.0, 40.0), "sofa": (0.0, 0.0, 10.0, 10.0)},
}


def words_from_schedule(schedule):
    words = []
    for t0, text in schedule:
        for i, token in enumerate(text.split()):
            start = round(t0 + i * 0.55, 3)
            words.append({"text": token, "start": start,
                          "end": round(t0 + i * 0.55 + 0.35, 3)})
    return words


def mini_frame(index: int) -> np.ndarray:
    if 30 <= index < 35:
        return np.full((60, 60), 128, dtype=np.uint8)
    y, x = np.mgrid[0:60, 0:60]
    return (128 + 60 * (1 - 2 * ((x + y) % 2))).astype(np.uint8)


def build_mini_project(root: Path) -> Path:
    frames_dir = root / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)
    for i in range(MINI_FRAMES):
        write_pgm(frames_dir / f"{i:06d}.pgm", mini_frame(i))

    detections = {}
    for i in range(MINI_FRAMES):
        table = MINI_DETECTIONS["first" if i < 20 else "second"]
        detections[str(i)] = [
            {"label": label, "confidence": 0.9, "bbox": list(bbox)}
            for label, bbox in table.items()
        ]
    (root / "detections.json").write_text(json.dumps(detections))

    (root / "transcript.json").write_text(json.dumps({
        "source_duration": MINI_DURATION,
        "words": words_from_schedule(MINI_SENTENCES),
    }))

    (root / "captions.json").write_text(json.dumps({
        "0": "A tidy room", "19": "A second room",
    }))
    return root


@pytest.fixture
def mini_project(tmp_path):
    return build_mini_project(tmp_path / "proj")


def find_block(doc_dict: dict, kind: str, start: float) -> dict:
    for block in doc_dict["blocks"]:
        if block["kind"] == kind and abs(block["start"] - start) < 1e-6:
            return block
    raise AssertionError(f"no {kind} block at {start}")
