"""Synthetic cooking-video project generator.

Builds a complete 11-minute project directory (sampled frames, object
detections, aligned transcript, captions) with known structure: eight
scenes with disjoint object vocabularies, six appearances of a
microwave plus one spoken mention, planted dark / blurry / shaky
stretches, and four long pauses.  Used by the demo scripts and the
end-to-end tests; real projects have the same layout.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .frames import write_pgm

DURATION = 660.0
N_FRAMES = 660
FRAME_SIZE = (100, 100)

WORD_SPACING = 0.55
WORD_LENGTH = 0.35

# object vocabulary epochs: (first frame, labels)
EPOCHS = [
    (0, ("person", "kitchen", "counter", "sink")),
    (80, ("cereal box", "snacks", "shelf")),
    (160, ("counter", "bowl", "spoon", "plate")),
    (240, ("garden", "plant", "pot", "soil")),
    (330, ("door", "hand", "hallway", "wall")),
    (420, ("table", "plate", "fork", "glass")),
    (500, ("stove", "pan", "knife", "cutting board")),
    (580, ("dinner", "dish", "napkin", "candle")),
]

# frame ranges [start, stop) where a microwave is visible
MICROWAVE_RUNS = [(165, 180), (190, 205), (215, 230),
                  (430, 445), (455, 470), (480, 495)]

DARK_FRAMES = (200, 208)        # underexposed but in focus
BLUR_FRAMES = [(300, 306), (420, 428)]
CHURN_FRAMES = (360, 372)       # detection churn + defocus: camera motion

# bbox areas for the pantry shot, largest first
PANTRY_BOXES = {"cereal box": (0.0, 0.0, 90.0, 100.0),
                "snacks": (0.0, 0.0, 40.0, 100.0),
                "shelf": (0.0, 0.0, 25.0, 100.0)}

CAPTIONS = {
    0: "A person standing in a kitchen",
    79: "A pantry full of food",
    160: "A bowl of soup on a counter",
    240: "A plant in a clay pot",
    329: "A hand opening a wooden door",
    428: "A table set with plates",
    497: "A person chopping vegetables",
    580: "A finished meal on a table",
}

_FILLERS = [
    "We keep the process very simple.",
    "Fresh smells fill the whole room.",
    "Everything gets washed before we begin.",
    "Slow steady steps give good results.",
    "The recipe comes from my grandmother.",
    "Small details make a big difference.",
    "Patience is the secret ingredient here.",
    "Clean hands make the work safer.",
]


def _f(k: int) -> str:
    return _FILLERS[k % len(_FILLERS)]


def _sentence_schedule() -> list[tuple[float, str]]:
    """(start time, sentence) pairs; gaps over 3s are deliberate pauses."""
    rows: list[tuple[float, str]] = []

    def fillers(start, count, first=0, spacing=5.0):
        for k in range(count):
            rows.append((start + k * spacing, _f(first + k)))

    fillers(2.0, 3)
    rows.append((16.0, "First of all, we need flour."))
    fillers(21.0, 11, first=3)
    rows.append((75.5, "Almost ready now."))
    rows.append((79.0, "And here we see the pantry."))

    fillers(84.5, 15, first=6)
    rows[-1] = (155.0, rows[-1][1])

    fillers(160.5, 3, first=5)
    rows.append((175.6, "Put the soup bowl into the microwave and wait for it now."))
    # 25.5 second silence
    rows.append((207.5, "That was a long wait indeed."))
    fillers(212.5, 5, first=0)
    rows.append((236.5, "Soup is done."))

    fillers(240.6, 17, first=5)
    rows.append((325.6, "Time to garden."))
    rows.append((329.0, "Look at this garden plant."))

    fillers(333.5, 3, first=6)
    rows.append((348.0, "Stir it gently now."))
    rows.append((351.0, "Watch the heat closely."))
    rows.append((355.45, "We will let this rest."))
    # 15 second silence
    rows.append((373.0, "Back to the kitchen work."))
    fillers(377.5, 9, first=1)
    rows[-1] = (416.5, "Almost there I think.")

    fillers(420.6, 15, first=1)
    rows.append((494.45, "We sit down to eat."))
    # 7.5 second silence
    fillers(504.5, 14, first=0)
    rows.append((575.4, "It is nearly time to serve."))

    fillers(580.6, 14, first=6)
    rows.append((650.6, "Watch the heat closely."))
    rows.append((653.0, "Thanks for watching today."))
    # trailing 5 second silence
    return rows


def build_transcript() -> dict:
    words = []
    for t0, text in _sentence_schedule():
        for i, token in enumerate(text.split()):
            start = round(t0 + i * WORD_SPACING, 3)
            end = round(t0 + i * WORD_SPACING + WORD_LENGTH, 3)
            words.append({"text": token, "start": start, "end": end})
    words.sort(key=lambda w: w["start"])
    for a, b in zip(words, words[1:]):
        if b["start"] < a["end"]:
            raise AssertionError(
                f"schedule bug: {a['text']!r} overlaps {b['text']!r} at {a['end']}")
    return {"source_duration": DURATION, "words": words}


def _epoch_labels(index: int) -> tuple[str, ...]:
    labels: tuple[str, ...] = ()
    for start, names in EPOCHS:
        if index >= start:
            labels = names
    return labels


def build_detections() -> dict:
    out = {}
    for i in range(N_FRAMES):
        dets = []
        if CHURN_FRAMES[0] <= i < CHURN_FRAMES[1]:
            dets.append({"label": f"motion{i - CHURN_FRAMES[0]}",
                         "confidence": 0.9,
                         "bbox": [0.0, 0.0, 20.0, 20.0]})
        else:
            for k, label in enumerate(_epoch_labels(i)):
                bbox = PANTRY_BOXES.get(label, (0.0, 0.0, 10.0 * (k + 1), 50.0))
                dets.append({"label": label, "confidence": 0.9,
                             "bbox": list(bbox)})
            if any(a <= i < b for a, b in MICROWAVE_RUNS):
                dets.append({"label": "microwave", "confidence": 0.9,
                             "bbox": [0.0, 0.0, 30.0, 60.0]})
        if i < 10:
            # below the confidence floor; must be ignored downstream
            dets.append({"label": "ghost", "confidence": 0.2,
                         "bbox": [0.0, 0.0, 5.0, 5.0]})
        out[str(i)] = dets
    return out


def _checker(mean: int, amp: int) -> np.ndarray:
    y, x = np.mgrid[0:FRAME_SIZE[0], 0:FRAME_SIZE[1]]
    sign = 1 - 2 * ((x + y) % 2)
    return (mean + amp * sign).astype(np.uint8)


def frame_pixels(index: int) -> np.ndarray:
    if DARK_FRAMES[0] <= index < DARK_FRAMES[1]:
        return _checker(25, 20)
    for a, b in BLUR_FRAMES:
        if a <= index < b:
            return np.full(FRAME_SIZE, 128, dtype=np.uint8)
    if CHURN_FRAMES[0] <= index < CHURN_FRAMES[1]:
        return np.full(FRAME_SIZE, 100, dtype=np.uint8)
    return _checker(128, 60)


def build_project(root: Path | str) -> Path:
    """Write a complete synthetic project under root; returns root."""
    root = Path(root)
    frames_dir = root / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)
    for i in range(N_FRAMES):
        write_pgm(frames_dir / f"{i:06d}.pgm", frame_pixels(i))
    (root / "transcript.json").write_text(
        json.dumps(build_transcript(), indent=2) + "\n")
    (root / "detections.json").write_text(
        json.dumps(build_detections(), indent=2) + "\n")
    (root / "captions.json").write_text(
        json.dumps({str(k): v for k, v in CAPTIONS.items()},
                   indent=2, sort_keys=True) + "\n")
    return root
