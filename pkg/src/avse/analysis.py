"""Per-frame quality metrics and visual-error segment detection.

Frames are sampled from footage at a fixed rate (default 1 fps).  Each
sampled frame gets a mean luminance (normalized [0,1] scale), a focus
score (variance of the 4-neighbor Laplacian on the [0,255] scale), and
the object detections retained for it.  Threshold classification plus
run aggregation turns the per-frame flags into time-ranged segments of
kind Dark, Blur, or CameraMoving.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidFrame

LAPLACIAN_KERNEL = np.array([[0, 1, 0], [1, -4, 1], [0, 1, 0]], dtype=np.float64)


class ErrorKind(str, enum.Enum):
    DARK = "Dark"
    BLUR = "Blur"
    CAMERA_MOVING = "CameraMoving"


@dataclass(frozen=True)
class ObjectDetection:
    label: str
    confidence: float
    bbox: tuple[float, float, float, float]  # x, y, width, height in source pixels

    @property
    def area(self) -> float:
        return self.bbox[2] * self.bbox[3]


@dataclass(frozen=True)
class FrameRecord:
    index: int
    time: float
    mean_luminance: float
    focus_score: float
    objects: tuple[ObjectDetection, ...] = ()

    def labels(self) -> set[str]:
        return {o.label for o in self.objects}


@dataclass(frozen=True)
class ErrorSegment:
    kind: ErrorKind
    start: float
    end: float


@dataclass(frozen=True)
class FrameFlags:
    index: int
    time: float
    is_dark: bool
    is_blurry: bool
    is_moving: bool = False


@dataclass
class AnalysisConfig:
    sample_rate: float = 1.0
    dark_threshold: float = 0.25
    blur_threshold: float = 5.0
    min_error_frames: int = 4
    motion_window: int = 4
    motion_similarity_threshold: float = 0.5
    downsample_size: tuple[int, int] = (100, 100)

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be > 0")
        if self.dark_threshold <= 0 or self.blur_threshold <= 0:
            raise ValueError("thresholds must be > 0")
        if self.min_error_frames < 1:
            raise ValueError("min_error_frames must be >= 1")
        if self.motion_window < 2 or self.motion_window % 2:
            raise ValueError("motion_window must be an even integer >= 2")
        if self.motion_similarity_threshold <= 0:
            raise ValueError("motion_similarity_threshold must be > 0")
        h, w = self.downsample_size
        if h < 1 or w < 1:
            raise ValueError("downsample_size must be positive")

    def to_dict(self) -> dict:
        return {
            "sample_rate": self.sample_rate,
            "dark_threshold": self.dark_threshold,
            "blur_threshold": self.blur_threshold,
            "min_error_frames": self.min_error_frames,
            "motion_window": self.motion_window,
            "motion_similarity_threshold": self.motion_similarity_threshold,
            "downsample_size": list(self.downsample_size),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisConfig":
        kwargs = dict(data)
        if "downsample_size" in kwargs:
            kwargs["downsample_size"] = tuple(kwargs["downsample_size"])
        return cls(**kwargs)


def jaccard(a: set, b: set) -> float:
    """Jaccard index |A∩B| / |A∪B|; two empty sets count as identical (1.0)."""
    union = a | b
    if not union:
        return 1.0
    return len(a & b) / len(union)


def _area_average_weights(n_in: int, n_out: int) -> np.ndarray:
    """Row-stochastic matrix mapping n_in samples onto n_out equal-width bins.

    Each output bin covers n_in/n_out input pixels; fractional overlaps are
    weighted by covered length, so binning preserves the overall mean exactly.
    """
    weights = np.zeros((n_out, n_in), dtype=np.float64)
    scale = n_in / n_out
    for o in range(n_out):
        lo = o * scale
        hi = (o + 1) * scale
        first = int(np.floor(lo))
        last = min(int(np.ceil(hi)), n_in)
        for i in range(first, last):
            overlap = min(hi, i + 1) - max(lo, i)
            if overlap > 0:
                weights[o, i] = overlap / scale
    return weights


def downsample_area(frame: np.ndarray, size: tuple[int, int]) -> np.ndarray:
    """Area-average a 2-D pixel grid to the given (height, width)."""
    frame = np.asarray(frame, dtype=np.float64)
    if frame.ndim != 2 or frame.size == 0:
        raise InvalidFrame("expected a non-empty 2-D pixel grid")
    rows = _area_average_weights(frame.shape[0], size[0])
    cols = _area_average_weights(frame.shape[1], size[1])
    return rows @ frame @ cols.T


def compute_luminance(frame: np.ndarray, config: AnalysisConfig | None = None) -> float:
    """Mean luminance of a [0,1]-normalized grayscale frame.

    The frame is first area-averaged down to ``config.downsample_size``
    (the reduced grid is what gets averaged, matching how the metric is
    computed in production where full-resolution frames are too costly).
    """
    config = config or AnalysisConfig()
    small = downsample_area(frame, config.downsample_size)
    return float(small.mean())


def compute_focus_score(frame: np.ndarray, config: AnalysisConfig | None = None) -> float:
    """Variance of the 4-neighbor Laplacian over interior pixels.

    Expects pixel values on the [0,255] scale; low scores indicate blur.
    """
    frame = np.asarray(frame, dtype=np.float64)
    if frame.ndim != 2 or frame.shape[0] < 3 or frame.shape[1] < 3:
        raise InvalidFrame("focus score needs a grid of at least 3x3 pixels")
    lap = (
        frame[:-2, 1:-1]
        + frame[2:, 1:-1]
        + frame[1:-1, :-2]
        + frame[1:-1, 2:]
        - 4.0 * frame[1:-1, 1:-1]
    )
    return float(lap.var())


def classify_frames(
    records: list[FrameRecord], config: AnalysisConfig | None = None
) -> list[FrameFlags]:
    """Threshold each record into is_dark / is_blurry flags.

    Classification is strict: a value exactly at the threshold is clean.
    """
    config = config or AnalysisConfig()
    return [
        FrameFlags(
            index=r.index,
            time=r.time,
            is_dark=r.mean_luminance < config.dark_threshold,
            is_blurry=r.focus_score < config.blur_threshold,
        )
        for r in records
    ]


def detect_motion(
    records: list[FrameRecord], config: AnalysisConfig | None = None
) -> list[bool]:
    """Flag frames whose surrounding object sets churn rapidly.

    Frame i is moving when the mean Jaccard similarity of the
    ``motion_window`` consecutive frame pairs centered on it falls below
    ``motion_similarity_threshold``.  Frames too close to either end of
    the footage for a full window are never flagged.
    """
    config = config or AnalysisConfig()
    n = len(records)
    half = config.motion_window // 2
    pair_sims = [
        jaccard(records[j].labels(), records[j + 1].labels()) for j in range(n - 1)
    ]
    flags = []
    for i in range(n):
        first_pair = i - half
        last_pair = i + half - 1
        if first_pair < 0 or last_pair > n - 2:
            flags.append(False)
            continue
        window = pair_sims[first_pair : last_pair + 1]
        flags.append(sum(window) / len(window) < config.motion_similarity_threshold)
    return flags


def merge_motion(flags: list[FrameFlags], moving: list[bool]) -> list[FrameFlags]:
    return [
        FrameFlags(f.index, f.time, f.is_dark, f.is_blurry, m)
        for f, m in zip(flags, moving, strict=True)
    ]


def _flag_runs(values: list[bool], min_len: int) -> list[tuple[int, int]]:
    """Maximal runs of True of length >= min_len, as (first, last) index pairs."""
    runs = []
    start = None
    for i, v in enumerate(values):
        if v and start is None:
            start = i
        elif not v and start is not None:
            if i - start >= min_len:
                runs.append((start, i - 1))
            start = None
    if start is not None and len(values) - start >= min_len:
        runs.append((start, len(values) - 1))
    return runs


def build_error_segments(
    flags: list[FrameFlags], config: AnalysisConfig | None = None
) -> list[ErrorSegment]:
    """Aggregate per-frame flags into time-ranged error segments.

    A maximal run of at least ``min_error_frames`` flagged frames becomes
    one segment spanning [first.time, last.time + 1/sample_rate).  Blurry
    frames that fall inside an emitted CameraMoving segment are relabeled
    as motion rather than blur; dark frames are independent and may
    overlap camera motion.
    """
    config = config or AnalysisConfig()
    step = 1.0 / config.sample_rate

    def to_segment(kind: ErrorKind, first: int, last: int) -> ErrorSegment:
        return ErrorSegment(kind, flags[first].time, flags[last].time + step)

    segments = []
    for first, last in _flag_runs([f.is_dark for f in flags], config.min_error_frames):
        segments.append(to_segment(ErrorKind.DARK, first, last))

    moving_runs = _flag_runs([f.is_moving for f in flags], config.min_error_frames)
    in_moving = [False] * len(flags)
    for first, last in moving_runs:
        segments.append(to_segment(ErrorKind.CAMERA_MOVING, first, last))
        for i in range(first, last + 1):
            in_moving[i] = True

    blur_mask = [f.is_blurry and not m for f, m in zip(flags, in_moving)]
    for first, last in _flag_runs(blur_mask, config.min_error_frames):
        segments.append(to_segment(ErrorKind.BLUR, first, last))

    segments.sort(key=lambda s: (s.start, s.kind.value))
    return segments


def analyze_records(
    records: list[FrameRecord], config: AnalysisConfig | None = None
) -> tuple[list[FrameFlags], list[ErrorSegment]]:
    """Run the full flag + segment pipeline over sampled frame records."""
    config = config or AnalysisConfig()
    flags = merge_motion(classify_frames(records, config), detect_motion(records, config))
    return flags, build_error_segments(flags, config)


def records_to_dict(records: list[FrameRecord], config: AnalysisConfig) -> dict:
    """Serialize to the analysis.json schema (fixed field names)."""
    return {
        "config": config.to_dict(),
        "records": [
            {
                "index": r.index,
                "time": r.time,
                "mean_luminance": r.mean_luminance,
                "focus_score": r.focus_score,
                "objects": [
                    {"label": o.label, "confidence": o.confidence, "bbox": list(o.bbox)}
                    for o in r.objects
                ],
            }
            for r in records
        ],
    }


def records_from_dict(data: dict) -> tuple[list[FrameRecord], AnalysisConfig]:
    config = AnalysisConfig.from_dict(data["config"])
    records = [
        FrameRecord(
            index=r["index"],
            time=r["time"],
            mean_luminance=r["mean_luminance"],
            focus_score=r["focus_score"],
            objects=tuple(
                ObjectDetection(o["label"], o["confidence"], tuple(o["bbox"]))
                for o in r["objects"]
            ),
        )
        for r in data["records"]
    ]
    records.sort(key=lambda r: r.index)
    return records, config
