"""Scene segmentation from per-frame object sets, plus evaluation scorers.

Boundaries are proposed where the object vocabulary changes sharply
between the frames before and after a gap, then snapped onto script
line edges so scenes align with phrases.  Captions for scene headings
come from a pluggable provider keyed by frame index.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

from .analysis import AnalysisConfig, FrameRecord, classify_frames, jaccard
from .transcript import ScriptLine, TranscriptDoc

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scene:
    start: float
    end: float
    caption: str = ""
    caption_frame_index: int = -1


@dataclass(frozen=True)
class LabeledSpan:
    kind: str
    start: float
    end: float


@dataclass(frozen=True)
class BoundaryMatchReport:
    jaccard_similarity: float
    matched: int
    total_a: int
    total_b: int


@dataclass(frozen=True)
class ErrorScoreReport:
    precision: float
    recall: float
    matched: int
    predicted: int
    ground_truth: int


@dataclass
class SegmentationConfig:
    window: int = 4
    similarity_threshold: float = 0.2

    def __post_init__(self):
        if self.window < 2 or self.window % 2:
            raise ValueError("window must be an even integer >= 2")
        if not 0 < self.similarity_threshold <= 1:
            raise ValueError("similarity_threshold must be in (0, 1]")

    def to_dict(self) -> dict:
        return {"window": self.window,
                "similarity_threshold": self.similarity_threshold}

    @classmethod
    def from_dict(cls, data: dict) -> "SegmentationConfig":
        return cls(**data)


def propose_boundaries(
    records: list[FrameRecord],
    window: int = 4,
    similarity_threshold: float = 0.2,
) -> list[float]:
    """Boundary times where the surrounding object sets diverge.

    For the gap between frames i and i+1, similarity is the Jaccard
    index of the label unions over frames i-1..i and i+1..i+2.  A
    boundary lands at frames[i+1].time when that similarity is below
    the threshold and is a strict local minimum among candidate gaps
    within window/2 positions.
    """
    n = len(records)
    if n < window:
        return []
    half = window // 2
    sims: dict[int, float] = {}
    for i in range(half - 1, n - half):
        before = set().union(*(records[j].labels() for j in range(i - half + 1, i + 1)))
        after = set().union(*(records[j].labels() for j in range(i + 1, i + half + 1)))
        sims[i] = jaccard(before, after)
    out = []
    for i, sim in sims.items():
        if sim >= similarity_threshold:
            continue
        neighbors = [sims[j] for j in range(i - half, i + half + 1)
                     if j != i and j in sims]
        if all(sim < other for other in neighbors):
            out.append(records[i + 1].time)
    return out


def snap_to_phrases(boundaries: list[float], transcript: TranscriptDoc) -> list[Scene]:
    """Snap boundaries to line edges and drop scenes without a whole line.

    A boundary strictly inside a script line moves to the nearer edge
    (ties go to the line start).  Scenes left without a fully contained
    line merge into their predecessor; the first scene merges forward.
    """
    duration = transcript.source_duration
    lines = transcript.lines

    def snap(b: float) -> float:
        for line in lines:
            if line.start < b < line.end:
                return line.start if b - line.start <= line.end - b else line.end
        return b

    snapped = sorted({snap(b) for b in boundaries})
    edges = [0.0] + [b for b in snapped if 0.0 < b < duration] + [duration]
    scenes = [Scene(a, b) for a, b in zip(edges, edges[1:])]

    def has_whole_line(scene: Scene) -> bool:
        return any(l.start >= scene.start and l.end <= scene.end for l in lines)

    changed = True
    while changed and len(scenes) > 1:
        changed = False
        for i, scene in enumerate(scenes):
            if has_whole_line(scene):
                continue
            if i == 0:
                merged = Scene(scene.start, scenes[1].end)
                scenes = [merged] + scenes[2:]
            else:
                merged = Scene(scenes[i - 1].start, scene.end)
                scenes = scenes[: i - 1] + [merged] + scenes[i + 1 :]
            changed = True
            break
    return scenes


def attach_captions(
    scenes: list[Scene],
    records: list[FrameRecord],
    caption_provider,
    config: AnalysisConfig | None = None,
) -> list[Scene]:
    """Caption each scene from its first non-blurry frame.

    Falls back to the scene's first frame when every frame is blurry,
    and to the nearest sampled frame when the scene holds none.  A
    provider failure leaves the caption empty and logs a diagnostic.
    """
    config = config or AnalysisConfig()
    flags = classify_frames(records, config)
    out = []
    for scene in scenes:
        inside = [f for f in flags if scene.start <= f.time < scene.end]
        if inside:
            sharp = [f for f in inside if not f.is_blurry]
            pick = (sharp or inside)[0].index
        elif flags:
            pick = min(flags, key=lambda f: (abs(f.time - scene.start), f.time)).index
        else:
            out.append(replace(scene, caption="", caption_frame_index=-1))
            continue
        try:
            caption = str(caption_provider(pick))
        except Exception as exc:
            log.warning("caption provider failed for frame %d: %s", pick, exc)
            caption = ""
        out.append(replace(scene, caption=caption, caption_frame_index=pick))
    return out


def score_boundaries(
    a: list[float], b: list[float], tolerance: float = 3.0
) -> BoundaryMatchReport:
    """Greedy one-to-one boundary agreement; |dt| < tolerance matches."""
    i = j = matched = 0
    while i < len(a) and j < len(b):
        if abs(a[i] - b[j]) < tolerance:
            matched += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    denom = len(a) + len(b) - matched
    sim = matched / denom if denom else 1.0
    return BoundaryMatchReport(sim, matched, len(a), len(b))


def score_errors(
    predicted, ground_truth, tolerance: float = 3.0
) -> ErrorScoreReport:
    """Precision/recall of predicted error spans against labeled spans.

    A prediction matches an unmatched ground-truth span when the spans
    overlap or their nearest endpoints are under the tolerance apart.
    """
    taken = [False] * len(ground_truth)
    matched = 0
    for p in predicted:
        for k, g in enumerate(ground_truth):
            if taken[k]:
                continue
            if max(g.start - p.end, p.start - g.end) < tolerance:
                taken[k] = True
                matched += 1
                break
    precision = matched / len(predicted) if predicted else 1.0
    recall = matched / len(ground_truth) if ground_truth else 1.0
    return ErrorScoreReport(precision, recall, matched, len(predicted),
                            len(ground_truth))
