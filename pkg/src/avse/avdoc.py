"""Audio-visual script document: assembly, outline, inspect, navigation.

The script document interleaves scene headings, narration lines, and
pause lines in source-time order, with visual-error annotations pinned
to the blocks they overlap.  Blocks carry stable ids so cursors and
edit targets survive revisions; the document itself is an immutable
value and every mutation elsewhere produces a new revision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .analysis import ErrorKind, ErrorSegment, FrameRecord
from .errors import InconsistentInput, InvalidCursor, OutOfRange
from .scenes import Scene
from .transcript import LineKind, ScriptLine, TranscriptDoc, WordToken

ERROR_DISPLAY_LABELS = {
    ErrorKind.DARK: "Bad lighting",
    ErrorKind.BLUR: "Camera blur",
    ErrorKind.CAMERA_MOVING: "Camera moving",
}


class BlockKind(str, enum.Enum):
    SCENE_HEADING = "SceneHeading"
    NARRATION = "Narration"
    PAUSE = "Pause"


class OutlineKind(str, enum.Enum):
    SCENE = "Scene"
    ERROR = "Error"
    PAUSE = "Pause"


class Move(str, enum.Enum):
    NEXT_LINE = "NextLine"
    PREV_LINE = "PrevLine"
    NEXT_WORD = "NextWord"
    PREV_WORD = "PrevWord"
    NEXT_HEADING = "NextHeading"
    PREV_HEADING = "PrevHeading"


@dataclass(frozen=True)
class ErrorAnnotation:
    kind: ErrorKind
    start: float
    end: float


@dataclass(frozen=True)
class Block:
    id: str
    kind: BlockKind
    start: float
    end: float
    text: str
    errors: tuple[ErrorAnnotation, ...] = ()
    words: tuple[WordToken, ...] = ()


@dataclass(frozen=True)
class AVScriptDoc:
    blocks: tuple[Block, ...]
    source_duration: float
    revision: int = 0
    error_segments: tuple[ErrorSegment, ...] = ()

    def block_by_id(self, block_id: str) -> Block | None:
        for b in self.blocks:
            if b.id == block_id:
                return b
        return None


@dataclass(frozen=True)
class OutlineItem:
    kind: OutlineKind
    time: float
    label: str
    target_block_id: str


@dataclass(frozen=True)
class Cursor:
    block_id: str
    word_index: int = 0


def format_timestamp(t: float) -> str:
    secs = int(t)
    return f"{secs // 60}:{secs % 60:02d}"


def assemble(
    transcript: TranscriptDoc,
    scenes: list[Scene],
    error_segments: list[ErrorSegment],
) -> AVScriptDoc:
    """Build the script document from segmented inputs.

    Each scene opens with a heading block carrying its caption, followed
    by the lines it fully contains.  Error segments annotate every line
    block they overlap, clipped to the block span; a segment overlapping
    a scene but none of its lines lands on the scene's heading instead.
    """
    lines = list(transcript.lines)
    for scene in scenes:
        for line in lines:
            if line.start < scene.start < line.end:
                raise InconsistentInput(
                    f"scene boundary {scene.start} falls inside a line"
                )

    placed = set()
    layout: list[tuple[BlockKind, Scene | ScriptLine]] = []
    for scene in scenes:
        layout.append((BlockKind.SCENE_HEADING, scene))
        for i, line in enumerate(lines):
            if i in placed:
                continue
            if line.start >= scene.start and line.end <= scene.end:
                layout.append(
                    (BlockKind.NARRATION if line.kind is LineKind.NARRATION
                     else BlockKind.PAUSE, line)
                )
                placed.add(i)
    if len(placed) != len(lines):
        raise InconsistentInput("some lines fall outside every scene")

    blocks = []
    for n, (kind, item) in enumerate(layout):
        if kind is BlockKind.SCENE_HEADING:
            blocks.append(Block(f"b{n:03d}", kind, item.start, item.end, item.caption))
        else:
            blocks.append(Block(
                f"b{n:03d}", kind, item.start, item.end, item.text,
                words=item.words if item.kind is LineKind.NARRATION else (),
            ))

    segments = sorted(error_segments, key=lambda s: (s.start, s.kind.value))
    annotated = {b.id: [] for b in blocks}
    for seg in segments:
        for scene, heading in zip(scenes, (b for b in blocks
                                           if b.kind is BlockKind.SCENE_HEADING)):
            if seg.end <= scene.start or seg.start >= scene.end:
                continue
            carriers = [
                b for b in blocks
                if b.kind is not BlockKind.SCENE_HEADING
                and b.start >= scene.start and b.end <= scene.end
                and seg.start < b.end and seg.end > b.start
            ]
            for b in carriers or [heading]:
                annotated[b.id].append(ErrorAnnotation(
                    seg.kind, max(seg.start, b.start), min(seg.end, b.end)))

    blocks = [replace(b, errors=tuple(annotated[b.id])) for b in blocks]
    return AVScriptDoc(
        blocks=tuple(blocks),
        source_duration=transcript.source_duration,
        revision=0,
        error_segments=tuple(segments),
    )


def outline(doc: AVScriptDoc) -> list[OutlineItem]:
    """Navigable summary: scene headings, distinct errors, pauses, by time."""
    items = []
    for b in doc.blocks:
        if b.kind is BlockKind.SCENE_HEADING:
            items.append(OutlineItem(OutlineKind.SCENE, b.start, b.text, b.id))
        elif b.kind is BlockKind.PAUSE:
            items.append(OutlineItem(OutlineKind.PAUSE, b.start, b.text, b.id))

    for seg in doc.error_segments:
        carrier = None
        for b in doc.blocks:
            if any(a.kind is seg.kind
                   and a.start >= seg.start and a.end <= seg.end
                   for a in b.errors):
                carrier = b
                break
        if carrier is None:
            continue
        label = f"{ERROR_DISPLAY_LABELS[seg.kind]} in {format_timestamp(seg.start)}"
        items.append(OutlineItem(OutlineKind.ERROR, seg.start, label, carrier.id))

    items.sort(key=lambda it: (it.time, it.kind.value, it.label))
    return items


def inspect_frame(
    records: list[FrameRecord], t: float, source_duration: float
) -> list[str]:
    """Object labels at the sampled frame nearest t, largest box first."""
    if not 0 <= t < source_duration:
        raise OutOfRange(f"time {t} outside [0, {source_duration})")
    if not records:
        return []
    nearest = min(records, key=lambda r: (abs(r.time - t), r.time))
    best: dict[str, float] = {}
    for det in nearest.objects:
        if det.label not in best or det.area > best[det.label]:
            best[det.label] = det.area
    return [label for label, _ in
            sorted(best.items(), key=lambda kv: (-kv[1], kv[0]))]


def _validate_cursor(doc: AVScriptDoc, cursor: Cursor) -> tuple[int, Block]:
    for i, b in enumerate(doc.blocks):
        if b.id == cursor.block_id:
            limit = max(len(b.words), 1)
            if not 0 <= cursor.word_index < limit:
                raise InvalidCursor(
                    f"word index {cursor.word_index} out of range for {b.id}")
            return i, b
    raise InvalidCursor(f"no block {cursor.block_id!r}")


def _seek_time(doc: AVScriptDoc, cursor: Cursor) -> float:
    _, block = _validate_cursor(doc, cursor)
    if block.words:
        return block.words[cursor.word_index].start
    return block.start


def navigate(doc: AVScriptDoc, cursor: Cursor, move: Move) -> tuple[Cursor, float]:
    """Move the cursor one unit; returns the new cursor and its seek time.

    Moves saturate at document edges: an impossible move returns the
    cursor unchanged, with the seek time of the current position.
    """
    idx, block = _validate_cursor(doc, cursor)

    if move in (Move.NEXT_LINE, Move.PREV_LINE):
        step = 1 if move is Move.NEXT_LINE else -1
        j = idx + step
        if 0 <= j < len(doc.blocks):
            cursor = Cursor(doc.blocks[j].id, 0)
        return cursor, _seek_time(doc, cursor)

    if move in (Move.NEXT_HEADING, Move.PREV_HEADING):
        indices = (range(idx + 1, len(doc.blocks)) if move is Move.NEXT_HEADING
                   else range(idx - 1, -1, -1))
        for j in indices:
            if doc.blocks[j].kind is BlockKind.SCENE_HEADING:
                cursor = Cursor(doc.blocks[j].id, 0)
                break
        return cursor, _seek_time(doc, cursor)

    if move is Move.NEXT_WORD:
        if block.words and cursor.word_index + 1 < len(block.words):
            cursor = Cursor(block.id, cursor.word_index + 1)
        else:
            for j in range(idx + 1, len(doc.blocks)):
                if doc.blocks[j].words:
                    cursor = Cursor(doc.blocks[j].id, 0)
                    break
        return cursor, _seek_time(doc, cursor)

    if move is Move.PREV_WORD:
        if block.words and cursor.word_index > 0:
            cursor = Cursor(block.id, cursor.word_index - 1)
        else:
            for j in range(idx - 1, -1, -1):
                if doc.blocks[j].words:
                    cursor = Cursor(doc.blocks[j].id,
                                    len(doc.blocks[j].words) - 1)
                    break
        return cursor, _seek_time(doc, cursor)

    raise ValueError(f"unknown move {move!r}")


def doc_to_dict(doc: AVScriptDoc) -> dict:
    """Serialize to the script.json schema."""
    return {
        "source_duration": doc.source_duration,
        "revision": doc.revision,
        "errors": [
            {"kind": s.kind.value, "start": s.start, "end": s.end}
            for s in doc.error_segments
        ],
        "blocks": [
            {
                "id": b.id,
                "kind": b.kind.value,
                "start": b.start,
                "end": b.end,
                "text": b.text,
                "errors": [
                    {"kind": a.kind.value, "start": a.start, "end": a.end}
                    for a in b.errors
                ],
                "words": [
                    {"text": w.text, "start": w.start, "end": w.end}
                    for w in b.words
                ],
            }
            for b in doc.blocks
        ],
    }


def doc_from_dict(data: dict) -> AVScriptDoc:
    return AVScriptDoc(
        blocks=tuple(
            Block(
                id=b["id"],
                kind=BlockKind(b["kind"]),
                start=b["start"],
                end=b["end"],
                text=b["text"],
                errors=tuple(
                    ErrorAnnotation(ErrorKind(a["kind"]), a["start"], a["end"])
                    for a in b["errors"]
                ),
                words=tuple(
                    WordToken(w["text"], w["start"], w["end"]) for w in b["words"]
                ),
            )
            for b in data["blocks"]
        ),
        source_duration=data["source_duration"],
        revision=data["revision"],
        error_segments=tuple(
            ErrorSegment(ErrorKind(e["kind"]), e["start"], e["end"])
            for e in data["errors"]
        ),
    )
