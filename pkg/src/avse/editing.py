"""Edit operations over the script document and their EDL compilation.

Edits never touch the source media: each operation rewrites the set of
kept source intervals (the edit decision list) and returns a new
document revision.  Ops carry the revision they were computed against
and are rejected on mismatch, giving a single-writer optimistic
concurrency scheme.  Undo is linear and snapshot-based.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field, replace

from .avdoc import AVScriptDoc, Block, BlockKind
from .errors import (
    ConflictError,
    InvalidOp,
    InvalidSpeed,
    InvalidTarget,
    InvalidTrim,
    NothingToUndo,
)
from .transcript import pause_text

SPEED_MIN = 0.25
SPEED_MAX = 4.0


class EmptyOutput(UserWarning):
    """Render plan compiled with zero kept segments."""


class EditKind(str, enum.Enum):
    DELETE_BLOCKS = "DeleteBlocks"
    DELETE_WORDS = "DeleteWords"
    TRIM = "Trim"
    SPEED = "Speed"
    UNDO = "Undo"


@dataclass(frozen=True)
class EditOp:
    kind: EditKind
    revision: int
    targets: tuple[str, ...] = ()
    block_id: str = ""
    first_word: int = 0
    last_word: int = 0
    start: float = 0.0
    end: float = 0.0
    factor: float = 1.0


@dataclass(frozen=True)
class EdlSegment:
    src_start: float
    src_end: float
    speed: float


@dataclass(frozen=True)
class EditDecisionList:
    segments: tuple[EdlSegment, ...]
    source_duration: float

    @property
    def output_duration(self) -> float:
        return sum((s.src_end - s.src_start) / s.speed for s in self.segments)

    @classmethod
    def full(cls, source_duration: float) -> "EditDecisionList":
        return cls((EdlSegment(0.0, source_duration, 1.0),), source_duration)


def _canonical(segments: list[EdlSegment]) -> tuple[EdlSegment, ...]:
    """Sort and merge contiguous equal-speed segments; drop empties."""
    segs = sorted((s for s in segments if s.src_start < s.src_end),
                  key=lambda s: s.src_start)
    out: list[EdlSegment] = []
    for s in segs:
        if out and out[-1].src_end == s.src_start and out[-1].speed == s.speed:
            out[-1] = EdlSegment(out[-1].src_start, s.src_end, s.speed)
        else:
            out.append(s)
    return tuple(out)


def _subtract(segments, lo: float, hi: float) -> list[EdlSegment]:
    out = []
    for s in segments:
        if s.src_end <= lo or s.src_start >= hi:
            out.append(s)
            continue
        if s.src_start < lo:
            out.append(EdlSegment(s.src_start, lo, s.speed))
        if s.src_end > hi:
            out.append(EdlSegment(hi, s.src_end, s.speed))
    return out


def _set_speed(segments, lo: float, hi: float, factor: float) -> list[EdlSegment]:
    out = []
    for s in segments:
        if s.src_end <= lo or s.src_start >= hi:
            out.append(s)
            continue
        if s.src_start < lo:
            out.append(EdlSegment(s.src_start, lo, s.speed))
        out.append(EdlSegment(max(s.src_start, lo), min(s.src_end, hi), factor))
        if s.src_end > hi:
            out.append(EdlSegment(hi, s.src_end, s.speed))
    return out


def _find_block(doc: AVScriptDoc, block_id: str) -> Block:
    block = doc.block_by_id(block_id)
    if block is None:
        raise InvalidTarget(f"no block {block_id!r}")
    return block


def _delete_blocks(doc, edl, op):
    if not op.targets:
        raise InvalidTarget("DeleteBlocks requires at least one target")
    removed_ids = set()
    spans = []
    for bid in op.targets:
        block = _find_block(doc, bid)
        removed_ids.add(bid)
        spans.append((block.start, block.end))
        if block.kind is BlockKind.SCENE_HEADING:
            # deleting a scene heading deletes the whole scene
            for other in doc.blocks:
                if (other.kind is not BlockKind.SCENE_HEADING
                        and other.start >= block.start and other.end <= block.end):
                    removed_ids.add(other.id)
    segments = list(edl.segments)
    for lo, hi in spans:
        segments = _subtract(segments, lo, hi)
    blocks = tuple(b for b in doc.blocks if b.id not in removed_ids)
    return (replace(doc, blocks=blocks),
            replace(edl, segments=_canonical(segments)))


def _delete_words(doc, edl, op):
    block = _find_block(doc, op.block_id)
    if not block.words:
        raise InvalidTarget(f"block {block.id} has no words")
    n = len(block.words)
    if not (0 <= op.first_word <= op.last_word < n):
        raise InvalidTarget(
            f"word range [{op.first_word}, {op.last_word}] out of bounds for {block.id}")
    lo = block.words[op.first_word].start
    hi = block.words[op.last_word].end
    segments = _canonical(_subtract(edl.segments, lo, hi))

    kept = block.words[: op.first_word] + block.words[op.last_word + 1 :]
    if kept:
        new_block = replace(
            block,
            start=kept[0].start,
            end=kept[-1].end,
            text=" ".join(w.text for w in kept),
            words=kept,
        )
        blocks = tuple(new_block if b.id == block.id else b for b in doc.blocks)
    else:
        blocks = tuple(b for b in doc.blocks if b.id != block.id)
    return replace(doc, blocks=blocks), replace(edl, segments=segments)


def _trim(doc, edl, op):
    block = _find_block(doc, op.block_id)
    if not (block.start <= op.start < op.end <= block.end):
        raise InvalidTrim(
            f"trim [{op.start}, {op.end}) outside block span "
            f"[{block.start}, {block.end})")
    segments = list(edl.segments)
    if op.start > block.start:
        segments = _subtract(segments, block.start, op.start)
    if op.end < block.end:
        segments = _subtract(segments, op.end, block.end)

    words = tuple(w for w in block.words
                  if w.start >= op.start and w.end <= op.end)
    if block.words and not words:
        blocks = tuple(b for b in doc.blocks if b.id != block.id)
    else:
        text = block.text
        if block.kind is BlockKind.PAUSE:
            text = pause_text(op.end - op.start)
        elif block.words:
            text = " ".join(w.text for w in words)
        new_block = replace(block, start=op.start, end=op.end,
                            text=text, words=words)
        blocks = tuple(new_block if b.id == block.id else b for b in doc.blocks)
    return replace(doc, blocks=blocks), replace(edl, segments=_canonical(segments))


def _speed(doc, edl, op):
    block = _find_block(doc, op.block_id)
    if not SPEED_MIN <= op.factor <= SPEED_MAX:
        raise InvalidSpeed(
            f"factor {op.factor} outside [{SPEED_MIN}, {SPEED_MAX}]")
    segments = _set_speed(edl.segments, block.start, block.end, op.factor)
    return doc, replace(edl, segments=_canonical(segments))


_APPLIERS = {
    EditKind.DELETE_BLOCKS: _delete_blocks,
    EditKind.DELETE_WORDS: _delete_words,
    EditKind.TRIM: _trim,
    EditKind.SPEED: _speed,
}


def apply(
    doc: AVScriptDoc, edl: EditDecisionList, op: EditOp
) -> tuple[AVScriptDoc, EditDecisionList]:
    """Apply one non-undo op, returning the next (doc, edl) revision."""
    if op.revision != doc.revision:
        raise ConflictError(doc.revision, op.revision)
    if op.kind is EditKind.UNDO:
        raise InvalidOp("Undo is handled by the edit session, not apply()")
    new_doc, new_edl = _APPLIERS[op.kind](doc, edl, op)
    return replace(new_doc, revision=doc.revision + 1), new_edl


class EditSession:
    """Holds the current (doc, edl), the undo stack, and the op log."""

    def __init__(self, doc: AVScriptDoc, edl: EditDecisionList | None = None):
        self.doc = doc
        self.edl = edl or EditDecisionList.full(doc.source_duration)
        self._undo_stack: list[tuple[AVScriptDoc, EditDecisionList]] = []
        self.log: list[EditOp] = []

    def apply(self, op: EditOp) -> tuple[AVScriptDoc, EditDecisionList]:
        if op.revision != self.doc.revision:
            raise ConflictError(self.doc.revision, op.revision)
        if op.kind is EditKind.UNDO:
            if not self._undo_stack:
                raise NothingToUndo("no edits to undo")
            prev_doc, prev_edl = self._undo_stack.pop()
            self.doc = replace(prev_doc, revision=self.doc.revision + 1)
            self.edl = prev_edl
        else:
            new_doc, new_edl = apply(self.doc, self.edl, op)
            self._undo_stack.append((self.doc, self.edl))
            self.doc, self.edl = new_doc, new_edl
        self.log.append(op)
        return self.doc, self.edl

    def replay(self, ops: list[EditOp]) -> None:
        for op in ops:
            self.apply(op)


def op_to_dict(op: EditOp) -> dict:
    data: dict = {"kind": op.kind.value, "revision": op.revision}
    if op.kind is EditKind.DELETE_BLOCKS:
        data["targets"] = list(op.targets)
    elif op.kind is EditKind.DELETE_WORDS:
        data.update(block_id=op.block_id, first_word=op.first_word,
                    last_word=op.last_word)
    elif op.kind is EditKind.TRIM:
        data.update(block_id=op.block_id, start=op.start, end=op.end)
    elif op.kind is EditKind.SPEED:
        data.update(block_id=op.block_id, factor=op.factor)
    return data


def op_from_dict(data: dict) -> EditOp:
    try:
        kind = EditKind(data["kind"])
        revision = int(data["revision"])
    except (KeyError, ValueError) as exc:
        raise InvalidOp(f"malformed op: {data!r}") from exc
    try:
        if kind is EditKind.DELETE_BLOCKS:
            return EditOp(kind, revision, targets=tuple(data["targets"]))
        if kind is EditKind.DELETE_WORDS:
            return EditOp(kind, revision, block_id=str(data["block_id"]),
                          first_word=int(data["first_word"]),
                          last_word=int(data["last_word"]))
        if kind is EditKind.TRIM:
            return EditOp(kind, revision, block_id=str(data["block_id"]),
                          start=float(data["start"]), end=float(data["end"]))
        if kind is EditKind.SPEED:
            return EditOp(kind, revision, block_id=str(data["block_id"]),
                          factor=float(data["factor"]))
        return EditOp(kind, revision)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidOp(f"malformed {kind.value} op: {data!r}") from exc


def edl_to_dict(edl: EditDecisionList) -> dict:
    segments = sorted(edl.segments, key=lambda s: s.src_start)
    return {
        "source_duration": edl.source_duration,
        "segments": [
            {"src_start": s.src_start, "src_end": s.src_end, "speed": s.speed}
            for s in segments
        ],
    }


def edl_from_dict(data: dict) -> EditDecisionList:
    return EditDecisionList(
        segments=tuple(
            EdlSegment(s["src_start"], s["src_end"], s["speed"])
            for s in data["segments"]
        ),
        source_duration=data["source_duration"],
    )


def compile_render_plan(edl: EditDecisionList) -> tuple[dict, str]:
    """Emit the edl.json payload and the plain-text cut list."""
    data = edl_to_dict(edl)
    if not data["segments"]:
        warnings.warn("render plan has zero segments", EmptyOutput, stacklevel=2)
    lines = [
        f"keep {s['src_start']:.3f} {s['src_end']:.3f} speed {s['speed']:.3f}"
        for s in data["segments"]
    ]
    return data, "".join(line + "\n" for line in lines)
