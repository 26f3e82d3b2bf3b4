"""Word-aligned transcript parsing and line segmentation.

An aligned transcript gives each spoken word a [start, end) span in the
source timeline.  Segmentation turns the word stream into script lines:
narration lines broken at sentence terminators, at long comma phrases,
and at long silences, plus pause lines covering every silence longer
than the pause threshold (including leading and trailing dead air).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import MalformedTranscript

SENTENCE_TERMINATORS = (".", "?", "!")


class LineKind(str, enum.Enum):
    NARRATION = "Narration"
    PAUSE = "Pause"


@dataclass(frozen=True)
class WordToken:
    text: str
    start: float
    end: float


@dataclass(frozen=True)
class ScriptLine:
    kind: LineKind
    start: float
    end: float
    text: str
    words: tuple[WordToken, ...] = ()

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class TranscriptDoc:
    lines: tuple[ScriptLine, ...]
    source_duration: float


@dataclass
class TranscriptConfig:
    pause_threshold: float = 3.0
    min_phrase_words: int = 3

    def __post_init__(self):
        if self.pause_threshold <= 0:
            raise ValueError("pause_threshold must be > 0")
        if self.min_phrase_words < 1:
            raise ValueError("min_phrase_words must be >= 1")

    def to_dict(self) -> dict:
        return {
            "pause_threshold": self.pause_threshold,
            "min_phrase_words": self.min_phrase_words,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TranscriptConfig":
        return cls(**data)


def pause_text(duration: float) -> str:
    return f"{duration:.1f} seconds"


def parse_aligned_transcript(data: dict) -> tuple[list[WordToken], float]:
    """Validate a transcript.json payload into sorted word tokens.

    Schema: {"source_duration": s, "words": [{"text", "start", "end"}]}.
    """
    if not isinstance(data, dict) or "source_duration" not in data or "words" not in data:
        raise MalformedTranscript("expected source_duration and words fields")
    try:
        duration = float(data["source_duration"])
    except (TypeError, ValueError) as exc:
        raise MalformedTranscript("source_duration must be a number") from exc
    if duration <= 0:
        raise MalformedTranscript("source_duration must be > 0")

    tokens = []
    for i, w in enumerate(data["words"]):
        try:
            token = WordToken(str(w["text"]), float(w["start"]), float(w["end"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedTranscript(f"bad word entry at position {i}") from exc
        if token.start < 0 or token.end < 0:
            raise MalformedTranscript(f"negative time at word {i}")
        if token.start >= token.end:
            raise MalformedTranscript(f"word {i} must have start < end")
        if token.end > duration:
            raise MalformedTranscript(f"word {i} extends past source_duration")
        tokens.append(token)

    for a, b in zip(tokens, tokens[1:]):
        if b.start < a.start:
            raise MalformedTranscript("words must be sorted by start time")
        if b.start < a.end:
            raise MalformedTranscript(
                f"words overlap at {a.end:.3f}s ({a.text!r} / {b.text!r})"
            )
    return tokens, duration


def serialize_tokens(tokens: list[WordToken], source_duration: float) -> dict:
    return {
        "source_duration": source_duration,
        "words": [{"text": t.text, "start": t.start, "end": t.end} for t in tokens],
    }


def _punctuation_breaks(tokens: list[WordToken], min_phrase_words: int) -> set[int]:
    """Indices i such that a line ends after tokens[i], from punctuation only.

    Sentence terminators always break.  A comma breaks only when the chunk
    it closes and the rest of its sentence each hold >= min_phrase_words
    words; chunks are taken greedily left to right.
    """
    breaks = set()
    for i, tok in enumerate(tokens):
        if tok.text.rstrip().endswith(SENTENCE_TERMINATORS):
            breaks.add(i)

    terminators = sorted(breaks)
    starts = [0] + [i + 1 for i in terminators]
    spans = [
        (s, min((b for b in terminators if b >= s), default=len(tokens) - 1))
        for s in starts
        if s < len(tokens)
    ]
    for s, e in spans:
        chunk_start = s
        for i in range(s, e):
            if tokens[i].text.rstrip().endswith(","):
                chunk_len = i - chunk_start + 1
                rest_len = e - i
                if chunk_len >= min_phrase_words and rest_len >= min_phrase_words:
                    breaks.add(i)
                    chunk_start = i + 1
    return breaks


def segment_lines(
    tokens: list[WordToken],
    source_duration: float,
    config: TranscriptConfig | None = None,
) -> TranscriptDoc:
    """Segment word tokens into narration and pause lines.

    Narration breaks at sentence terminators, at qualifying commas, and
    wherever a pause line interrupts.  Every silence strictly longer than
    the pause threshold (between words, before the first word, or after
    the last word within [0, source_duration]) becomes a Pause line.
    """
    config = config or TranscriptConfig()
    if not tokens:
        lines = ()
        if source_duration > config.pause_threshold:
            lines = (ScriptLine(LineKind.PAUSE, 0.0, source_duration,
                                pause_text(source_duration)),)
        return TranscriptDoc(lines, source_duration)

    breaks = _punctuation_breaks(tokens, config.min_phrase_words)

    lines = []
    if tokens[0].start > config.pause_threshold:
        lines.append(ScriptLine(LineKind.PAUSE, 0.0, tokens[0].start,
                                pause_text(tokens[0].start)))

    chunk: list[WordToken] = []

    def flush():
        if chunk:
            lines.append(ScriptLine(
                LineKind.NARRATION, chunk[0].start, chunk[-1].end,
                " ".join(w.text for w in chunk), tuple(chunk),
            ))
            chunk.clear()

    for i, tok in enumerate(tokens):
        chunk.append(tok)
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        gap_after = (nxt.start - tok.end) if nxt else source_duration - tok.end
        if i in breaks or gap_after > config.pause_threshold:
            flush()
        if gap_after > config.pause_threshold:
            gap_end = nxt.start if nxt else source_duration
            lines.append(ScriptLine(LineKind.PAUSE, tok.end, gap_end,
                                    pause_text(gap_end - tok.end)))
    flush()
    return TranscriptDoc(tuple(lines), source_duration)
