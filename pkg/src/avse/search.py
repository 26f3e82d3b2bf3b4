"""Keyword search over speech, visual objects, errors, and pauses.

Terms are case-folded with surrounding punctuation stripped.  Speech
matches are exact consecutive word sequences in document order; object
matches coalesce to one hit per maximal contiguous frame run; error and
pause hits reuse the document's display labels.  Results are merged and
time-sorted for jump navigation.
"""

from __future__ import annotations

import enum
import string
from dataclasses import dataclass, field

from .analysis import FrameRecord
from .avdoc import (
    AVScriptDoc,
    BlockKind,
    ERROR_DISPLAY_LABELS,
    format_timestamp,
)
from .transcript import WordToken

SNIPPET_CONTEXT_WORDS = 3


class HitKind(str, enum.Enum):
    SPEECH = "Speech"
    OBJECT = "Object"
    ERROR = "Error"
    PAUSE = "Pause"


@dataclass(frozen=True)
class SearchHit:
    kind: HitKind
    time: float
    snippet: str
    target_block_id: str


def normalize_term(text: str) -> str:
    return text.casefold().strip(string.punctuation)


def normalize_query(q: str) -> str:
    terms = [normalize_term(t) for t in q.split()]
    return " ".join(t for t in terms if t)


@dataclass
class SearchIndex:
    doc: AVScriptDoc
    words: list[tuple[str, WordToken, str]]  # normalized text, token, block id
    object_hits: dict[str, list[SearchHit]]
    error_hits: dict[str, list[SearchHit]]
    pause_hits: list[SearchHit]

    def terms(self) -> set[str]:
        out = {w for w, _, _ in self.words}
        out |= set(self.object_hits) | set(self.error_hits)
        if self.pause_hits:
            out.add("pause")
        return out


def _containing_block(doc: AVScriptDoc, t: float) -> str | None:
    """Id of the line block containing t, else the heading containing t."""
    heading = None
    for b in doc.blocks:
        if b.start <= t < b.end:
            if b.kind is BlockKind.SCENE_HEADING:
                heading = heading or b.id
            else:
                return b.id
    return heading


def _scene_caption_at(doc: AVScriptDoc, t: float) -> str:
    for b in doc.blocks:
        if b.kind is BlockKind.SCENE_HEADING and b.start <= t < b.end:
            return b.text
    return ""


def build_index(doc: AVScriptDoc, records: list[FrameRecord]) -> SearchIndex:
    """Index the document's speech plus the frame records' object runs."""
    words = []
    for b in doc.blocks:
        for w in b.words:
            term = normalize_term(w.text)
            if term:
                words.append((term, w, b.id))

    object_hits: dict[str, list[SearchHit]] = {}
    runs: dict[str, list[tuple[int, int]]] = {}
    open_runs: dict[str, int] = {}
    prev_index = None
    for r in records:
        labels = {normalize_term(lb) for lb in r.labels()}
        labels.discard("")
        contiguous = prev_index is not None and r.index == prev_index + 1
        for label in list(open_runs):
            if not contiguous or label not in labels:
                runs.setdefault(label, []).append((open_runs.pop(label), prev_index))
        for label in labels:
            if label not in open_runs:
                open_runs[label] = r.index
        prev_index = r.index
    for label, start in open_runs.items():
        runs.setdefault(label, []).append((start, prev_index))

    by_index = {r.index: r for r in records}
    for label, spans in runs.items():
        for first, _ in spans:
            t = by_index[first].time
            target = _containing_block(doc, t)
            if target is None:
                continue
            caption = _scene_caption_at(doc, t)
            snippet = f"{label} ({caption})" if caption else label
            object_hits.setdefault(label, []).append(
                SearchHit(HitKind.OBJECT, t, snippet, target))

    error_hits: dict[str, list[SearchHit]] = {}
    for seg in doc.error_segments:
        term = normalize_query(ERROR_DISPLAY_LABELS[seg.kind])
        target = _containing_block(doc, seg.start)
        if target is None:
            continue
        label = f"{ERROR_DISPLAY_LABELS[seg.kind]} in {format_timestamp(seg.start)}"
        error_hits.setdefault(term, []).append(
            SearchHit(HitKind.ERROR, seg.start, label, target))

    pause_hits = [
        SearchHit(HitKind.PAUSE, b.start, b.text, b.id)
        for b in doc.blocks
        if b.kind is BlockKind.PAUSE
    ]
    return SearchIndex(doc, words, object_hits, error_hits, pause_hits)


def _speech_hits(index: SearchIndex, terms: list[str]) -> list[SearchHit]:
    hits = []
    n = len(terms)
    words = index.words
    for i in range(len(words) - n + 1):
        if all(words[i + j][0] == terms[j] for j in range(n)):
            _, first, block_id = words[i]
            lo = max(0, i - SNIPPET_CONTEXT_WORDS)
            hi = min(len(words), i + n + SNIPPET_CONTEXT_WORDS)
            snippet = " ".join(words[k][1].text for k in range(lo, hi))
            hits.append(SearchHit(HitKind.SPEECH, first.start, snippet, block_id))
    return hits


def query(index: SearchIndex, q: str) -> list[SearchHit]:
    """All hits whose normalized term equals the normalized query."""
    phrase = normalize_query(q)
    if not phrase:
        return []
    hits = list(_speech_hits(index, phrase.split()))
    hits += index.object_hits.get(phrase, [])
    hits += index.error_hits.get(phrase, [])
    if phrase == "pause":
        hits += index.pause_hits
    hits.sort(key=lambda h: (h.time, h.kind.value, h.snippet))
    return hits
