"""Project directory layout, config, persistence, and pipeline commands.

A project is a directory of plain JSON artifacts.  Inputs: frames/
(sampled PGM files), detections.json, transcript.json, captions.json,
config.json.  Derived: analysis.json, script.json, edl.json, edits.log,
cutlist.txt.  Derived state is always regenerable: the script and EDL
are rebuilt from inputs plus a full replay of edits.log, so a crash
between the log append and the artifact rewrite loses nothing.
"""

from __future__ import annotations

import fcntl
import json
import logging
import os
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from . import avdoc, editing, frames, scenes, transcript as transcript_mod
from .analysis import (
    AnalysisConfig,
    FrameRecord,
    analyze_records,
    records_from_dict,
    records_to_dict,
)
from .avdoc import AVScriptDoc, assemble, doc_from_dict, doc_to_dict
from .editing import (
    EditDecisionList,
    EditOp,
    EditSession,
    compile_render_plan,
    edl_to_dict,
    op_from_dict,
    op_to_dict,
)
from .errors import InconsistentInput, MalformedInput, MissingInput
from .scenes import SegmentationConfig, attach_captions, propose_boundaries, snap_to_phrases
from .transcript import TranscriptConfig, parse_aligned_transcript, segment_lines

log = logging.getLogger(__name__)


@dataclass
class ProjectConfig:
    analysis: AnalysisConfig
    segmentation: SegmentationConfig
    transcript: TranscriptConfig

    @classmethod
    def from_dict(cls, data: dict) -> "ProjectConfig":
        return cls(
            analysis=AnalysisConfig.from_dict(data.get("analysis", {})),
            segmentation=SegmentationConfig.from_dict(data.get("segmentation", {})),
            transcript=TranscriptConfig.from_dict(data.get("transcript", {})),
        )

    def to_dict(self) -> dict:
        return {
            "analysis": self.analysis.to_dict(),
            "segmentation": self.segmentation.to_dict(),
            "transcript": self.transcript.to_dict(),
        }


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(text)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


@dataclass
class ProjectState:
    session: EditSession
    records: list[FrameRecord]
    config: ProjectConfig


class Project:
    def __init__(self, root: Path | str, config_path: Path | str | None = None):
        self.root = Path(root)
        self._config_path = Path(config_path) if config_path else None

    # input paths
    @property
    def frames_dir(self) -> Path:
        return self.root / "frames"

    @property
    def detections_path(self) -> Path:
        return self.root / "detections.json"

    @property
    def transcript_path(self) -> Path:
        return self.root / "transcript.json"

    @property
    def captions_path(self) -> Path:
        return self.root / "captions.json"

    # derived paths
    @property
    def analysis_path(self) -> Path:
        return self.root / "analysis.json"

    @property
    def script_path(self) -> Path:
        return self.root / "script.json"

    @property
    def edl_path(self) -> Path:
        return self.root / "edl.json"

    @property
    def log_path(self) -> Path:
        return self.root / "edits.log"

    @property
    def cutlist_path(self) -> Path:
        return self.root / "cutlist.txt"

    @contextmanager
    def exclusive_lock(self):
        self.root.mkdir(parents=True, exist_ok=True)
        lock_file = open(self.root / ".lock", "w")
        try:
            fcntl.flock(lock_file.fileno(), fcntl.LOCK_EX)
            yield
        finally:
            fcntl.flock(lock_file.fileno(), fcntl.LOCK_UN)
            lock_file.close()

    def load_config(self) -> ProjectConfig:
        path = self._config_path or (self.root / "config.json")
        if path.is_file():
            try:
                data = json.loads(path.read_text())
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"bad config {path.name}: {exc}") from exc
            return ProjectConfig.from_dict(data)
        if self._config_path:
            raise MissingInput(str(self._config_path))
        return ProjectConfig(AnalysisConfig(), SegmentationConfig(), TranscriptConfig())

    def _read_json(self, path: Path) -> dict:
        if not path.is_file():
            raise MissingInput(path.name)
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"bad JSON in {path.name}: {exc}") from exc

    # ---- pipeline steps ------------------------------------------------

    def run_analysis(self) -> list[FrameRecord]:
        config = self.load_config()
        provider = frames.DirectoryFrameProvider(self.frames_dir)
        if len(provider) == 0:
            raise MissingInput("frames")
        detections = {}
        if self.detections_path.is_file():
            detections = frames.load_detections(self.detections_path)
        records = frames.build_records(provider, detections, config.analysis)
        atomic_write_text(self.analysis_path,
                          _dump_json(records_to_dict(records, config.analysis)))
        return records

    def load_records(self) -> tuple[list[FrameRecord], AnalysisConfig]:
        return records_from_dict(self._read_json(self.analysis_path))

    def caption_provider(self):
        if not self.captions_path.is_file():
            def missing(index: int) -> str:
                raise MissingInput(self.captions_path.name)
            return missing
        table = self._read_json(self.captions_path)

        def provider(index: int) -> str:
            return table[str(index)]

        return provider

    def build_initial_doc(
        self, records: list[FrameRecord], analysis_config: AnalysisConfig
    ) -> AVScriptDoc:
        """Deterministic script document from inputs; revision 0."""
        config = self.load_config()
        tokens, duration = parse_aligned_transcript(
            self._read_json(self.transcript_path))
        n = len(records)
        rate = analysis_config.sample_rate
        if abs(n / rate - duration) > 1.0 / rate:
            raise InconsistentInput(
                f"{n} frames at {rate} fps covers {n / rate:.1f}s but "
                f"transcript says {duration:.1f}s")
        tdoc = segment_lines(tokens, duration, config.transcript)
        flags, segments = analyze_records(records, analysis_config)
        boundaries = propose_boundaries(
            records, config.segmentation.window,
            config.segmentation.similarity_threshold)
        scene_spans = snap_to_phrases(boundaries, tdoc)
        captioned = attach_captions(scene_spans, records,
                                    self.caption_provider(), analysis_config)
        return assemble(tdoc, captioned, segments)

    def run_script(self) -> tuple[AVScriptDoc, EditDecisionList]:
        records, analysis_config = self.load_records()
        doc = self.build_initial_doc(records, analysis_config)
        edl = EditDecisionList.full(doc.source_duration)
        if self.log_path.is_file() and self.log_path.stat().st_size > 0:
            invalid = self.log_path.with_name("edits.log.invalid")
            os.replace(self.log_path, invalid)
            log.warning("script regenerated: existing edits.log moved to %s",
                        invalid.name)
        self.write_state(doc, edl)
        return doc, edl

    # ---- persistence -----------------------------------------------------

    def write_state(self, doc: AVScriptDoc, edl: EditDecisionList) -> None:
        atomic_write_text(self.script_path, _dump_json(doc_to_dict(doc)))
        atomic_write_text(self.edl_path, _dump_json(edl_to_dict(edl)))

    def append_op(self, op: EditOp) -> None:
        with open(self.log_path, "a") as fh:
            fh.write(json.dumps(op_to_dict(op), sort_keys=True) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def read_log(self) -> list[EditOp]:
        if not self.log_path.is_file():
            return []
        ops = []
        for line in self.log_path.read_text().splitlines():
            if line.strip():
                ops.append(op_from_dict(json.loads(line)))
        return ops

    def load_state(self) -> ProjectState:
        """Rebuild the current session: initial doc + full log replay."""
        config = self.load_config()
        records, analysis_config = self.load_records()
        if not self.script_path.is_file():
            raise MissingInput(self.script_path.name)
        doc = self.build_initial_doc(records, analysis_config)
        session = EditSession(doc)
        session.replay(self.read_log())
        return ProjectState(session=session, records=records, config=config)

    def persist_after_edit(self, session: EditSession, op: EditOp) -> None:
        """Log first (fsynced), then rewrite the derived artifacts."""
        self.append_op(op)
        self.write_state(session.doc, session.edl)

    def export_render_plan(self, edl: EditDecisionList) -> str:
        data, cutlist = compile_render_plan(edl)
        atomic_write_text(self.edl_path, _dump_json(data))
        atomic_write_text(self.cutlist_path, cutlist)
        return cutlist
