#!/usr/bin/env python3
"""Score the analysis pipeline against the synthetic project's plants.

Builds the fixture in a temp directory, runs frame analysis and scene
proposal, then reports boundary agreement and error precision/recall
against the known planted values.  Everything here should score 1.0;
lower numbers mean a detector or the segmenter regressed.
"""

import tempfile
from pathlib import Path

from avse import synth
from avse.project import Project
from avse.scenes import LabeledSpan, propose_boundaries, score_boundaries, score_errors

PLANTED_BOUNDARIES = [80.0, 160.0, 240.0, 330.0, 420.0, 500.0, 580.0]
PLANTED_ERRORS = [
    LabeledSpan("Dark", 200.0, 208.0),
    LabeledSpan("Blur", 300.0, 306.0),
    LabeledSpan("CameraMoving", 360.0, 372.0),
    LabeledSpan("Blur", 420.0, 428.0),
]


def main():
    with tempfile.TemporaryDirectory() as tmp:
        root = synth.build_project(Path(tmp) / "fixture")
        project = Project(root)
        records = project.run_analysis()
        doc, _ = project.run_script()

    config = project.load_config().segmentation
    proposed = propose_boundaries(records, config.window,
                                  config.similarity_threshold)
    boundary_report = score_boundaries(proposed, PLANTED_BOUNDARIES)
    print(f"proposed boundaries: {proposed}")
    print(f"boundary agreement:  jaccard={boundary_report.jaccard_similarity:.3f} "
          f"({boundary_report.matched} matched)")

    detected = [LabeledSpan(s.kind.value, s.start, s.end)
                for s in doc.error_segments]
    error_report = score_errors(detected, PLANTED_ERRORS)
    print(f"detected errors:     {[(s.kind, s.start, s.end) for s in detected]}")
    print(f"error detection:     precision={error_report.precision:.3f} "
          f"recall={error_report.recall:.3f}")


if __name__ == "__main__":
    main()
