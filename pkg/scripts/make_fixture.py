#!/usr/bin/env python3
"""Generate the synthetic cooking-video project into a directory.

Usage: python3 scripts/make_fixture.py OUTDIR

The directory then works with the avse CLI:
    avse analyze --project OUTDIR
    avse script --project OUTDIR
"""

import argparse

from avse import synth


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir")
    args = parser.parse_args()
    root = synth.build_project(args.outdir)
    print(f"wrote {synth.N_FRAMES} frames plus transcript, detections, "
          f"and captions under {root}")


if __name__ == "__main__":
    main()
