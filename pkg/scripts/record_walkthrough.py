"""Regenerate the golden walkthrough transcript.

Run after any intentional change to models, templates, or the wire format,
then review the diff before committing:

    python scripts/record_walkthrough.py
"""

from __future__ import annotations

import sys
import tempfile
from pathlib import Path

from xaiwriter.demo import build_demo_artifacts, canonical_json, run_walkthrough

GOLDEN_PATH = Path(__file__).resolve().parents[1] / "tests" / "golden" / "walkthrough.json"


def main() -> int:
    artifacts = build_demo_artifacts()
    with tempfile.TemporaryDirectory() as logs_dir:
        steps = run_walkthrough(artifacts, Path(logs_dir))
    GOLDEN_PATH.parent.mkdir(parents=True, exist_ok=True)
    GOLDEN_PATH.write_text(canonical_json(steps), encoding="utf-8")
    print(f"wrote {GOLDEN_PATH} ({len(steps)} steps)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
