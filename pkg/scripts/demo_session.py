"""Run the scripted walkthrough against an in-process service and print the
conversation in a readable form. Useful as a quick eyeball check that the
whole pipeline behaves.

    python scripts/demo_session.py
"""

from __future__ import annotations

import sys
import tempfile
from pathlib import Path

from xaiwriter.demo import DEMO_ABSTRACT, build_demo_artifacts, run_walkthrough


def main() -> int:
    print("training demo artifacts...")
    artifacts = build_demo_artifacts()
    with tempfile.TemporaryDirectory() as logs_dir:
        steps = run_walkthrough(artifacts, Path(logs_dir))

    print("\n--- submitted abstract ---")
    print(DEMO_ABSTRACT)
    doc = steps[0]["response"]
    print("\n--- per-sentence predictions ---")
    for s in doc["sentences"]:
        print(f"  S{s['index'] + 1}: {s['label']:<10} conf={s['confidence']:.2f} quality={s['quality_score']}")
    review = doc["review"]
    print("\n--- review ---")
    for item in review["items"]:
        print(f"  [{item['kind']}] {item['message']}")
    print(
        f"  overall style {review['overall_style']:.2f} | "
        f"structure {review['overall_structure']:.2f} | overall {review['overall']:.2f}"
    )
    print("\n--- conversation ---")
    for step in steps[1:]:
        if step["step"] == "select_sentence":
            print(f"\n[user clicks sentence {step['sentence_index'] + 1}]")
        else:
            print(f"\nuser: {step['utterance']}")
        payload = step["response"]["payload"]
        print(f"agent ({payload['intent']}): {payload['text']}")
        for attachment in payload["attachments"]:
            if attachment["type"] == "example_list":
                for e in attachment["examples"]:
                    print(f"    - [{e['label']}] (sim {e['similarity']:.3f}) {e['sentence']}")
            elif attachment["type"] == "attribution_map":
                pairs = sorted(
                    zip(attachment["tokens"], attachment["weights"]), key=lambda p: -abs(p[1])
                )[: attachment["top_k"]]
                print("    top tokens:", ", ".join(f"{t} ({w:+.3f})" for t, w in pairs))
    return 0


if __name__ == "__main__":
    sys.exit(main())
