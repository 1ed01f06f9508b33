"""Operator command line: train, serve, score, replay."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .artifacts import load_artifacts, save_artifacts, train_artifacts
from .corpus import ingest_corpus
from .document import analyze_abstract
from .eventlog import read_events
from .generator import generator_from_env
from .wire import document_to_wire


def _cmd_train(args) -> int:
    corpus = ingest_corpus(args.corpus, strict=args.strict)
    for issue in corpus.issues:
        print(f"warning: {issue}", file=sys.stderr)
    if not corpus.records:
        print("error: corpus has no valid records", file=sys.stderr)
        return 1
    artifacts = train_artifacts(corpus)
    save_artifacts(artifacts, Path(args.artifacts_dir))
    for conference, bundle in sorted(artifacts.items()):
        profile = bundle.profile
        print(
            f"{conference}: {profile.n_abstracts} abstracts, {profile.n_sentences} sentences, "
            f"boundaries {[round(b, 2) for b in profile.quality_boundaries]}"
        )
    print(f"artifacts written to {args.artifacts_dir}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    artifacts = load_artifacts(Path(args.artifacts_dir), generator=generator_from_env())
    app = create_app(artifacts, Path(args.logs_dir))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _cmd_score(args) -> int:
    artifacts = load_artifacts(Path(args.artifacts_dir))
    if args.conference not in artifacts:
        print(
            f"error: unknown conference {args.conference!r}; available: {sorted(artifacts)}",
            file=sys.stderr,
        )
        return 1
    bundle = artifacts[args.conference]
    source = open(args.input, encoding="utf-8") if args.input else sys.stdin
    with source:
        for line in source:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            document = analyze_abstract(
                obj["text"], bundle.classifier, bundle.style_lm, bundle.profile
            )
            report = document_to_wire(document, args.conference)
            report["abstract_id"] = obj.get("abstract_id")
            print(json.dumps(report, sort_keys=True))
    return 0


def _cmd_replay(args) -> int:
    from .service import replay_session

    artifacts = load_artifacts(Path(args.artifacts_dir))
    events = read_events(Path(args.log))
    engine, responses = replay_session(events, artifacts)
    for event, response in zip([e for e in events if e.kind != "session_created"], responses):
        print(json.dumps({"event": event.kind, "response": response}, sort_keys=True))
    print(
        json.dumps(
            {"session_id": engine.session_id, "turns": len(engine.state.history)},
            sort_keys=True,
        ),
        file=sys.stderr,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xaiwriter")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="build model artifacts from a corpus file")
    p_train.add_argument("--corpus", required=True)
    p_train.add_argument("--artifacts-dir", required=True)
    p_train.add_argument("--strict", action="store_true", help="fail on the first bad corpus line")
    p_train.set_defaults(func=_cmd_train)

    p_serve = sub.add_parser("serve", help="run the web service")
    p_serve.add_argument("--artifacts-dir", required=True)
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--logs-dir", default="session_logs")
    p_serve.set_defaults(func=_cmd_serve)

    p_score = sub.add_parser("score", help="batch-score abstracts (JSONL in, JSONL out)")
    p_score.add_argument("--artifacts-dir", required=True)
    p_score.add_argument("--conference", required=True)
    p_score.add_argument("--input", help="JSONL file of {abstract_id, text}; defaults to stdin")
    p_score.set_defaults(func=_cmd_score)

    p_replay = sub.add_parser("replay", help="replay a session event log into a transcript")
    p_replay.add_argument("log", help="path to a session .jsonl event log")
    p_replay.add_argument("--artifacts-dir", required=True)
    p_replay.set_defaults(func=_cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
