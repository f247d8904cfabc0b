"""Command line interface.

Subcommands map one-to-one onto the engine surface: parse and compile for the
tag language, annotate and score-case for evaluation, graph for loop and
drift analysis, simulate for multi-speaker generation, stats for group
comparisons, and serve for the HTTP service.

Settings resolve with the precedence CLI flag > environment variable >
config file > built-in default. The optional config file (--config PATH) is
a flat JSON object; recognized keys are host, port, llm, data_dir, and
output_dir.

Exit codes: 0 success, 2 validation error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dialogue.llm import client_from_name
from .errors import InvalidRequest, MalformedJson, MsaError
from .fixtures import FIXTURE_CASES, load_fixture
from .gcode.tags import (
    SpeakerModuleConfig,
    build_prompt_directives,
    parse_config_document,
    parse_tag_list,
)
from .msl.graph import ResponsibilityGraph
from .scoring.report import ScoreCard, render_case_table, scorecard_json
from .scoring.rubric import SubScores, shift_rate_percent
from .scoring.stats import GroupStats, format_interval, mean_confidence_interval, two_sample_t
from .dialogue.transcript import PragmaticRole, load_transcript_jsonl
from .service import analyze_graph_report, serve
from .simulate import load_task, run_simulation_to_file

ENV_PREFIX = "MSA_"
DEFAULTS = {
    "host": "127.0.0.1",
    "port": "8811",
    "llm": "stub",
    "data_dir": "data",
    "output_dir": "output",
}


def _load_config_file(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except ValueError as exc:
        raise MalformedJson(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise MalformedJson(f"{path}: config file must hold a JSON object")
    return {str(k): str(v) for k, v in raw.items()}


def resolve_setting(name: str, flag_value: str | None, config: dict[str, str]) -> str:
    """flag > MSA_<NAME> env var > config file > default."""
    if flag_value is not None:
        return flag_value
    import os

    env_value = os.environ.get(ENV_PREFIX + name.upper())
    if env_value is not None:
        return env_value
    if name in config:
        return config[name]
    return DEFAULTS[name]


def _speaker_module_from_text(text: str) -> SpeakerModuleConfig:
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return parse_config_document(stripped)
    return parse_tag_list(stripped.split())


# --- subcommand handlers ---

def _cmd_parse(args: argparse.Namespace) -> int:
    config = _speaker_module_from_text(args.module)
    print(json.dumps(config.to_document(), indent=2, ensure_ascii=False))
    return 0


def _cmd_compile(args: argparse.Namespace) -> int:
    config = _speaker_module_from_text(args.module)
    print(build_prompt_directives(config))
    return 0


def _cmd_annotate(args: argparse.Namespace) -> int:
    transcript = load_transcript_jsonl(args.transcript)
    from .scoring.report import annotate_transcript

    card = annotate_transcript(transcript)
    sys.stdout.write(scorecard_json(card))
    return 0


def _cmd_graph(args: argparse.Namespace) -> int:
    try:
        raw = json.loads(Path(args.graph).read_text(encoding="utf-8"))
    except ValueError as exc:
        raise MalformedJson(f"{args.graph}: {exc}") from exc
    graph = ResponsibilityGraph.from_dict(raw)
    report = analyze_graph_report(graph)
    if args.closure:
        from .msl.graph import transitive_closure

        report["transitive_closure"] = sorted(list(pair) for pair in transitive_closure(graph))
    print(json.dumps(report, indent=2, ensure_ascii=False))
    return 0


def _cmd_score_case(args: argparse.Namespace) -> int:
    path = Path(args.subscores)
    if not path.exists() and path.stem in FIXTURE_CASES:
        fixture = load_fixture(path.stem)
        sub, roles = fixture.subscores, fixture.function_roles
    else:
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except ValueError as exc:
            raise MalformedJson(f"{path}: {exc}") from exc
        sub = SubScores.from_dict(raw)
        roles = tuple(PragmaticRole(r) for r in raw.get("function_roles", []))
    shift_pct = shift_rate_percent(roles) if len(roles) >= 2 else None
    sys.stdout.write(render_case_table(sub, shift_pct, title=path.stem))
    if args.json:
        card = ScoreCard.from_subscores(sub, roles if len(roles) >= 2 else None)
        sys.stdout.write(scorecard_json(card))
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    group_a = GroupStats.parse(args.a)
    group_b = GroupStats.parse(args.b)
    variant = "welch" if args.welch else "pooled"
    t, df = two_sample_t(group_a, group_b, variant=variant)
    df_text = f"{df:.0f}" if variant == "pooled" else f"{df:.2f}"
    print(f"t({df_text}) = {t:.4f}  [{variant}]")
    ci_a = mean_confidence_interval(group_a, args.level)
    ci_b = mean_confidence_interval(group_b, args.level)
    print(f"group a: n={group_a.n} mean={group_a.mean} ci{args.level:.2f}={format_interval(*ci_a)}")
    print(f"group b: n={group_b.n} mean={group_b.mean} ci{args.level:.2f}={format_interval(*ci_b)}")
    if args.reference_t is not None:
        delta = t - args.reference_t
        print(
            f"reference t = {args.reference_t:.4f}, delta = {delta:+.4f}"
            f" (computed value differs from the reference)"
        )
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_config_file(args.config)
    data_dir = resolve_setting("data_dir", args.data_dir, config)
    out_dir = resolve_setting("output_dir", args.out_dir, config)
    llm_name = resolve_setting("llm", args.llm, config)

    task_path = Path(args.task)
    if not task_path.exists():
        candidate = Path(data_dir) / args.task
        if candidate.exists():
            task_path = candidate
        else:
            raise InvalidRequest(f"task file not found: {args.task}")
    task = load_task(task_path)
    llm = client_from_name(llm_name)
    out_path = run_simulation_to_file(
        task,
        llm,
        out_dir=out_dir,
        task_id=task_path.stem,
        turns=args.turns,
        seed=args.seed,
    )
    print(out_path)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    config = _load_config_file(args.config)
    host = resolve_setting("host", args.host, config)
    port = int(resolve_setting("port", args.port, config))
    llm_name = resolve_setting("llm", args.llm, config)
    llm = client_from_name(llm_name)
    print(f"listening on http://{host}:{port}", file=sys.stderr)
    serve(host, port, llm)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a speaker module into canonical JSON")
    p.add_argument("module", help="tag list like '#T_SOFTASSERT #P_SELFREF' or a JSON document")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("compile", help="compile a speaker module to its directive string")
    p.add_argument("module", help="tag list or JSON document")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("annotate", help="mechanically annotate a JSONL transcript")
    p.add_argument("transcript", help="path to a JSONL transcript")
    p.set_defaults(func=_cmd_annotate)

    p = sub.add_parser("graph", help="closed loops and partial drift of a graph JSON file")
    p.add_argument("graph", help="path to a graph JSON file")
    p.add_argument("--closure", action="store_true", help="include the transitive closure")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("score-case", help="render totals for a sub-scores file or bundled case")
    p.add_argument("subscores", help="path to a sub-scores JSON file, or a case id like case1")
    p.add_argument("--json", action="store_true", help="also emit the canonical JSON card")
    p.set_defaults(func=_cmd_score_case)

    p = sub.add_parser("stats", help="two-sample comparison from summary statistics")
    p.add_argument("--a", required=True, help="group a as N,MEAN,SD")
    p.add_argument("--b", required=True, help="group b as N,MEAN,SD")
    p.add_argument("--welch", action="store_true", help="use Welch's correction")
    p.add_argument("--level", type=float, default=0.95, help="confidence level (default 0.95)")
    p.add_argument(
        "--reference-t",
        type=float,
        default=None,
        help="previously reported t value to compare against",
    )
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("simulate", help="run a multi-speaker task to an output JSONL file")
    p.add_argument("task", help="task JSON file (looked up in the data dir if not found as given)")
    p.add_argument("--turns", type=int, default=6, help="generated turn budget (default 6)")
    p.add_argument("--seed", type=int, default=0, help="rng seed (default 0)")
    p.add_argument("--llm", default=None, help="client: stub or remote")
    p.add_argument("--data-dir", default=None, help="task file directory")
    p.add_argument("--out-dir", default=None, help="output directory")
    p.add_argument("--config", default=None, help="JSON config file")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default=None)
    p.add_argument("--port", default=None)
    p.add_argument("--llm", default=None, help="client: stub or remote")
    p.add_argument("--config", default=None, help="JSON config file")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MsaError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 1
    except Exception as exc:  # runtime failures: missing files, sockets, ...
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
