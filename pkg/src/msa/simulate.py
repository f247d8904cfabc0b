"""Multi-speaker simulation driven by per-speaker tag profiles.

A task file names at least two speaker profiles plus a task statement:

    {"speaker_A": {"tone": "NEUTRAL", ...},
     "speaker_B": {"tone": "HIGHASSERT", ...},
     "task": "Simulate a debate ..."}

Simulation seeds the transcript with the task as a system turn, then lets the
speakers take turns through the full reply pipeline. With the stub client and
a fixed seed the generated transcript is byte-identical across runs; the seed
only feeds the speaking-order shuffle, never wall-clock state. Output files
follow the ``<task-id>.<timestamp>.jsonl`` convention, and the timestamp
lives only in the file name, never in the content.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping

from .dialogue.llm import LlmClient
from .dialogue.pipeline import PipelineConfig, run_pipeline
from .dialogue.transcript import DialogueTurn, Transcript, dump_transcript_jsonl
from .errors import InvalidRequest, MalformedJson
from .gcode.tags import SpeakerModuleConfig, config_from_keyed_object

TASK_TURN_SPEAKER = "moderator"


@dataclass(frozen=True)
class MultiSpeakerTask:
    speakers: dict[str, SpeakerModuleConfig]
    task: str

    def __post_init__(self) -> None:
        if len(self.speakers) < 2:
            raise InvalidRequest(f"a task needs at least 2 speakers, got {len(self.speakers)}")
        if not self.task:
            raise InvalidRequest("task statement must be non-empty")

    @classmethod
    def from_obj(cls, obj: Mapping[str, object]) -> "MultiSpeakerTask":
        """Parse the task document: every key except ``task`` is a profile."""
        if not isinstance(obj, Mapping):
            raise MalformedJson(f"task must be a JSON object, got {type(obj).__name__}")
        if "task" not in obj:
            raise InvalidRequest("task document needs a 'task' key")
        speakers = {}
        for key, value in obj.items():
            if key == "task":
                continue
            if not isinstance(value, Mapping):
                raise MalformedJson(f"speaker {key!r}: profile must be a keyed object")
            speakers[key] = config_from_keyed_object(value)
        return cls(speakers=speakers, task=str(obj["task"]))

    def to_obj(self) -> dict[str, object]:
        out: dict[str, object] = {
            name: config.to_keyed_object() for name, config in self.speakers.items()
        }
        out["task"] = self.task
        return out


def load_task(path: str | Path) -> MultiSpeakerTask:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except ValueError as exc:
        raise MalformedJson(str(exc)) from exc
    return MultiSpeakerTask.from_obj(raw)


def simulate(
    task: MultiSpeakerTask,
    llm: LlmClient,
    turns: int = 6,
    seed: int = 0,
    pipeline_config: PipelineConfig = PipelineConfig(),
) -> Transcript:
    """Run ``turns`` pipeline replies over the task's speakers."""
    if turns < 1:
        raise InvalidRequest(f"turn budget must be >= 1, got {turns}")
    rng = random.Random(seed)
    order = sorted(task.speakers)
    rng.shuffle(order)

    transcript = Transcript(
        turns=(
            DialogueTurn(
                speaker=TASK_TURN_SPEAKER, text=task.task, turn_role="system", index=0
            ),
        ),
        metadata={"seed": str(seed)},
    )
    for i in range(turns):
        name = order[i % len(order)]
        result = run_pipeline(transcript, task.speakers[name], llm, pipeline_config)
        transcript = transcript.with_turn(replace(result.reply, speaker=name))
    return transcript


def run_simulation_to_file(
    task: MultiSpeakerTask,
    llm: LlmClient,
    out_dir: str | Path,
    task_id: str = "task",
    turns: int = 6,
    seed: int = 0,
    pipeline_config: PipelineConfig = PipelineConfig(),
) -> Path:
    """Simulate and write ``<task-id>.<timestamp>.jsonl`` under ``out_dir``."""
    transcript = simulate(task, llm, turns=turns, seed=seed, pipeline_config=pipeline_config)
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    stamp = time.strftime("%Y%m%dT%H%M%SZ", time.gmtime())
    path = directory / f"{task_id}.{stamp}.jsonl"
    dump_transcript_jsonl(transcript, path)
    return path
