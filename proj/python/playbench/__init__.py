"""Dialogue-game benchmark engine: games, scoring and leaderboards."""

import json

from . import _core
from ._core import (
    PlaybenchError,
    __version__,
    export_leaderboard,
    instantiate_prompt,
    kendall_tau,
    kendall_tau_b,
    run_cli,
    taboo_violation,
    wordle_feedback,
)

__all__ = [
    "PlaybenchError",
    "__version__",
    "episode_quality",
    "export_leaderboard",
    "generate_instances",
    "instantiate_prompt",
    "kendall_tau",
    "kendall_tau_b",
    "run_benchmark",
    "run_cli",
    "score_run",
    "taboo_violation",
    "wordle_feedback",
]


def generate_instances(game, n, seed=42, word_pool=None):
    """Instance file contents as a dict."""
    return json.loads(_core.generate_instances_json(game, n, seed, word_pool))


def episode_quality(transcript):
    """Main metric of one transcript (a dict as stored on disk)."""
    return _core.episode_quality_json(json.dumps(transcript))


def score_run(results_dir, exclude_backend_failures=False):
    """Per-model score reports of a results directory."""
    return json.loads(_core.score_run_json(str(results_dir), exclude_backend_failures))


def run_benchmark(instance_paths, models, results_dir, seed=42, language="en", jobs=1,
                  fixed_clock=False, word_pool=None):
    """Plays every pairing on every instance; returns outcome counts."""
    return json.loads(_core.run_benchmark_json(
        [str(p) for p in instance_paths], list(models), str(results_dir), seed, language, jobs,
        fixed_clock, None if word_pool is None else str(word_pool)))
