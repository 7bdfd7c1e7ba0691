"""Multi-expert review decision engine."""

import json

from ._core import (
    RevdecideError,
    attention_weights,
    level_to_value,
    rank,
    run_corpus,
    run_fixtures,
    textual_evaluation,
    validate_corpus,
)

__all__ = [
    "RevdecideError",
    "attention_weights",
    "level_to_value",
    "rank",
    "run_corpus",
    "run_fixtures",
    "textual_evaluation",
    "validate_corpus",
    "run_fixtures_report",
]


def run_fixtures_report(directory, scenario="combined", config=None):
    """Run a fixture scenario and return the parsed JSON report."""
    config_json = json.dumps(config) if config is not None else None
    return json.loads(run_fixtures(str(directory), scenario, "json", config_json))
