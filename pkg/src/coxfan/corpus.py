"""The five standard test fans, as builders and as shipped JSON fixtures.

The fixture directory defaults to the package's own ``corpus`` folder and
can be overridden with the ``COXFAN_CORPUS_DIR`` environment variable.
"""

from __future__ import annotations

import os
from pathlib import Path

from .polyfan import Fan, build_fan

CORPUS_ENV_VAR = "COXFAN_CORPUS_DIR"

_SPECS = {
    "p2": {
        "rank": 2,
        "rays": [[1, 0], [0, 1], [-1, -1]],
        "max_cones": [[0, 1], [1, 2], [2, 0]],
    },
    "p1xp1": {
        "rank": 2,
        "rays": [[1, 0], [-1, 0], [0, 1], [0, -1]],
        "max_cones": [[0, 2], [2, 1], [1, 3], [3, 0]],
    },
    "p112": {
        "rank": 2,
        "rays": [[1, 0], [0, 1], [-1, -2]],
        "max_cones": [[0, 1], [1, 2], [2, 0]],
    },
    "quadric_cone": {
        "rank": 3,
        "rays": [[1, 0, 0], [0, 1, 0], [1, 0, 1], [0, 1, 1]],
        "max_cones": [[0, 1, 2, 3]],
    },
    "three_rays": {
        "rank": 2,
        "rays": [[1, 0], [0, 1], [1, 1]],
        "max_cones": [[0], [1], [2]],
    },
}

CORPUS_NAMES = tuple(sorted(_SPECS))


def corpus_dir() -> Path:
    override = os.environ.get(CORPUS_ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).parent / "corpus"


def fan_spec(name: str) -> dict:
    return {k: [list(x) for x in v] if isinstance(v, list) else v
            for k, v in _SPECS[name].items()}


def build(name: str) -> Fan:
    spec = _SPECS[name]
    return build_fan(
        spec["rank"],
        [tuple(r) for r in spec["rays"]],
        spec["max_cones"],
    )


def fixture_path(name: str) -> Path:
    return corpus_dir() / f"{name}.json"
