#     Copyright (c) comprehensibility-lab 2024. All Rights Reserved.
#
#     Licensed under the Apache License, Version 2.0 (the "License");
#     you may not use this file except in compliance with the License.
#     You may obtain a copy of the License at:
#         https://www.apache.org/licenses/LICENSE-2.0
#     Unless required by applicable law or agreed to in writing, software
#     distributed under the License is distributed on an "AS IS" BASIS,
#     WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
#     or implied. See the License for the specific language governing
#     permissions and limitations under the License.

import json
import logging
import os
import tempfile
from typing import Any, Optional

import numpy as np

from .constants import THREADS_ENV_VAR

logger = logging.getLogger(__name__)


def max_threads() -> int:
    """Worker cap from the environment; anything missing or invalid means 1."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        threads = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {THREADS_ENV_VAR}={raw!r}: not an integer")
        return 1
    return max(1, threads)


def derive_seed(master_seed: int, *path: int) -> int:
    """
    Derive a child seed from the master seed and a path of indices
    (stage, grid point, fold...), so results do not depend on scheduling.

    Args:
        master_seed: the run's master seed.
        path: non-negative integers identifying the unit of work.

    Returns:
        a 32-bit seed usable by numpy and scikit-learn.
    """
    sequence = np.random.SeedSequence([int(master_seed), *(int(p) for p in path)])
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def atomic_write_text(path: str, content: str) -> None:
    """
    Write content to path through a temporary file in the same directory
    and an atomic rename, so readers never observe a partial file.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(content)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def atomic_write_json(path: str, payload: Any) -> None:
    atomic_write_text(path, dumps_json(payload))


def dumps_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def format_epsilon(epsilon: Optional[float]) -> str:
    """Render epsilon for file names: 0.11 -> '0.11', None -> '0'."""
    if epsilon is None:
        return "0"
    return f"{epsilon:g}"
