from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Optional

CACHE_DIR_ENV_VAR = "BIQBRACKET_CACHE_DIR"


@lru_cache(maxsize=1)
def get_cache_dir_override() -> Optional[Path]:
    cache_dir = os.environ.get(CACHE_DIR_ENV_VAR)
    if not cache_dir:
        return None
    path = Path(cache_dir).expanduser()
    if path.exists() and not path.is_dir():
        msg = f"{CACHE_DIR_ENV_VAR} points to {path}, which exists and is not a directory."
        raise OSError(msg)
    return path


def default_cache_dir() -> Path:
    return Path.home() / ".cache" / "biqbracket"


def resolve_cache_dir(configured: str | Path | None = None) -> Path:
    """Environment override first, then the configured directory, then the per-user default."""
    override = get_cache_dir_override()
    if override is not None:
        return override
    if configured:
        return Path(configured).expanduser()
    return default_cache_dir()
