from __future__ import annotations

from pathlib import Path
from typing import Any, Optional

import tomlkit

from biqbracket.code_utils.config_consts import (
    DEFAULT_DELTA,
    DEFAULT_JOBS,
    DEFAULT_ORDER,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_PRIME,
    DEFAULT_TRANSCRIPTION,
    SUPPORTED_ORDERS,
    TRANSCRIPTIONS,
)


def find_pyproject_toml(config_file: Path | None = None) -> Optional[Path]:
    if config_file is not None:
        config_file = Path(config_file)
        if config_file.suffix.lower() != ".toml":
            msg = f"Config file {config_file} is not a valid toml file. Please recheck the path to pyproject.toml"
            raise ValueError(msg)
        if not config_file.exists():
            msg = f"Config file {config_file} does not exist. Please recheck the path to pyproject.toml"
            raise ValueError(msg)
        return config_file
    dir_path = Path.cwd()
    while dir_path != dir_path.parent:
        config_file = dir_path / "pyproject.toml"
        if config_file.exists():
            return config_file
        dir_path = dir_path.parent
    return None


def parse_config_file(config_file_path: Path | None = None) -> tuple[dict[str, Any], Optional[Path]]:
    """Read the ``[tool.biqbracket]`` block, filling defaults for every missing key.

    Keys are returned with hyphens replaced by underscores.
    """
    found = find_pyproject_toml(config_file_path)
    config: dict[str, Any] = {}
    if found is not None:
        try:
            with found.open("rb") as f:
                data = tomlkit.parse(f.read())
        except tomlkit.exceptions.ParseError as e:
            msg = f"Error while parsing the config file {found}. Please recheck the file for syntax errors. Error: {e}"
            raise ValueError(msg) from e
        tool = data.get("tool", {})
        block = tool.get("biqbracket", {}) if isinstance(tool, dict) else {}
        config = dict(block.unwrap()) if hasattr(block, "unwrap") else dict(block)

    int_keys = {"prime": DEFAULT_PRIME, "delta": DEFAULT_DELTA, "jobs": DEFAULT_JOBS}
    str_keys = {"order": DEFAULT_ORDER, "format": DEFAULT_OUTPUT_FORMAT, "transcription": DEFAULT_TRANSCRIPTION}
    path_keys = {"cache-dir"}

    for key, default in int_keys.items():
        config[key] = int(config[key]) if key in config else default
    for key, default in str_keys.items():
        config[key] = str(config[key]) if key in config else default
    for key in path_keys:
        if key in config and found is not None:
            config[key] = str((found.parent / Path(str(config[key])).expanduser()).resolve())
        else:
            config[key] = None

    if config["order"] not in SUPPORTED_ORDERS:
        msg = f"In pyproject.toml, 'order' must be one of {', '.join(SUPPORTED_ORDERS)}; found {config['order']!r}."
        raise ValueError(msg)
    if config["transcription"] not in TRANSCRIPTIONS:
        msg = f"In pyproject.toml, 'transcription' must be one of {', '.join(TRANSCRIPTIONS)}."
        raise ValueError(msg)
    if config["format"] not in {"json", "text"}:
        msg = "In pyproject.toml, 'format' must be 'json' or 'text'."
        raise ValueError(msg)

    for key in list(config.keys()):
        if "-" in key:
            config[key.replace("-", "_")] = config.pop(key)
    return config, found
