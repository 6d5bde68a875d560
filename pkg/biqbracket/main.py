"""Command-line entry point: ``biqbracket <command> [options]``."""

from __future__ import annotations

import sys
from typing import Optional

from biqbracket.cli_cmds.cli import parse_args, process_and_validate_cmd_args
from biqbracket.cli_cmds.console import logger
from biqbracket.errors import BracketError, UsageError


def run(argv: Optional[list[str]] = None) -> int:
    """Run one command and return its exit status: 0 success, 1 domain error, 2 usage error."""
    try:
        args = parse_args(argv)
        config = process_and_validate_cmd_args(args)
    except UsageError as e:
        logger.error(e)
        return 2
    except SystemExit as e:
        # argparse exits on --help, --version and unknown flags
        return e.code if isinstance(e.code, int) else 0
    try:
        status: int = args.func(config)
    except BracketError as e:
        logger.error(e)
        return 1
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return 1
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
