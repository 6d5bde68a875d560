from __future__ import annotations

import logging
import sys
from contextlib import contextmanager
from typing import TYPE_CHECKING, Callable

from rich.console import Console
from rich.logging import RichHandler
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn

from biqbracket.cli_cmds.logging_config import BARE_LOGGING_FORMAT

if TYPE_CHECKING:
    from collections.abc import Generator

    from rich.table import Table

# Diagnostics go to stderr; stdout carries reports only.
console = Console(stderr=True)
logging.basicConfig(
    level=logging.INFO,
    handlers=[RichHandler(rich_tracebacks=True, markup=False, console=console, show_path=False, show_time=False)],
    format=BARE_LOGGING_FORMAT,
)

logger = logging.getLogger("rich")


@contextmanager
def progress_bar(
    message: str, *, total: int | None = None, transient: bool = True
) -> Generator[Callable[..., None], None, None]:
    """Display a progress bar and yield an ``advance(completed=None, total=None, description=None)`` updater."""
    progress = Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(complete_style="cyan", finished_style="green", pulse_style="yellow"),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=console,
        transient=transient,
    )
    task = progress.add_task(message, total=total)

    def advance(completed: int | None = None, total: int | None = None, description: str | None = None) -> None:
        if completed is None:
            progress.advance(task)
        else:
            progress.update(task, completed=completed)
        if total is not None:
            progress.update(task, total=total)
        if description is not None:
            progress.update(task, description=description)

    with progress:
        yield advance


def emit_report(text: str) -> None:
    """Write a finished report to stdout; the single writer for command output."""
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    sys.stdout.flush()


def emit_table(table: Table) -> None:
    Console(file=sys.stdout, soft_wrap=True).print(table)
