from __future__ import annotations

import logging
import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ValidationError, field_validator, model_validator
from sympy import isprime

from biqbracket.cli_cmds import commands, logging_config
from biqbracket.cli_cmds.console import logger
from biqbracket.code_utils.config_consts import (
    DEFAULT_FUZZ_CASES,
    DEFAULT_FUZZ_MAX_CROSSINGS,
    DEFAULT_FUZZ_SEED,
    FIXTURES_DIR,
    SUPPORTED_ORDERS,
    TRANSCRIPTIONS,
)
from biqbracket.code_utils.config_parser import parse_config_file
from biqbracket.code_utils.env_utils import resolve_cache_dir
from biqbracket.errors import UsageError
from biqbracket.version import __version__ as version

NEEDS_DIAGRAM = {"colorings", "bracket", "certify"}
NEEDS_BIQUANDLE = {"check-biquandle", "colorings", "bracket", "groebner", "certify"}
_PATH_SUFFIXES = {".gauss", ".pd", ".json", ".txt"}


def resolve_input_path(text: str) -> Optional[Path]:
    """An existing file named by ``text``; ``fixtures/<name>`` also resolves inside the installed package."""
    path = Path(text).expanduser()
    if path.is_file():
        return path
    if path.parts[:1] == ("fixtures",):
        packaged = FIXTURES_DIR.joinpath(*path.parts[1:])
        if packaged.is_file():
            return packaged
    return None


def looks_like_path(text: str) -> bool:
    return "/" in text or Path(text).suffix.lower() in _PATH_SUFFIXES


class RunConfig(BaseModel):
    """Validated settings of one command: flags over ``[tool.biqbracket]`` over built-in defaults."""

    command: Literal["check-biquandle", "colorings", "bracket", "groebner", "certify", "invariance-fuzz"]
    diagram: Optional[str] = None
    diagram_path: Optional[Path] = None
    biquandle: Optional[Path] = None
    variant: Optional[int] = None
    delta: Optional[int] = 1
    prime: int
    order: str
    cache_dir: Path
    output_format: Literal["json", "text"]
    jobs: int
    transcription: str
    coloring: Optional[tuple[int, ...]] = None
    seed: int = DEFAULT_FUZZ_SEED
    cases: int = DEFAULT_FUZZ_CASES
    max_crossings: int = DEFAULT_FUZZ_MAX_CROSSINGS
    mode: Literal["ideal", "evaluation"] = "ideal"

    @field_validator("prime")
    @classmethod
    def prime_is_prime(cls, value: int) -> int:
        if not isprime(value):
            msg = f"--prime {value} is not a prime"
            raise ValueError(msg)
        return value

    @field_validator("variant")
    @classmethod
    def variant_is_known(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value not in (1, 2):
            msg = f"--variant must be 1 or 2, got {value}"
            raise ValueError(msg)
        return value

    @field_validator("jobs", "cases")
    @classmethod
    def at_least_one(cls, value: int) -> int:
        if value < 1:
            msg = f"expected a positive count, got {value}"
            raise ValueError(msg)
        return value

    @field_validator("order")
    @classmethod
    def order_is_supported(cls, value: str) -> str:
        if value not in SUPPORTED_ORDERS:
            msg = f"--order must be one of {', '.join(SUPPORTED_ORDERS)}"
            raise ValueError(msg)
        return value

    @field_validator("transcription")
    @classmethod
    def transcription_is_known(cls, value: str) -> str:
        if value not in TRANSCRIPTIONS:
            msg = f"--transcription must be one of {', '.join(TRANSCRIPTIONS)}"
            raise ValueError(msg)
        return value

    @field_validator("biquandle")
    @classmethod
    def biquandle_exists(cls, value: Optional[Path]) -> Optional[Path]:
        if value is not None and not value.is_file():
            msg = f"Biquandle file {value} does not exist"
            raise ValueError(msg)
        return value

    @model_validator(mode="after")
    def inputs_match_command(self) -> RunConfig:
        if self.command in NEEDS_DIAGRAM and self.diagram is None and self.diagram_path is None:
            msg = f"{self.command} needs --diagram"
            raise ValueError(msg)
        if self.command in NEEDS_BIQUANDLE and self.biquandle is None:
            msg = f"{self.command} needs --biquandle"
            raise ValueError(msg)
        if self.delta is None and self.command in {"groebner", "certify"}:
            msg = f"--symbolic-delta is only available for brackets, not for {self.command}"
            raise ValueError(msg)
        if self.variant is None and self.command != "invariance-fuzz":
            self.variant = 2
        return self


def _common_arguments() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--config-file", type=str, help="Path to the pyproject.toml with a [tool.biqbracket] block.")
    common.add_argument("-v", "--verbose", action="store_true", help="Print verbose debug logs")
    common.add_argument("--format", dest="output_format", choices=["json", "text"], help="Report format")
    common.add_argument("--jobs", type=int, help="Worker threads for Gröbner bases and brackets")
    common.add_argument("--prime", type=int, help="Characteristic of the field Gröbner bases are computed over")
    common.add_argument("--order", choices=SUPPORTED_ORDERS, help="Monomial order")
    common.add_argument("--transcription", choices=TRANSCRIPTIONS, help="Reading of the two ambiguous R3 terms")
    common.add_argument("--cache-dir", type=str, help="Directory of the Gröbner basis cache")
    return common


def _input_arguments(parser: ArgumentParser, *, diagram: bool, variant: bool) -> None:
    if diagram:
        parser.add_argument(
            "--diagram", type=str, help="Signed Gauss code, or a .gauss/.pd file; fixtures/<name> is always found"
        )
    parser.add_argument("--biquandle", type=str, help="Biquandle as JSON or plain-text operation tables")
    if variant:
        parser.add_argument("--variant", type=int, choices=[1, 2], help="Graph relations: 1 (R2) or 2 (R1 and R2)")
        parser.add_argument("--delta", type=int, help="Value δ is specialized to")


def build_parser() -> ArgumentParser:
    common = _common_arguments()
    parser = ArgumentParser(prog="biqbracket")
    parser.add_argument("--version", action="store_true", help="Print the version of biqbracket")
    subparsers = parser.add_subparsers(dest="command", help="Sub-commands")

    check_parser = subparsers.add_parser("check-biquandle", parents=[common], help="Verify the biquandle axioms.")
    _input_arguments(check_parser, diagram=False, variant=False)
    check_parser.set_defaults(func=commands.check_biquandle)

    colorings_parser = subparsers.add_parser("colorings", parents=[common], help="List the colorings of a diagram.")
    _input_arguments(colorings_parser, diagram=True, variant=False)
    colorings_parser.set_defaults(func=commands.colorings)

    bracket_parser = subparsers.add_parser("bracket", parents=[common], help="Compute bracket values.")
    _input_arguments(bracket_parser, diagram=True, variant=True)
    bracket_parser.add_argument("--symbolic-delta", action="store_true", help="Keep δ as a variable")
    bracket_parser.add_argument("--coloring", type=str, help="One coloring, e.g. '1 2 3'; default is every coloring")
    bracket_parser.set_defaults(func=commands.bracket)

    groebner_parser = subparsers.add_parser("groebner", parents=[common], help="Build and cache a Gröbner basis.")
    _input_arguments(groebner_parser, diagram=False, variant=True)
    groebner_parser.set_defaults(func=commands.groebner)

    certify_parser = subparsers.add_parser("certify", parents=[common], help="Certify that a diagram is minimal.")
    _input_arguments(certify_parser, diagram=True, variant=True)
    certify_parser.set_defaults(func=commands.certify)

    fuzz_parser = subparsers.add_parser(
        "invariance-fuzz", parents=[common], help="Check invariance under random Reidemeister moves."
    )
    fuzz_parser.add_argument("--biquandle", type=str, help="Fuzz with this biquandle only")
    fuzz_parser.add_argument("--variant", type=int, choices=[1, 2], help="Fuzz one variant only")
    fuzz_parser.add_argument("--delta", type=int, help="Value δ is specialized to")
    fuzz_parser.add_argument("--seed", type=int, default=DEFAULT_FUZZ_SEED)
    fuzz_parser.add_argument("--cases", type=int, default=DEFAULT_FUZZ_CASES)
    fuzz_parser.add_argument("--max-crossings", type=int, default=DEFAULT_FUZZ_MAX_CROSSINGS)
    fuzz_parser.add_argument("--mode", choices=["ideal", "evaluation"], default="ideal")
    fuzz_parser.set_defaults(func=commands.invariance_fuzz)
    return parser


def parse_args(argv: Optional[list[str]] = None) -> Namespace:
    args: Namespace = build_parser().parse_args(argv)
    if getattr(args, "verbose", False):
        logging_config.set_level(logging.DEBUG, echo_setting=True)
    else:
        logging_config.set_level(logging.INFO, echo_setting=False)
    if args.version:
        logger.info(f"biqbracket version {version}")
        sys.exit()
    if not args.command:
        build_parser().print_usage(sys.stderr)
        msg = "A command is required"
        raise UsageError(msg)
    return args


def parse_coloring(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.replace(",", " ").split())
    except ValueError as e:
        msg = f"--coloring must be a list of integers, got {text!r}"
        raise ValueError(msg) from e


def process_and_validate_cmd_args(args: Namespace) -> RunConfig:
    """Merge flags with ``[tool.biqbracket]`` and validate; usage errors raise ``UsageError``."""
    try:
        pyproject_config, _ = parse_config_file(Path(args.config_file) if args.config_file else None)
    except ValueError as e:
        raise UsageError(str(e)) from e
    settings: dict[str, object] = {"command": args.command}
    for key in ("prime", "order", "jobs", "transcription", "output_format", "delta"):
        value = getattr(args, key, None)
        settings[key] = value if value is not None else pyproject_config["format" if key == "output_format" else key]
    settings["cache_dir"] = resolve_cache_dir(args.cache_dir or pyproject_config["cache_dir"])
    if getattr(args, "symbolic_delta", False):
        settings["delta"] = None
    if getattr(args, "variant", None) is not None:
        settings["variant"] = args.variant
    for key in ("seed", "cases", "max_crossings", "mode"):
        if getattr(args, key, None) is not None:
            settings[key] = getattr(args, key)
    try:
        if getattr(args, "coloring", None):
            settings["coloring"] = parse_coloring(args.coloring)
        diagram = getattr(args, "diagram", None)
        if diagram is not None:
            path = resolve_input_path(diagram)
            if path is not None:
                settings["diagram_path"] = path
            elif looks_like_path(diagram):
                msg = f"Diagram file {diagram} does not exist"
                raise ValueError(msg)
            else:
                settings["diagram"] = diagram
        if getattr(args, "biquandle", None) is not None:
            settings["biquandle"] = resolve_input_path(args.biquandle) or Path(args.biquandle)
        config = RunConfig.model_validate(settings)
    except (ValidationError, ValueError) as e:
        raise UsageError(str(e)) from e
    return config
