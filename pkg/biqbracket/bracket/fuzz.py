from __future__ import annotations

import random
import time
from typing import TYPE_CHECKING, Literal, Optional

from biqbracket.biquandle.biquandle import biquandle_hash, load_biquandle, trivial_biquandle
from biqbracket.biquandle.colorings import enumerate_colorings
from biqbracket.bracket.bracket import bracket_multiset, evaluate_bracket, multisets_equal
from biqbracket.cli_cmds.console import logger
from biqbracket.code_utils.config_consts import (
    DEFAULT_FUZZ_MAX_CROSSINGS,
    DEFAULT_ORDER,
    DEFAULT_PRIME,
    DEFAULT_TRANSCRIPTION,
    FIXTURES_DIR,
)
from biqbracket.code_utils.time_utils import humanize_duration
from biqbracket.diagram.braids import random_braid_diagram
from biqbracket.diagram.gauss import to_gauss
from biqbracket.diagram.moves import apply_move, random_move
from biqbracket.ideals.basis import ideal_basis
from biqbracket.ideals.ideal import build_ideal
from biqbracket.models.models import FuzzFailure, FuzzReport

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from biqbracket.biquandle.biquandle import Biquandle
    from biqbracket.bracket.bracket import BracketValue
    from biqbracket.polyring.groebner import GroebnerBasis, ProgressCallback

FuzzMode = Literal["ideal", "evaluation"]


def default_fuzz_biquandles() -> list[Biquandle]:
    """X1, X2 and the trivial biquandle on three elements."""
    return [load_biquandle(FIXTURES_DIR / "X1.json"), load_biquandle(FIXTURES_DIR / "X2.json"), trivial_biquandle(3)]


def _evaluation_key(values: list[BracketValue]) -> list[tuple[object, ...]]:
    return sorted(tuple(sorted(evaluate_bracket(v).items())) for v in values)


def invariance_fuzz(
    cases: int,
    seed: int,
    *,
    mode: FuzzMode = "ideal",
    biquandles: Optional[Sequence[Biquandle]] = None,
    variants: Sequence[int] = (1, 2),
    max_crossings: int = DEFAULT_FUZZ_MAX_CROSSINGS,
    delta: int = 1,
    prime: int = DEFAULT_PRIME,
    order: str = DEFAULT_ORDER,
    cache_dir: Optional[Path] = None,
    jobs: int = 1,
    transcription: str = DEFAULT_TRANSCRIPTION,
    progress: Optional[ProgressCallback] = None,
) -> FuzzReport:
    """Apply one random Reidemeister move to random braid closures and compare the invariants on both sides.

    Every case checks coloring counts. ``mode="ideal"`` compares bracket multisets modulo I_j;
    ``mode="evaluation"`` compares them after evaluating at the point that kills both ideals.
    """
    rng = random.Random(seed)
    pool = list(biquandles) if biquandles is not None else default_fuzz_biquandles()
    bases: dict[tuple[str, int], GroebnerBasis] = {}
    failures: list[FuzzFailure] = []
    start = time.perf_counter()
    for case in range(cases):
        diagram = random_braid_diagram(rng, max_crossings)
        b = rng.choice(pool)
        variant = rng.choice(list(variants))
        move = random_move(diagram, rng)
        moved = apply_move(diagram, move)

        def fail(detail: str, case: int = case, diagram_text: str = to_gauss(diagram)) -> None:
            failures.append(
                FuzzFailure(
                    case=case,
                    diagram=diagram_text,
                    move=str(move),
                    biquandle_hash=biquandle_hash(b),
                    variant=variant,
                    detail=detail,
                )
            )

        before_count, after_count = len(enumerate_colorings(diagram, b)), len(enumerate_colorings(moved, b))
        if before_count != after_count:
            fail(f"coloring count {before_count} became {after_count}")
        elif mode == "evaluation":
            before = bracket_multiset(diagram, b, variant, None, jobs=jobs)
            after = bracket_multiset(moved, b, variant, None, jobs=jobs)
            if _evaluation_key(before) != _evaluation_key(after):
                fail("evaluated bracket multisets differ")
        else:
            key = (biquandle_hash(b), variant)
            if key not in bases:
                spec = build_ideal(b, variant, delta, transcription)
                bases[key], _ = ideal_basis(spec, prime, order, cache_dir=cache_dir, jobs=jobs)
            before = bracket_multiset(diagram, b, variant, delta, jobs=jobs)
            after = bracket_multiset(moved, b, variant, delta, jobs=jobs)
            if not multisets_equal(before, after, bases[key]):
                fail(f"bracket multisets differ modulo I_{variant}")
        if progress is not None:
            progress(case + 1, cases)
    seconds = time.perf_counter() - start
    logger.info(
        f"Invariance fuzz ({mode}): {cases - len(failures)}/{cases} cases passed in {humanize_duration(seconds)}"
    )
    for failure in failures:
        logger.debug(f"case {failure.case}: {failure.diagram} after {failure.move}: {failure.detail}")
    return FuzzReport(
        seed=seed, cases=cases, passed=cases - len(failures), mode=mode, failures=failures, seconds=seconds
    )
