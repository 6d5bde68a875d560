from __future__ import annotations

from typing import TYPE_CHECKING

from pydantic import BaseModel
from rich.table import Table

from biqbracket.biquandle.biquandle import biquandle_hash, load_biquandle, verify_axioms
from biqbracket.biquandle.colorings import Coloring, enumerate_colorings
from biqbracket.bracket.bracket import bracket as bracket_value
from biqbracket.bracket.bracket import bracket_multiset, bracket_report, certify_minimality
from biqbracket.bracket.fuzz import invariance_fuzz as run_invariance_fuzz
from biqbracket.bracket.states import StateTable
from biqbracket.cli_cmds.console import emit_report, emit_table, logger, progress_bar
from biqbracket.diagram.gauss import parse_gauss, parse_pd, semiarc_count, to_gauss
from biqbracket.either import Failure, Result, Success, both
from biqbracket.errors import BracketError
from biqbracket.ideals.basis import ideal_basis, lookup_basis
from biqbracket.ideals.ideal import build_ideal
from biqbracket.models.models import BracketMultisetReport, ColoringsReport

if TYPE_CHECKING:
    from biqbracket.biquandle.biquandle import Biquandle
    from biqbracket.cli_cmds.cli import RunConfig
    from biqbracket.diagram.gauss import OrientedDiagram

# Fields that change between identical runs stay out of JSON reports.
_VOLATILE = {"seconds"}


def load_diagram_input(config: RunConfig) -> Result[str, OrientedDiagram]:
    try:
        if config.diagram_path is not None:
            text = config.diagram_path.read_text(encoding="utf8")
            if config.diagram_path.suffix.lower() == ".pd":
                return Success(parse_pd(text))
            return Success(parse_gauss(text))
        return Success(parse_gauss(config.diagram or ""))
    except (OSError, BracketError) as e:
        return Failure(f"Cannot read the diagram: {e}")


def load_biquandle_input(config: RunConfig, *, require_valid: bool = True) -> Result[str, Biquandle]:
    if config.biquandle is None:
        return Failure("No biquandle given")
    try:
        b = load_biquandle(config.biquandle)
    except (OSError, BracketError) as e:
        return Failure(f"Cannot read the biquandle: {e}")
    if require_valid:
        report = verify_axioms(b)
        if not report.passed:
            failed = ", ".join(f"{check.axiom} at {check.witness}" for check in report.failures)
            return Failure(f"{config.biquandle} is not a biquandle: {failed}")
    return Success(b)


def _emit_json(model: BaseModel) -> None:
    emit_report(model.model_dump_json(indent=2, exclude=_VOLATILE))


def check_biquandle(config: RunConfig) -> int:
    loaded = load_biquandle_input(config, require_valid=False)
    if not loaded.is_successful():
        logger.error(loaded.failure())
        return 1
    report = verify_axioms(loaded.unwrap())
    if config.output_format == "json":
        _emit_json(report)
    else:
        table = Table(title=f"Biquandle {report.biquandle_hash} (m = {report.m})")
        for column in ("axiom", "status", "witness", "checked"):
            table.add_column(column)
        for check in report.checks:
            witness = "" if check.witness is None else " ".join(map(str, check.witness))
            table.add_row(check.axiom, "ok" if check.passed else "FAILED", witness, check.detail)
        emit_table(table)
        emit_report("valid biquandle" if report.passed else "not a biquandle")
    return 0 if report.passed else 1


def colorings(config: RunConfig) -> int:
    loaded = both(load_diagram_input(config), load_biquandle_input(config))
    if not loaded.is_successful():
        logger.error(loaded.failure())
        return 1
    d, biq = loaded.unwrap()
    found = enumerate_colorings(d, biq)
    report = ColoringsReport(
        diagram=to_gauss(d),
        biquandle_hash=biquandle_hash(biq),
        semiarcs=semiarc_count(d),
        count=len(found),
        colorings=[f.colors for f in found],
    )
    if config.output_format == "json":
        _emit_json(report)
    else:
        emit_report("\n".join([str(report.count), *(str(f) for f in found)]))
    return 0


def bracket(config: RunConfig) -> int:
    loaded = both(load_diagram_input(config), load_biquandle_input(config))
    if not loaded.is_successful():
        logger.error(loaded.failure())
        return 1
    d, biq = loaded.unwrap()
    assert config.variant is not None
    basis = None
    if config.delta is not None:
        spec = build_ideal(biq, config.variant, config.delta, config.transcription)
        basis = lookup_basis(spec, config.prime, config.order, cache_dir=config.cache_dir)
        if basis is None:
            logger.info("No cached Gröbner basis; coefficients are shown unreduced (run `groebner` first)")
    if config.coloring is not None:
        values = [bracket_value(d, Coloring(colors=config.coloring), biq, config.variant, config.delta)]
    else:
        table = StateTable(d, config.variant)
        values = bracket_multiset(d, biq, config.variant, config.delta, jobs=config.jobs, table=table)
    reports = [bracket_report(v, basis) for v in values]
    if config.output_format == "json":
        _emit_json(
            BracketMultisetReport(
                diagram=to_gauss(d),
                biquandle_hash=biquandle_hash(biq),
                variant=config.variant,
                delta=config.delta,
                values=reports,
            )
        )
        return 0
    if not reports:
        emit_report("no colorings")
    for report in reports:
        title = f"coloring {' '.join(map(str, report.coloring))}"
        table = Table(title=title)
        for column in ("graph", "vertices", "coefficient", *(("normal form",) if report.reduced else ())):
            table.add_column(column)
        for term in report.terms:
            row = [term.code, str(term.vertices), term.coefficient]
            if report.reduced:
                row.append(f"{term.normal_form} (mod p only)" if term.mod_p_only else str(term.normal_form))
            table.add_row(*row)
        emit_table(table)
    return 0


def groebner(config: RunConfig) -> int:
    b = load_biquandle_input(config)
    if not b.is_successful():
        logger.error(b.failure())
        return 1
    assert config.variant is not None
    spec = build_ideal(b.unwrap(), config.variant, config.delta, config.transcription)
    with progress_bar(f"Gröbner basis of I_{config.variant}") as advance:
        _, report = ideal_basis(
            spec, config.prime, config.order, cache_dir=config.cache_dir, jobs=config.jobs, progress=advance
        )
    if config.output_format == "json":
        _emit_json(report)
    else:
        emit_report(
            "\n".join(
                [
                    f"ideal        I_{config.variant}, delta={config.delta}, GF({config.prime}), {config.order}",
                    f"generators   {report.generators} ({spec.raw_count} before removing duplicates)",
                    f"basis        {report.basis_size} elements",
                    f"cache        {'hit' if report.cache_hit else 'computed'} {report.cache_path or ''}".rstrip(),
                    f"key          {report.cache_key}",
                ]
            )
        )
    return 0


def certify(config: RunConfig) -> int:
    loaded = both(load_diagram_input(config), load_biquandle_input(config))
    if not loaded.is_successful():
        logger.error(loaded.failure())
        return 1
    assert config.variant is not None
    assert config.delta is not None
    d, biq = loaded.unwrap()
    spec = build_ideal(biq, config.variant, config.delta, config.transcription)
    with progress_bar(f"Gröbner basis of I_{config.variant}") as advance:
        basis, _ = ideal_basis(
            spec, config.prime, config.order, cache_dir=config.cache_dir, jobs=config.jobs, progress=advance
        )
    with progress_bar("Scanning colorings") as advance:
        certificate = certify_minimality(
            d,
            biq,
            config.variant,
            config.delta,
            config.prime,
            config.order,
            basis=basis,
            transcription=config.transcription,
            progress=advance,
        )
    if config.output_format == "json":
        _emit_json(certificate)
    else:
        emit_report(certificate.summary())
    return 0


def invariance_fuzz(config: RunConfig) -> int:
    biquandles = None
    if config.biquandle is not None:
        b = load_biquandle_input(config)
        if not b.is_successful():
            logger.error(b.failure())
            return 1
        biquandles = [b.unwrap()]
    with progress_bar("Invariance fuzz", total=config.cases) as advance:
        report = run_invariance_fuzz(
            config.cases,
            config.seed,
            mode=config.mode,
            biquandles=biquandles,
            variants=(1, 2) if config.variant is None else (config.variant,),
            max_crossings=config.max_crossings,
            delta=config.delta if config.delta is not None else 1,
            prime=config.prime,
            order=config.order,
            cache_dir=config.cache_dir,
            jobs=config.jobs,
            transcription=config.transcription,
            progress=advance,
        )
    if config.output_format == "json":
        _emit_json(report)
    else:
        lines = [f"{report.passed}/{report.cases} cases passed (mode {report.mode}, seed {report.seed})"]
        lines.extend(
            f"case {f.case}: {f.diagram} after {f.move} [{f.biquandle_hash}, variant {f.variant}]: {f.detail}"
            for f in report.failures
        )
        emit_report("\n".join(lines))
    return 0 if report.ok else 1
