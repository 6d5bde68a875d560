from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from biqbracket.biquandle.biquandle import biquandle_hash
from biqbracket.biquandle.colorings import enumerate_colorings
from biqbracket.bracket.states import StateTable, state_monomial, variable_indices
from biqbracket.cli_cmds.console import logger
from biqbracket.code_utils.config_consts import DEFAULT_ORDER, DEFAULT_PRIME, DEFAULT_TRANSCRIPTION
from biqbracket.code_utils.time_utils import humanize_duration
from biqbracket.diagram.gauss import to_gauss
from biqbracket.errors import DomainMismatchError
from biqbracket.graphs.reduction import irreducibility
from biqbracket.ideals.basis import ideal_basis
from biqbracket.ideals.ideal import ANNIHILATING_POINT, build_ideal
from biqbracket.models.models import (
    BracketReport,
    BracketTerm,
    ColoringLeadingTerms,
    LeadingTerm,
    MinimalityCertificate,
    Verdict,
)
from biqbracket.polyring.polynomial import evaluate, terms_of, to_text
from biqbracket.polyring.variables import make_ring

if TYPE_CHECKING:
    from pathlib import Path

    from sympy.polys.rings import PolyElement

    from biqbracket.biquandle.biquandle import Biquandle
    from biqbracket.biquandle.colorings import Coloring
    from biqbracket.diagram.gauss import OrientedDiagram
    from biqbracket.graphs.canonical import CanonicalCode
    from biqbracket.graphs.framed import FramedGraph
    from biqbracket.polyring.groebner import GroebnerBasis, ProgressCallback

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class BracketValue:
    """A bracket value: integer coefficients per irreducible graph, sorted by canonical code.

    ``delta`` is the value δ was specialized to, or None when δ stays a ring variable.
    """

    terms: tuple[tuple[CanonicalCode, PolyElement], ...]
    variant: int
    delta: Optional[int]
    diagram: str
    coloring: tuple[int, ...]
    biquandle_hash: str
    graphs: dict[CanonicalCode, FramedGraph] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def coefficient(self, code: CanonicalCode) -> Optional[PolyElement]:
        return next((p for c, p in self.terms if c == code), None)

    @property
    def codes(self) -> list[CanonicalCode]:
        return [code for code, _ in self.terms]


def _check_table(table: StateTable, diagram: OrientedDiagram, variant: int) -> None:
    if table.variant != variant or table.diagram != diagram:
        msg = f"State table was built for variant {table.variant} of another diagram"
        raise DomainMismatchError(msg)


def bracket(
    diagram: OrientedDiagram,
    coloring: Coloring,
    b: Biquandle,
    variant: int,
    delta: Optional[int] = 1,
    *,
    table: Optional[StateTable] = None,
) -> BracketValue:
    """Sum the states of ``diagram`` under ``coloring``, grouped by the normal form of each state graph."""
    if table is None:
        table = StateTable(diagram, variant)
    else:
        _check_table(table, diagram, variant)
    ring = make_ring(b.m)
    indices = variable_indices(diagram, coloring, b)
    delta_index = ring.ngens - 1
    sums: dict[CanonicalCode, dict[Monomial, int]] = {}
    graphs: dict[CanonicalCode, FramedGraph] = {}
    for entry in table.entries:
        monom = list(state_monomial(indices, entry.choices, ring.ngens))
        factor = 1
        if delta is None:
            monom[delta_index] += entry.delta_exponent
        else:
            factor = delta**entry.delta_exponent
            if not factor:
                continue
        per_code = sums.setdefault(entry.code, {})
        key = tuple(monom)
        per_code[key] = per_code.get(key, 0) + factor
        graphs.setdefault(entry.code, entry.graph)
    terms = []
    for code in sorted(sums):
        poly = ring.from_dict({m: c for m, c in sums[code].items() if c})
        if poly:
            terms.append((code, poly))
    return BracketValue(
        terms=tuple(terms),
        variant=variant,
        delta=delta,
        diagram=to_gauss(diagram),
        coloring=coloring.colors,
        biquandle_hash=biquandle_hash(b),
        graphs={code: graphs[code] for code, _ in terms},
    )


def bracket_multiset(
    diagram: OrientedDiagram,
    b: Biquandle,
    variant: int,
    delta: Optional[int] = 1,
    *,
    jobs: int = 1,
    table: Optional[StateTable] = None,
) -> list[BracketValue]:
    """One bracket value per coloring, in coloring order. No colorings gives the empty multiset."""
    colorings = enumerate_colorings(diagram, b)
    if not colorings:
        return []
    if table is None:
        table = StateTable(diagram, variant)
    else:
        _check_table(table, diagram, variant)
    if jobs <= 1:
        return [bracket(diagram, f, b, variant, delta, table=table) for f in colorings]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda f: bracket(diagram, f, b, variant, delta, table=table), colorings))


def _check_basis(value: BracketValue, basis: GroebnerBasis) -> None:
    if value.delta is None:
        msg = "A bracket with symbolic δ cannot be reduced modulo an ideal; specialize δ first"
        raise DomainMismatchError(msg)
    manifest = basis.manifest
    if manifest is None:
        return
    if manifest.get("delta") != value.delta:
        msg = f"Bracket has δ={value.delta} but the basis was computed for δ={manifest.get('delta')}"
        raise DomainMismatchError(msg)
    if manifest.get("variant") != value.variant:
        msg = f"Bracket of variant {value.variant} cannot be reduced modulo I_{manifest.get('variant')}"
        raise DomainMismatchError(msg)


def reduced_coefficient(value: BracketValue, p: PolyElement, basis: GroebnerBasis) -> PolyElement:
    _check_basis(value, basis)
    return basis.normal_form(basis.lift(p))


def multiset_key(value: BracketValue, basis: Optional[GroebnerBasis] = None) -> tuple[object, ...]:
    """Comparison key of one bracket value: exact coefficients, or their normal forms modulo ``basis``."""
    entries = []
    for code, p in value.terms:
        q = p if basis is None else reduced_coefficient(value, p, basis)
        if q:
            entries.append((code, tuple(sorted(terms_of(q)))))
    return tuple(entries)


def multisets_equal(
    first: list[BracketValue], second: list[BracketValue], basis: Optional[GroebnerBasis] = None
) -> bool:
    if len(first) != len(second):
        return False
    return sorted(multiset_key(v, basis) for v in first) == sorted(multiset_key(v, basis) for v in second)


def evaluate_bracket(value: BracketValue) -> dict[CanonicalCode, int]:
    """The value at A=D=1, B=E=-1, C=F=0, δ=2, which kills every relation of both ideals."""
    if value.delta not in (None, ANNIHILATING_POINT["delta"]):
        msg = f"Evaluation needs δ symbolic or δ={ANNIHILATING_POINT['delta']}, got δ={value.delta}"
        raise DomainMismatchError(msg)
    out = {}
    for code, p in value.terms:
        number = evaluate(p, ANNIHILATING_POINT)
        if number:
            out[code] = number
    return out


def leading_terms(value: BracketValue, basis: GroebnerBasis) -> ColoringLeadingTerms:
    """Irreducible graphs of maximal vertex count whose coefficient survives reduction modulo ``basis``.

    Graphs above that level whose coefficients reduce to zero are listed as ``mod_p_only``: zero mod p does
    not prove the coefficient vanishes over ℤ.
    """
    _check_basis(value, basis)
    levels: dict[int, list[tuple[CanonicalCode, PolyElement]]] = {}
    for code, p in value.terms:
        levels.setdefault(code.vertex_count, []).append((code, p))
    leading: list[LeadingTerm] = []
    mod_p_only: list[str] = []
    for vertices in sorted(levels, reverse=True):
        for code, p in levels[vertices]:
            remainder = basis.normal_form(basis.lift(p))
            if not remainder:
                mod_p_only.append(str(code))
                continue
            one, two = irreducibility(value.graphs[code])
            leading.append(
                LeadingTerm(
                    code=str(code),
                    vertices=vertices,
                    coefficient=to_text(p),
                    normal_form=to_text(remainder),
                    one_irreducible=one,
                    two_irreducible=two,
                )
            )
        if leading:
            break
    return ColoringLeadingTerms(coloring=value.coloring, leading=leading, mod_p_only=mod_p_only)


def bracket_report(value: BracketValue, basis: Optional[GroebnerBasis] = None) -> BracketReport:
    terms = []
    for code, p in value.terms:
        remainder = None if basis is None else reduced_coefficient(value, p, basis)
        terms.append(
            BracketTerm(
                code=str(code),
                vertices=code.vertex_count,
                coefficient=to_text(p),
                normal_form=None if remainder is None else to_text(remainder),
                mod_p_only=remainder is not None and not remainder,
            )
        )
    return BracketReport(
        diagram=value.diagram,
        biquandle_hash=value.biquandle_hash,
        coloring=value.coloring,
        variant=value.variant,
        delta=value.delta,
        reduced=basis is not None,
        terms=terms,
    )


def certify_minimality(
    diagram: OrientedDiagram,
    b: Biquandle,
    variant: int,
    delta: int = 1,
    prime: int = DEFAULT_PRIME,
    order: str = DEFAULT_ORDER,
    *,
    basis: Optional[GroebnerBasis] = None,
    cache_dir: Optional[Path] = None,
    jobs: int = 1,
    transcription: str = DEFAULT_TRANSCRIPTION,
    progress: Optional[ProgressCallback] = None,
) -> MinimalityCertificate:
    """Scan every coloring for a certified leading graph with as many vertices as the diagram has crossings."""
    if delta is None:
        msg = "Certification needs δ specialized to a number"
        raise DomainMismatchError(msg)
    start = time.perf_counter()
    if basis is None:
        spec = build_ideal(b, variant, delta, transcription)
        basis, _ = ideal_basis(spec, prime, order, cache_dir=cache_dir, jobs=jobs)
    colorings = enumerate_colorings(diagram, b)
    logger.info(f"{len(colorings)} colorings of a {diagram.crossing_count}-crossing diagram")
    table = StateTable(diagram, variant)
    per_coloring: list[ColoringLeadingTerms] = []
    witness: Optional[LeadingTerm] = None
    witness_coloring: Optional[tuple[int, ...]] = None
    for done, f in enumerate(colorings, start=1):
        result = leading_terms(bracket(diagram, f, b, variant, delta, table=table), basis)
        per_coloring.append(result)
        best = result.leading[0] if result.leading else None
        if best is not None and (witness is None or best.vertices > witness.vertices):
            witness, witness_coloring = best, result.coloring
        if progress is not None:
            progress(done, len(colorings))
    n = diagram.crossing_count
    if witness is None:
        verdict, bound = Verdict.NO_CERTIFICATE, None
    elif witness.vertices == n:
        verdict, bound = Verdict.MINIMAL, n
    else:
        verdict, bound = Verdict.LOWER_BOUND_ONLY, witness.vertices
    logger.info(f"Verdict {verdict.value} in {humanize_duration(time.perf_counter() - start)}")
    manifest = basis.manifest or {}
    return MinimalityCertificate(
        diagram=to_gauss(diagram),
        crossing_count=n,
        biquandle_hash=biquandle_hash(b),
        variant=variant,
        delta=delta,
        prime=basis.prime,
        order=basis.order,
        transcription=str(manifest.get("transcription", transcription)),
        colorings=per_coloring,
        verdict=verdict,
        bound=bound,
        witness=witness,
        witness_coloring=witness_coloring,
    )
