from __future__ import annotations

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class AxiomCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    axiom: str
    passed: bool
    witness: Optional[tuple[int, ...]] = None
    detail: str = ""


class AxiomReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int
    biquandle_hash: str
    checks: list[AxiomCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[AxiomCheck]:
        return [check for check in self.checks if not check.passed]


class ColoringsReport(BaseModel):
    diagram: str
    biquandle_hash: str
    semiarcs: int
    count: int
    colorings: list[tuple[int, ...]]


class BracketTerm(BaseModel):
    """One graph of a bracket value with its coefficient."""

    code: str
    vertices: int
    coefficient: str
    normal_form: Optional[str] = None
    mod_p_only: bool = False


class BracketReport(BaseModel):
    diagram: str
    biquandle_hash: str
    coloring: tuple[int, ...]
    variant: int
    delta: Optional[int]
    reduced: bool
    terms: list[BracketTerm]


class BracketMultisetReport(BaseModel):
    """Bracket values of one diagram over a set of colorings."""

    diagram: str
    biquandle_hash: str
    variant: int
    delta: Optional[int]
    values: list[BracketReport]


class GroebnerReport(BaseModel):
    cache_key: str
    manifest: dict[str, object]
    generators: int
    basis_size: int
    cache_hit: bool
    seconds: float
    cache_path: Optional[str] = None


class Verdict(str, Enum):
    MINIMAL = "Minimal"
    LOWER_BOUND_ONLY = "LowerBoundOnly"
    NO_CERTIFICATE = "NoCertificate"


class LeadingTerm(BaseModel):
    model_config = ConfigDict(frozen=True)

    code: str
    vertices: int
    coefficient: str
    normal_form: str
    one_irreducible: bool
    two_irreducible: bool


class ColoringLeadingTerms(BaseModel):
    coloring: tuple[int, ...]
    leading: list[LeadingTerm]
    mod_p_only: list[str] = Field(default_factory=list)


class MinimalityCertificate(BaseModel):
    diagram: str
    crossing_count: int
    biquandle_hash: str
    variant: int
    delta: int
    prime: int
    order: str
    transcription: str
    colorings: list[ColoringLeadingTerms]
    verdict: Verdict
    bound: Optional[int] = None
    witness: Optional[LeadingTerm] = None
    witness_coloring: Optional[tuple[int, ...]] = None

    def summary(self) -> str:
        lines = [
            f"diagram      {self.diagram}",
            f"crossings    {self.crossing_count}",
            f"biquandle    {self.biquandle_hash}",
            f"ideal        I_{self.variant}, delta={self.delta}, GF({self.prime}), {self.order}",
            f"colorings    {len(self.colorings)}",
        ]
        if self.verdict is Verdict.MINIMAL:
            lines.append(f"verdict      Minimal ({self.bound} vertices)")
        elif self.verdict is Verdict.LOWER_BOUND_ONLY:
            lines.append(f"verdict      LowerBoundOnly({self.bound})")
        else:
            lines.append("verdict      NoCertificate")
        if self.witness is not None:
            flags = (("1-irreducible", self.witness.one_irreducible), ("2-irreducible", self.witness.two_irreducible))
            irreducible = ", ".join(name for name, flag in flags if flag)
            lines.extend(
                [
                    f"coloring     {' '.join(map(str, self.witness_coloring or ()))}",
                    f"graph        {self.witness.code}",
                    f"irreducible  {irreducible or 'neither'}",
                    f"coefficient  {self.witness.coefficient}",
                    f"normal form  {self.witness.normal_form}",
                ]
            )
        return "\n".join(lines)


class FuzzFailure(BaseModel):
    case: int
    diagram: str
    move: str
    biquandle_hash: str
    variant: int
    detail: str


class FuzzReport(BaseModel):
    seed: int
    cases: int
    passed: int
    mode: str
    failures: list[FuzzFailure] = Field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures
