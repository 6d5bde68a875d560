from __future__ import annotations

import hashlib
import json
import re
from functools import lru_cache
from pathlib import Path
from typing import TYPE_CHECKING, Optional

from pydantic.dataclasses import dataclass

from biqbracket.errors import MalformedTableError
from biqbracket.models.models import AxiomCheck, AxiomReport

if TYPE_CHECKING:
    import random
    from collections.abc import Sequence

Table = tuple[tuple[int, ...], ...]

_CIRC_HEADERS = {"circ", "o", "∘", "◦"}
_STAR_HEADERS = {"star", "*", "∗"}


@dataclass(frozen=True)
class Biquandle:
    """Finite biquandle on 1..m; ``circ[x-1][y-1] = x∘y`` and ``star[x-1][y-1] = x∗y``."""

    m: int
    circ: Table
    star: Table

    def o(self, x: int, y: int) -> int:
        return self.circ[x - 1][y - 1]

    def s(self, x: int, y: int) -> int:
        return self.star[x - 1][y - 1]

    def switch(self, x: int, y: int) -> tuple[int, int]:
        """S(x, y) = (y∗x, x∘y)."""
        return self.star[y - 1][x - 1], self.circ[x - 1][y - 1]

    def alpha_inverse(self, y: int, z: int) -> int:
        """The x with x∗y = z."""
        return _inverses(self)[0][(y, z)]

    def beta_inverse(self, y: int, z: int) -> int:
        """The x with x∘y = z."""
        return _inverses(self)[1][(y, z)]

    def switch_inverse(self, z: int, w: int) -> tuple[int, int]:
        return _inverses(self)[2][(z, w)]

    @property
    def elements(self) -> range:
        return range(1, self.m + 1)


@lru_cache(maxsize=256)
def _inverses(
    b: Biquandle,
) -> tuple[dict[tuple[int, int], int], dict[tuple[int, int], int], dict[tuple[int, int], tuple[int, int]]]:
    alpha: dict[tuple[int, int], int] = {}
    beta: dict[tuple[int, int], int] = {}
    switch: dict[tuple[int, int], tuple[int, int]] = {}
    for x in b.elements:
        for y in b.elements:
            alpha.setdefault((y, b.s(x, y)), x)
            beta.setdefault((y, b.o(x, y)), x)
            switch.setdefault(b.switch(x, y), (x, y))
    return alpha, beta, switch


def make_biquandle(circ: Sequence[Sequence[int]], star: Sequence[Sequence[int]]) -> Biquandle:
    """Check table shape and entry range; the axioms are checked separately by ``verify_axioms``."""
    for name, table in (("circ", circ), ("star", star)):
        if not isinstance(table, (list, tuple)) or not all(isinstance(row, (list, tuple)) for row in table):
            msg = f"Table {name} must be a list of rows, got {table!r}"
            raise MalformedTableError(msg)
    m = len(circ)
    if m == 0:
        msg = "Biquandle tables must be non-empty"
        raise MalformedTableError(msg)
    for name, table in (("circ", circ), ("star", star)):
        if len(table) != m or any(len(row) != m for row in table):
            msg = f"Table {name} must be {m}x{m}"
            raise MalformedTableError(msg)
        for x, row in enumerate(table, start=1):
            for y, value in enumerate(row, start=1):
                if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= m:
                    msg = f"Table {name} entry ({x},{y}) = {value!r} is outside 1..{m}"
                    raise MalformedTableError(msg)
    return Biquandle(m=m, circ=tuple(map(tuple, circ)), star=tuple(map(tuple, star)))


def verify_axioms(b: Biquandle) -> AxiomReport:
    elements = b.elements
    checks = []

    r1 = next(((x,) for x in elements if b.o(x, x) != b.s(x, x)), None)
    checks.append(AxiomCheck(axiom="R1", passed=r1 is None, witness=r1, detail="x∘x = x∗x"))

    r2: Optional[tuple[int, ...]] = None
    r2_detail = "x ↦ x∘y and x ↦ x∗y are permutations"
    for y in elements:
        if len({b.o(x, y) for x in elements}) != b.m or len({b.s(x, y) for x in elements}) != b.m:
            r2 = (y,)
            break
    checks.append(AxiomCheck(axiom="R2", passed=r2 is None, witness=r2, detail=r2_detail))

    r3: Optional[tuple[int, ...]] = None
    seen: dict[tuple[int, int], tuple[int, int]] = {}
    for x in elements:
        for y in elements:
            image = b.switch(x, y)
            if image in seen:
                r3 = (*seen[image], x, y)
                break
            seen[image] = (x, y)
        if r3 is not None:
            break
    checks.append(AxiomCheck(axiom="R3", passed=r3 is None, witness=r3, detail="S(x,y) = (y∗x, x∘y) is a bijection"))

    r4: Optional[tuple[int, ...]] = None
    r4_detail = "exchange laws"
    for x in elements:
        for y in elements:
            for z in elements:
                laws = (
                    b.o(b.o(x, z), b.o(y, z)) == b.o(b.o(x, y), b.s(z, y)),
                    b.s(b.o(y, z), b.o(x, z)) == b.o(b.s(y, x), b.s(z, x)),
                    b.s(b.s(z, x), b.s(y, x)) == b.s(b.s(z, y), b.o(x, y)),
                )
                if not all(laws):
                    r4 = (x, y, z)
                    r4_detail = f"exchange law {laws.index(False) + 1} fails"
                    break
            if r4 is not None:
                break
        if r4 is not None:
            break
    checks.append(AxiomCheck(axiom="R4", passed=r4 is None, witness=r4, detail=r4_detail))

    return AxiomReport(m=b.m, biquandle_hash=biquandle_hash(b), checks=checks)


def crossing_relation(b: Biquandle, sign: int, under_in: int, over_in: int) -> tuple[int, int]:
    """Outgoing (under, over) colors from the incoming ones.

    Positive crossings are labelled (over_in, under_out) and S sends that label to (under_in, over_out);
    negative crossings are labelled (over_out, under_in) and S sends it to (under_out, over_in).
    """
    if sign > 0:
        under_out = b.alpha_inverse(over_in, under_in)
        return under_out, b.o(over_in, under_out)
    over_out = b.beta_inverse(under_in, over_in)
    return b.s(under_in, over_out), over_out


def crossing_colors(b: Biquandle, sign: int, label: tuple[int, int]) -> tuple[int, int, int, int]:
    """(over_in, under_in, over_out, under_out) around a crossing with the given label."""
    x, y = label
    if sign > 0:
        return x, b.s(y, x), b.o(x, y), y
    return b.o(x, y), y, x, b.s(y, x)


def crossing_label(sign: int, over_in: int, under_in: int, over_out: int, under_out: int) -> tuple[int, int]:
    return (over_in, under_out) if sign > 0 else (over_out, under_in)


def biquandle_hash(b: Biquandle) -> str:
    payload = json.dumps({"m": b.m, "circ": b.circ, "star": b.star}, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def biquandle_to_json(b: Biquandle) -> str:
    return json.dumps({"m": b.m, "circ": [list(r) for r in b.circ], "star": [list(r) for r in b.star]}, indent=2)


def parse_biquandle(text: str) -> Biquandle:
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            msg = f"Invalid biquandle JSON: {e}"
            raise MalformedTableError(msg) from e
        if not isinstance(data, dict) or "circ" not in data or "star" not in data:
            msg = "Biquandle JSON needs 'circ' and 'star' fields"
            raise MalformedTableError(msg)
        b = make_biquandle(data["circ"], data["star"])
        if "m" in data and data["m"] != b.m:
            msg = f"Field m = {data['m']} disagrees with {b.m}x{b.m} tables"
            raise MalformedTableError(msg)
        return b
    return _parse_matrix_text(stripped)


def _parse_matrix_text(text: str) -> Biquandle:
    tables: dict[str, list[list[int]]] = {}
    current: Optional[str] = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = line.rstrip(":").strip().lower()
        if header in _CIRC_HEADERS:
            current = "circ"
            tables[current] = []
        elif header in _STAR_HEADERS:
            current = "star"
            tables[current] = []
        elif re.fullmatch(r"m\s*[=:]?\s*\d+", header):
            continue
        elif current is None:
            msg = f"Matrix row {line!r} appears before a 'circ' or 'star' header"
            raise MalformedTableError(msg)
        else:
            try:
                tables[current].append([int(v) for v in re.split(r"[\s,]+", line) if v])
            except ValueError as e:
                msg = f"Cannot read matrix row {line!r}"
                raise MalformedTableError(msg) from e
    if set(tables) != {"circ", "star"}:
        msg = "Plain-text biquandles need both a 'circ' and a 'star' section"
        raise MalformedTableError(msg)
    return make_biquandle(tables["circ"], tables["star"])


def load_biquandle(path: Path) -> Biquandle:
    return parse_biquandle(Path(path).read_text(encoding="utf8"))


def trivial_biquandle(m: int) -> Biquandle:
    table = tuple(tuple(x for _ in range(m)) for x in range(1, m + 1))
    return Biquandle(m=m, circ=table, star=table)


def permutation_biquandle(sigma: Sequence[int]) -> Biquandle:
    """x∘y = x∗y = σ(x) for a permutation σ of 1..m given as its image list."""
    m = len(sigma)
    if sorted(sigma) != list(range(1, m + 1)):
        msg = f"{list(sigma)} is not a permutation of 1..{m}"
        raise MalformedTableError(msg)
    table = tuple(tuple(sigma[x] for _ in range(m)) for x in range(m))
    return Biquandle(m=m, circ=table, star=table)


def affine_biquandle(m: int, a: int, b: int, c: int, d: int) -> Biquandle:
    """x∗y = a·x + b·y and x∘y = c·x + d·y on ℤ/m, shifted to 1..m. Not necessarily a biquandle."""
    star = tuple(tuple((a * x + b * y) % m + 1 for y in range(m)) for x in range(m))
    circ = tuple(tuple((c * x + d * y) % m + 1 for y in range(m)) for x in range(m))
    return Biquandle(m=m, circ=circ, star=star)


def random_biquandle(rng: random.Random, max_m: int = 4) -> Biquandle:
    while True:
        m = rng.randint(1, max_m)
        if rng.random() < 0.5:
            sigma = list(range(1, m + 1))
            rng.shuffle(sigma)
            candidate = permutation_biquandle(sigma)
        else:
            candidate = affine_biquandle(m, *(rng.randrange(m) for _ in range(4)))
        if verify_axioms(candidate).passed:
            return candidate


def is_homomorphism(f: Sequence[int], source: Biquandle, target: Biquandle) -> bool:
    """``f[x-1]`` is the image of x; checks f(x∗y) = f(x)∗f(y) and f(x∘y) = f(x)∘f(y)."""
    if len(f) != source.m or any(not 1 <= v <= target.m for v in f):
        return False
    return all(
        f[source.s(x, y) - 1] == target.s(f[x - 1], f[y - 1]) and f[source.o(x, y) - 1] == target.o(f[x - 1], f[y - 1])
        for x in source.elements
        for y in source.elements
    )
