from __future__ import annotations

import heapq
import time
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from operator import add, sub
from typing import TYPE_CHECKING, Any, Callable, Optional

from pydantic import BaseModel, ConfigDict
from sympy.polys.rings import PolyElement, PolyRing

from biqbracket.cli_cmds.console import logger
from biqbracket.code_utils.time_utils import humanize_duration
from biqbracket.errors import DomainMismatchError
from biqbracket.polyring.polynomial import coefficient, prime_field_ring, to_prime_field, to_text
from biqbracket.polyring.variables import ring_order, ring_prime

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

Monomial = tuple[int, ...]
Terms = dict[Monomial, int]
ProgressCallback = Callable[[int, int], None]


def order_key(order: str) -> Callable[[Monomial], tuple[int, ...]]:
    """Sort key under which larger monomials compare greater."""
    if order == "grevlex":
        return lambda m: (sum(m), *(-e for e in reversed(m)))
    if order == "grlex":
        return lambda m: (sum(m), *m)
    if order == "lex":
        return lambda m: m
    msg = f"Unsupported monomial order {order!r}"
    raise DomainMismatchError(msg)


def _heap_key(order: str) -> Callable[[Monomial], tuple[int, ...]]:
    # Negated order key, so heapq pops the largest monomial first.
    if order == "grevlex":
        return lambda m: (-sum(m), *reversed(m))
    if order == "grlex":
        return lambda m: (-sum(m), *(-e for e in m))
    return lambda m: tuple(-e for e in m)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def _support(m: Monomial) -> int:
    mask = 0
    for i, e in enumerate(m):
        if e:
            mask |= 1 << i
    return mask


class _Poly:
    """A monic polynomial of the engine: dense exponent tuples, integer coefficients mod p."""

    __slots__ = ("lm", "mask", "sugar", "tail", "terms")

    def __init__(self, terms: Terms, lm: Monomial, sugar: int) -> None:
        self.terms = terms
        self.lm = lm
        self.mask = _support(lm)
        self.sugar = sugar
        self.tail = [(m, c) for m, c in terms.items() if m != lm]


def _monic(
    terms: Terms, key: Callable[[Monomial], tuple[int, ...]], prime: int, sugar: Optional[int] = None
) -> _Poly:
    lm = max(terms, key=key)
    inverse = pow(terms[lm], -1, prime)
    scaled = {m: c * inverse % prime for m, c in terms.items()}
    return _Poly(scaled, lm, max(map(sum, terms)) if sugar is None else sugar)


class _Reducer:
    """Full reduction against a list of monic polynomials, with a divisor cache keyed by monomial."""

    def __init__(self, order: str, prime: int) -> None:
        self.prime = prime
        self.heap_key = _heap_key(order)
        self.basis: list[_Poly] = []
        self._divisors: dict[Monomial, Optional[_Poly]] = {}

    def reset(self, basis: Iterable[_Poly]) -> None:
        self.basis = list(basis)
        self._divisors = {}

    def divisor(self, m: Monomial) -> Optional[_Poly]:
        try:
            return self._divisors[m]
        except KeyError:
            pass
        mask = _support(m)
        found = next((g for g in self.basis if not g.mask & ~mask and _divides(g.lm, m)), None)
        self._divisors[m] = found
        return found

    def reduce(self, terms: Terms) -> Terms:
        if self.prime == 2:
            return dict.fromkeys(self._reduce_gf2(set(terms)), 1)
        p = self.prime
        f = dict(terms)
        heap = [(self.heap_key(m), m) for m in f]
        heapq.heapify(heap)
        remainder: Terms = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, 0)
            if not c:
                continue
            g = self.divisor(m)
            if g is None:
                remainder[m] = c
                continue
            q = tuple(map(sub, m, g.lm))
            for t, gc in g.tail:
                t = tuple(map(add, t, q))
                old = f.get(t)
                v = ((old or 0) - c * gc) % p
                if v:
                    if old is None:
                        heapq.heappush(heap, (self.heap_key(t), t))
                    f[t] = v
                elif old is not None:
                    del f[t]
        return remainder

    def _reduce_gf2(self, monomials: set[Monomial]) -> set[Monomial]:
        f = set(monomials)
        heap = [(self.heap_key(m), m) for m in f]
        heapq.heapify(heap)
        remainder: set[Monomial] = set()
        while heap:
            _, m = heapq.heappop(heap)
            if m not in f:
                continue
            f.discard(m)
            g = self.divisor(m)
            if g is None:
                remainder.add(m)
                continue
            q = tuple(map(sub, m, g.lm))
            for t, _ in g.tail:
                t = tuple(map(add, t, q))
                if t in f:
                    f.discard(t)
                else:
                    f.add(t)
                    heapq.heappush(heap, (self.heap_key(t), t))
        return remainder


def _s_polynomial(f: _Poly, g: _Poly, prime: int) -> Terms:
    lcm = _lcm(f.lm, g.lm)
    u = tuple(map(sub, lcm, f.lm))
    v = tuple(map(sub, lcm, g.lm))
    result: Terms = {}
    for m, c in f.tail:
        t = tuple(map(add, m, u))
        result[t] = (result.get(t, 0) + c) % prime
    for m, c in g.tail:
        t = tuple(map(add, m, v))
        result[t] = (result.get(t, 0) - c) % prime
    return {m: c for m, c in result.items() if c}


def _pair_sugar(f: _Poly, g: _Poly, lcm: Monomial) -> int:
    degree = sum(lcm)
    return max(f.sugar - sum(f.lm) + degree, g.sugar - sum(g.lm) + degree)


# Pending critical pairs with the lcm of their leading monomials and its support mask.
Pairs = dict[tuple[int, int], tuple[Monomial, int]]


def _update(polys: list[_Poly], basis: list[int], pairs: Pairs, ih: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Gebauer–Möller installation of ``polys[ih]``.

    Prunes ``pairs`` in place, adds the pairs of ``polys[ih]`` that survive, and returns the pruned basis
    together with those new pairs.
    """
    h = polys[ih]
    with_h: dict[int, tuple[Monomial, int]] = {}

    def lcm_with_h(i: int) -> tuple[Monomial, int]:
        found = with_h.get(i)
        if found is None:
            found = with_h[i] = (_lcm(h.lm, polys[i].lm), h.mask | polys[i].mask)
        return found

    def divided(ig: int, others: list[int]) -> bool:
        lcm, mask = lcm_with_h(ig)
        for i in others:
            other, other_mask = lcm_with_h(i)
            if not other_mask & ~mask and _divides(other, lcm):
                return True
        return False

    candidates = sorted(basis, reverse=True)
    kept: list[int] = []
    while candidates:
        ig = candidates.pop()
        coprime = not h.mask & polys[ig].mask
        if coprime or (not divided(ig, candidates) and not divided(ig, kept)):
            kept.append(ig)

    for pair, (lcm12, mask12) in list(pairs.items()):
        ig1, ig2 = pair
        if (
            not h.mask & ~mask12
            and _divides(h.lm, lcm12)
            and lcm_with_h(ig1)[0] != lcm12
            and lcm_with_h(ig2)[0] != lcm12
        ):
            del pairs[pair]
    new_pairs = [(ih, ig) for ig in kept if h.mask & polys[ig].mask]
    for pair in new_pairs:
        pairs[pair] = lcm_with_h(pair[1])

    new_basis = [ig for ig in basis if h.mask & ~polys[ig].mask or not _divides(h.lm, polys[ig].lm)]
    new_basis.append(ih)
    return new_basis, new_pairs


def _buchberger(
    generators: list[Terms], order: str, prime: int, jobs: int = 1, progress: Optional[ProgressCallback] = None
) -> list[_Poly]:
    key = order_key(order)
    reducer = _Reducer(order, prime)
    polys: list[_Poly] = []
    basis: list[int] = []
    pairs: Pairs = {}
    # Min-heap on (sugar, lcm, pair); entries of pruned pairs are skipped when popped.
    queue: list[tuple[int, tuple[int, ...], tuple[int, int]]] = []

    def install(terms: Terms, sugar: Optional[int] = None) -> None:
        nonlocal basis
        polys.append(_monic(terms, key, prime, sugar))
        basis, new_pairs = _update(polys, basis, pairs, len(polys) - 1)
        for i, j in new_pairs:
            lcm = pairs[i, j][0]
            heapq.heappush(queue, (_pair_sugar(polys[i], polys[j], lcm), key(lcm), (i, j)))
        reducer.reset(polys[i] for i in sorted(basis))

    for terms in sorted(generators, key=lambda t: key(max(t, key=key))):
        reduced = reducer.reduce(terms)
        if reduced:
            install(reduced)

    width = max(jobs, 1)
    processed = 0
    with ThreadPoolExecutor(max_workers=width) as executor:
        while pairs:
            batch: list[tuple[int, tuple[int, int]]] = []
            while pairs and len(batch) < width:
                sugar, _, pair = heapq.heappop(queue)
                if pairs.pop(pair, None) is not None:
                    batch.append((sugar, pair))
            s_polys = [_s_polynomial(polys[i], polys[j], prime) for _, (i, j) in batch]
            if len(batch) > 1:
                remainders = list(executor.map(reducer.reduce, s_polys))
            else:
                remainders = [reducer.reduce(s_polys[0])]
            for (sugar, _), remainder in zip(batch, remainders):
                if remainder and len(batch) > 1:
                    # The basis may have grown since the batch was reduced.
                    remainder = reducer.reduce(remainder)
                if remainder:
                    install(remainder, sugar)
                    logger.debug(f"Basis grew to {len(basis)} elements, {len(pairs)} pairs pending")
            processed += len(batch)
            if progress is not None:
                progress(len(basis), len(pairs))

    logger.debug(f"Processed {processed} critical pairs")
    minimal: list[_Poly] = []
    for g in sorted((polys[i] for i in basis), key=lambda g: key(g.lm)):
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reducer.reset(minimal)
    reduced = []
    for g in minimal:
        terms = reducer.reduce(dict(g.tail))
        terms[g.lm] = 1
        reduced.append(_Poly(terms, g.lm, g.sugar))
    return sorted(reduced, key=lambda g: key(g.lm), reverse=True)


class GroebnerBasis:
    """A reduced Gröbner basis over GF(p) with the ring's monomial order."""

    def __init__(self, ring: PolyRing, polys: Sequence[_Poly]) -> None:
        prime = ring_prime(ring)
        if prime is None:
            msg = "Gröbner bases are computed over a prime field"
            raise DomainMismatchError(msg)
        self.ring = ring
        self.prime = prime
        self.order = ring_order(ring)
        self._polys = list(polys)
        self.manifest: Optional[dict[str, Any]] = None
        self._reducer = _Reducer(self.order, prime)
        self._reducer.reset(self._polys)

    @classmethod
    def from_polynomials(cls, ring: PolyRing, generators: Iterable[PolyElement]) -> GroebnerBasis:
        """Wrap polynomials already known to form a reduced basis."""
        prime = ring_prime(ring)
        if prime is None:
            msg = "Gröbner bases are computed over a prime field"
            raise DomainMismatchError(msg)
        key = order_key(ring_order(ring))
        return cls(ring, [_monic(_to_terms(g, prime), key, prime) for g in generators if g])

    @property
    def generators(self) -> list[PolyElement]:
        return [self.ring.from_dict(dict(g.terms)) for g in self._polys]

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.lm for g in self._polys]

    @property
    def is_unit_ideal(self) -> bool:
        return any(not any(g.lm) for g in self._polys)

    def __len__(self) -> int:
        return len(self._polys)

    def __repr__(self) -> str:
        return f"GroebnerBasis({len(self)} elements, GF({self.prime}), {self.order})"

    def reduce_terms(self, terms: Terms) -> Terms:
        return self._reducer.reduce({m: c % self.prime for m, c in terms.items() if c % self.prime})

    def normal_form(self, p: PolyElement) -> PolyElement:
        if p.ring != self.ring:
            msg = f"Polynomial over {p.ring.domain} with {p.ring.ngens} variables does not live in {self!r}"
            raise DomainMismatchError(msg)
        return self.ring.from_dict(self.reduce_terms(_to_terms(p, self.prime)))

    def contains(self, p: PolyElement) -> bool:
        return not self.normal_form(p)

    def lift(self, p: PolyElement) -> PolyElement:
        """Move a polynomial over the same variables into this basis' ring, reducing coefficients mod p."""
        if tuple(p.ring.symbols) != tuple(self.ring.symbols):
            msg = f"Polynomial variables do not match those of {self!r}"
            raise DomainMismatchError(msg)
        return self.ring.from_dict(_to_terms(p, self.prime))


def _to_terms(p: PolyElement, prime: Optional[int]) -> Terms:
    source = ring_prime(p.ring)
    terms = {m: coefficient(c, source) for m, c in p.terms()}
    if prime:
        terms = {m: c % prime for m, c in terms.items() if c % prime}
    return terms


def buchberger(
    generators: Sequence[PolyElement],
    *,
    ring: Optional[PolyRing] = None,
    jobs: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal spanned by ``generators`` over GF(p).

    Uses Gebauer–Möller pair elimination with sugar selection. With ``jobs > 1`` batches of S-polynomials are
    reduced concurrently against a frozen basis and installed in pair order, so the result does not depend on
    the schedule. ``ring`` is required only for an empty generator list.
    """
    if ring is None:
        if not generators:
            msg = "An empty generator list needs an explicit ring"
            raise DomainMismatchError(msg)
        ring = generators[0].ring
    prime = ring_prime(ring)
    if prime is None:
        msg = "Reduce integer generators to a prime field with to_prime_field before calling buchberger"
        raise DomainMismatchError(msg)
    if any(g.ring != ring for g in generators):
        msg = "All generators must share one ring"
        raise DomainMismatchError(msg)
    start = time.perf_counter()
    terms = [t for t in (_to_terms(g, prime) for g in generators) if t]
    polys = _buchberger(terms, ring_order(ring), prime, jobs=jobs, progress=progress)
    logger.info(
        f"Gröbner basis with {len(polys)} elements from {len(generators)} generators "
        f"over GF({prime}) in {humanize_duration(time.perf_counter() - start)}"
    )
    return GroebnerBasis(ring, polys)


def normal_form(p: PolyElement, basis: GroebnerBasis) -> PolyElement:
    return basis.normal_form(p)


class MembershipVerdict(str, Enum):
    NOT_IN_IDEAL_OVER_Z = "NotInIdealOverZ"
    INCONCLUSIVE_MEMBER_MOD_P = "InconclusiveMemberModP"


class NonMembershipCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: MembershipVerdict
    prime: int
    order: str
    polynomial: str
    normal_form: str

    @property
    def certified(self) -> bool:
        return self.verdict is MembershipVerdict.NOT_IN_IDEAL_OVER_Z


def certify_nonmembership(
    p: PolyElement,
    generators: Sequence[PolyElement],
    prime: int,
    *,
    basis: Optional[GroebnerBasis] = None,
    jobs: int = 1,
) -> NonMembershipCertificate:
    """Decide p ∉ (generators) over ℤ from a nonzero normal form mod ``prime``.

    Membership over ℤ implies membership mod every prime, so a nonzero normal form certifies non-membership.
    A zero normal form proves nothing over ℤ.
    """
    field_ring = prime_field_ring(p.ring, prime)
    if basis is None:
        basis = buchberger([to_prime_field(g, prime) for g in generators], ring=field_ring, jobs=jobs)
    elif basis.ring != field_ring:
        msg = f"Cached basis {basis!r} does not match GF({prime}) with this ring's variables and order"
        raise DomainMismatchError(msg)
    remainder = basis.normal_form(to_prime_field(p, prime))
    verdict = MembershipVerdict.NOT_IN_IDEAL_OVER_Z if remainder else MembershipVerdict.INCONCLUSIVE_MEMBER_MOD_P
    return NonMembershipCertificate(
        verdict=verdict, prime=prime, order=basis.order, polynomial=to_text(p), normal_form=to_text(remainder)
    )
