from __future__ import annotations

import threading
import time
from typing import TYPE_CHECKING, Any, Optional

from biqbracket.cli_cmds.console import logger
from biqbracket.code_utils.time_utils import humanize_duration
from biqbracket.errors import DomainMismatchError
from biqbracket.models.models import GroebnerReport
from biqbracket.polyring.cache import cache_key, cache_path, load_basis, store_basis
from biqbracket.polyring.groebner import ProgressCallback, buchberger
from biqbracket.polyring.polynomial import to_prime_field
from biqbracket.polyring.variables import make_ring

if TYPE_CHECKING:
    from pathlib import Path

    from biqbracket.ideals.ideal import IdealSpec
    from biqbracket.polyring.groebner import GroebnerBasis

_lock = threading.Lock()
_memory: dict[str, GroebnerBasis] = {}
_key_locks: dict[str, threading.Lock] = {}


def _lock_for(key: str) -> threading.Lock:
    with _lock:
        return _key_locks.setdefault(key, threading.Lock())


def ideal_basis(
    spec: IdealSpec,
    prime: int,
    order: str = "grevlex",
    *,
    cache_dir: Optional[Path] = None,
    jobs: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> tuple[GroebnerBasis, GroebnerReport]:
    """The Gröbner basis of ``spec`` over GF(prime), computed once per process and optionally cached on disk."""
    if spec.delta is None:
        msg = "Gröbner bases need δ specialized to a number"
        raise DomainMismatchError(msg)
    manifest: dict[str, Any] = spec.groebner_manifest(prime, order)
    key = cache_key(manifest)
    ring = make_ring(spec.biquandle.m, prime, order)
    start = time.perf_counter()
    # one computation per key; different ideals proceed in parallel
    with _lock_for(key):
        with _lock:
            basis = _memory.get(key)
        cache_hit = basis is not None
        if basis is None and cache_dir is not None:
            basis = load_basis(cache_dir, manifest, ring)
            cache_hit = basis is not None
        if basis is None:
            generators = [to_prime_field(g, prime, order) for g in spec.generators]
            basis = buchberger([g for g in generators if g], ring=ring, jobs=jobs, progress=progress)
            if cache_dir is not None:
                store_basis(cache_dir, manifest, basis)
        basis.manifest = manifest
        with _lock:
            _memory[key] = basis
    seconds = time.perf_counter() - start
    logger.info(
        f"I_{spec.variant} basis: {len(basis)} elements ({'cached' if cache_hit else 'computed'}) "
        f"in {humanize_duration(seconds)}"
    )
    report = GroebnerReport(
        cache_key=key,
        manifest=manifest,
        generators=len(spec.generators),
        basis_size=len(basis),
        cache_hit=cache_hit,
        seconds=seconds,
        cache_path=str(cache_path(cache_dir, manifest)) if cache_dir is not None else None,
    )
    return basis, report


def clear_memory_cache() -> None:
    with _lock:
        _memory.clear()


def lookup_basis(
    spec: IdealSpec, prime: int, order: str = "grevlex", *, cache_dir: Optional[Path] = None
) -> Optional[GroebnerBasis]:
    """An already computed basis for ``spec`` from memory or disk, without computing one."""
    if spec.delta is None:
        return None
    manifest: dict[str, Any] = spec.groebner_manifest(prime, order)
    with _lock:
        basis = _memory.get(cache_key(manifest))
        if basis is None and cache_dir is not None:
            basis = load_basis(cache_dir, manifest, make_ring(spec.biquandle.m, prime, order))
            if basis is not None:
                basis.manifest = manifest
                _memory[cache_key(manifest)] = basis
    return basis
