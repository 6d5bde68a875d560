from __future__ import annotations

import hashlib
import json
from typing import TYPE_CHECKING, Any, Optional

from biqbracket.cli_cmds.console import logger
from biqbracket.code_utils.config_consts import GB_CACHE_FORMAT_VERSION
from biqbracket.errors import CacheFormatError
from biqbracket.polyring.groebner import GroebnerBasis
from biqbracket.polyring.polynomial import from_json_terms, to_json_terms

if TYPE_CHECKING:
    from pathlib import Path

    from sympy.polys.rings import PolyRing


def cache_key(manifest: dict[str, Any]) -> str:
    payload = json.dumps({"format": GB_CACHE_FORMAT_VERSION, **manifest}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def cache_path(cache_dir: Path, manifest: dict[str, Any]) -> Path:
    return cache_dir / f"{cache_key(manifest)}.json"


def load_basis(cache_dir: Path, manifest: dict[str, Any], ring: PolyRing) -> Optional[GroebnerBasis]:
    """The cached basis for ``manifest``, or None on a miss or an older format version."""
    path = cache_path(cache_dir, manifest)
    if not path.is_file():
        return None
    try:
        data = json.loads(path.read_text(encoding="utf8"))
    except (OSError, json.JSONDecodeError) as e:
        msg = f"Unreadable Gröbner basis cache entry {path}: {e}"
        raise CacheFormatError(msg) from e
    if not isinstance(data, dict) or data.get("format") != GB_CACHE_FORMAT_VERSION:
        logger.debug(f"Ignoring cache entry {path} written in another format")
        return None
    if data.get("manifest") != json.loads(json.dumps(manifest)):
        msg = f"Cache entry {path} holds a different manifest"
        raise CacheFormatError(msg)
    if data.get("variables") != [str(s) for s in ring.symbols]:
        msg = f"Cache entry {path} was computed over other variables"
        raise CacheFormatError(msg)
    try:
        generators = [from_json_terms(terms, ring) for terms in data["basis"]]
    except (KeyError, TypeError, ValueError) as e:
        msg = f"Malformed basis in cache entry {path}"
        raise CacheFormatError(msg) from e
    logger.debug(f"Loaded {len(generators)} basis elements from {path}")
    return GroebnerBasis.from_polynomials(ring, generators)


def store_basis(cache_dir: Path, manifest: dict[str, Any], basis: GroebnerBasis) -> Path:
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_path(cache_dir, manifest)
    data = {
        "format": GB_CACHE_FORMAT_VERSION,
        "manifest": manifest,
        "prime": basis.prime,
        "order": basis.order,
        "variables": [str(s) for s in basis.ring.symbols],
        "basis": [to_json_terms(g) for g in basis.generators],
    }
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data), encoding="utf8")
    tmp.replace(path)
    logger.debug(f"Stored {len(basis)} basis elements at {path}")
    return path
