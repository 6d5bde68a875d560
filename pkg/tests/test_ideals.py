import random
import threading
from concurrent.futures import ThreadPoolExecutor

import pytest

from biqbracket.biquandle.biquandle import load_biquandle, random_biquandle, trivial_biquandle
from biqbracket.code_utils.config_consts import FIXTURES_DIR
from biqbracket.errors import DomainMismatchError, InvalidVariantError
from biqbracket.ideals import basis as basis_module
from biqbracket.ideals.basis import clear_memory_cache, ideal_basis, lookup_basis
from biqbracket.ideals.ideal import ANNIHILATING_POINT, build_ideal, raw_relations
from biqbracket.ideals.templates import families, parse_relation
from biqbracket.polyring.polynomial import evaluate, parse_polynomial, to_prime_field

X1 = load_biquandle(FIXTURES_DIR / "X1.json")
X2 = load_biquandle(FIXTURES_DIR / "X2.json")
P = 32003


def test_relation_templates():
    (term,) = parse_relation("CCC/1")
    assert term.coefficient == 1
    assert term.factors == (("C", 1), ("C", 2), ("C", 3))
    first, second, third = parse_relation("dAD + AE - 2BD")
    assert first.delta == 1
    assert second.factors == (("A", 1), ("E", 1))
    assert third.coefficient == -2
    assert [f for _, f in parse_relation("BAC/423")[0].factors] == [4, 2, 3]
    with pytest.raises(InvalidVariantError):
        parse_relation("AB/12 + Q")
    with pytest.raises(InvalidVariantError):
        parse_relation("ABC/12")


def test_family_sizes():
    assert [len(f.relations) for f in families(1)] == [4, 7, 22]
    assert [len(f.relations) for f in families(2)] == [2, 5, 16]
    assert [f.arity for f in families(2)] == [1, 2, 3]


def test_invalid_variant_and_transcription():
    with pytest.raises(InvalidVariantError):
        families(3)
    with pytest.raises(InvalidVariantError):
        families(1, "loose")


@pytest.mark.parametrize(("variant", "expected"), [(1, 669), (2, 483)])
def test_generator_counts_for_three_elements(variant, expected):
    assert build_ideal(X1, variant).raw_count == expected
    m = 3
    per_m = (4 * m + 7 * m**2 + 22 * m**3) if variant == 1 else (2 * m + 5 * m**2 + 16 * m**3)
    assert per_m == expected


def test_duplicates_and_zeros_are_dropped():
    spec = build_ideal(X1, 2)
    assert len(spec.generators) == len(set(spec.generators))
    assert all(spec.generators)
    assert len(spec.generators) <= spec.raw_count


@pytest.mark.parametrize("b", [X1, X2, trivial_biquandle(1), trivial_biquandle(2)], ids=["X1", "X2", "T1", "T2"])
@pytest.mark.parametrize("variant", [1, 2])
@pytest.mark.parametrize("transcription", ["corrected", "verbatim"])
def test_generators_vanish_at_the_annihilating_point(b, variant, transcription):
    for polys in raw_relations(b, variant, None, transcription).values():
        for g in polys:
            assert evaluate(g, ANNIHILATING_POINT) == 0


def test_generators_vanish_for_random_biquandles():
    rng = random.Random(11)
    for _ in range(20):
        b = random_biquandle(rng, max_m=3)
        for variant in (1, 2):
            spec = build_ideal(b, variant, 2)
            assert all(evaluate(g, ANNIHILATING_POINT) == 0 for g in spec.generators)


def test_symbolic_delta_keeps_the_variable():
    spec = build_ideal(trivial_biquandle(1), 2, None)
    R = spec.ring
    assert parse_polynomial("delta*A[1,1] + B[1,1] + C[1,1] - 1", R) in spec.generators
    assert spec.manifest()["delta"] == "symbolic"
    specialized = build_ideal(trivial_biquandle(1), 2, 1)
    assert parse_polynomial("A[1,1] + B[1,1] + C[1,1] - 1", R) in specialized.generators


def test_build_is_deterministic():
    assert build_ideal(X2, 1).generators == build_ideal(X2, 1).generators
    assert build_ideal(X2, 1).to_json() == build_ideal(X2, 1).to_json()


def test_manifest_names_everything_the_basis_depends_on():
    manifest = build_ideal(X1, 1, 1, "verbatim").groebner_manifest(P, "grevlex")
    assert manifest["variant"] == 1
    assert manifest["delta"] == 1
    assert manifest["transcription"] == "verbatim"
    assert manifest["families"] == {"i_1": 12, "ii_1": 63, "iii_1": 594}
    assert manifest["prime"] == P


def test_ideal_basis_of_the_one_element_ideal(tmp_path):
    clear_memory_cache()
    spec = build_ideal(trivial_biquandle(1), 2, 2)
    basis, report = ideal_basis(spec, P, cache_dir=tmp_path)
    assert not report.cache_hit
    assert not basis.is_unit_ideal
    for g in spec.generators:
        assert basis.contains(to_prime_field(g, P))
    assert report.cache_path is not None
    again, second = ideal_basis(spec, P, cache_dir=tmp_path)
    assert second.cache_hit
    assert again is basis
    clear_memory_cache()
    from_disk, third = ideal_basis(spec, P, cache_dir=tmp_path)
    assert third.cache_hit
    assert from_disk.generators == basis.generators
    assert from_disk.manifest == basis.manifest


def test_lookup_basis_never_computes(tmp_path):
    clear_memory_cache()
    spec = build_ideal(trivial_biquandle(1), 1, 2)
    assert lookup_basis(spec, P, cache_dir=tmp_path) is None
    basis, _ = ideal_basis(spec, P, cache_dir=tmp_path)
    clear_memory_cache()
    found = lookup_basis(spec, P, cache_dir=tmp_path)
    assert found is not None
    assert found.generators == basis.generators
    assert lookup_basis(build_ideal(trivial_biquandle(1), 1, None), P) is None


def test_symbolic_delta_has_no_basis():
    with pytest.raises(DomainMismatchError):
        ideal_basis(build_ideal(trivial_biquandle(1), 2, None), P)


def test_different_ideals_are_computed_concurrently(monkeypatch):
    clear_memory_cache()
    both_running = threading.Barrier(2, timeout=10)
    compute = basis_module.buchberger

    def rendezvous(*args, **kwargs):
        # raises BrokenBarrierError if the two computations are serialized
        both_running.wait()
        return compute(*args, **kwargs)

    monkeypatch.setattr(basis_module, "buchberger", rendezvous)
    specs = [build_ideal(trivial_biquandle(1), variant, 2) for variant in (1, 2)]
    with ThreadPoolExecutor(max_workers=2) as pool:
        results = list(pool.map(lambda spec: ideal_basis(spec, P), specs))
    assert [report.cache_hit for _, report in results] == [False, False]
    clear_memory_cache()


def test_one_computation_per_ideal(monkeypatch):
    clear_memory_cache()
    calls = []
    compute = basis_module.buchberger

    def counted(*args, **kwargs):
        calls.append(1)
        return compute(*args, **kwargs)

    monkeypatch.setattr(basis_module, "buchberger", counted)
    spec = build_ideal(trivial_biquandle(1), 2, 2)
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda _: ideal_basis(spec, P), range(4)))
    assert len(calls) == 1
    assert len({id(basis) for basis, _ in results}) == 1
    assert sorted(report.cache_hit for _, report in results) == [False, True, True, True]
    clear_memory_cache()
