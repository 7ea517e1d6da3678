import pytest

from src.twodiv.errors import UnknownLemma
from src.twodiv.lemmas import REGISTRY, e4_shift_difference, list_lemmas, verify_lemma
from src.twodiv.models import SIX_WEIGHTS, LemmaBounds

SMALL = LemmaBounds(weights=[12], odd_max=3, a_max=2, b_max=2, hecke_max=4, tau_b_max=3, precision=40)

NAMES = [
    "alpha-congruence",
    "hecke-relation",
    "hecke-squared-relation",
    "tau-divisibility",
    "index-four",
    "constant-odd",
    "constant-even",
    "index-two-odd",
    "even-index-odd",
    "q2-high-index",
    "lower-triangle",
    "q2-odd-index",
    "diagonal-plus-one",
    "diagonal-plus-two",
    "upper-weak",
    "index-two-upper",
    "diagonal-plus-one-upper",
    "diagonal-step",
    "diagonal-plus-two-upper",
    "upper-triangle",
]


def test_registry_order():
    assert [entry.name for entry in list_lemmas()] == NAMES
    assert all(entry.statement for entry in list_lemmas())


def test_unknown_lemma():
    with pytest.raises(UnknownLemma):
        verify_lemma("no-such-claim", SMALL)


@pytest.mark.parametrize("name", NAMES)
def test_every_claim_holds_on_small_bounds(name):
    report = verify_lemma(name, SMALL)
    assert report.records
    assert report.ok, [r.to_json_dict() for r in report.failures]
    assert report.params["lemma"] == name


@pytest.mark.parametrize("k", SIX_WEIGHTS)
def test_e4_shift_identity(k):
    assert e4_shift_difference(k).is_zero


def test_q2_odd_index_identity_records():
    bounds = LemmaBounds(odd_max=15, precision=40)
    records = [r for r in verify_lemma("q2-odd-index", bounds).records if r.case == "q2-odd-index:e4-identity"]
    assert len(records) == 6
    assert all(r.passed for r in records)


def test_alpha_congruence_k26():
    bounds = LemmaBounds(weights=[26], precision=100)
    (record,) = verify_lemma("alpha-congruence", bounds).records
    assert record.claimed == 5
    assert record.observed is None or record.observed >= 5


def test_index_two_odd_larger_range():
    bounds = LemmaBounds(weights=[12], odd_max=31)
    report = verify_lemma("index-two-odd", bounds)
    assert report.ok
    assert sum(1 for r in report.records if r.case == "index-two-odd") == 16


def test_constant_odd_basis_records_k12():
    report = verify_lemma("constant-odd", SMALL)
    basis = [r for r in report.records if r.case == "constant-odd:basis"]
    # Delta_12 and S4^3 carry odd powers of q; the Delta_12 coefficient is zero
    assert [r.m for r in basis] == [1, 3]
    assert basis[0].observed is None
    assert basis[1].observed == 12


def test_tau_recursion_records():
    report = verify_lemma("tau-divisibility", SMALL)
    recursion = [r for r in report.records if r.case == "tau-divisibility:recursion"]
    assert len(recursion) == 3 * 2
    assert all(r.claimed is None and r.passed for r in recursion)


@pytest.mark.slow
@pytest.mark.parametrize("name", NAMES)
def test_every_claim_holds_on_default_bounds(name):
    assert verify_lemma(name).ok


def test_registry_is_keyed_by_name():
    assert set(REGISTRY) == set(NAMES)
