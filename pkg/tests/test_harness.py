import pytest

from src.twodiv.errors import NoClaim
from src.twodiv.harness import (
    Cell,
    case_label,
    claimed_exponent,
    duality_defects,
    grid_cells,
    probe_sharpness,
    verify_main_theorem,
)
from src.twodiv.models import SIX_WEIGHTS, CaseLabel, GridConfig
from src.twodiv.report import to_json

SMALL = GridConfig(
    weights=[12], a_max=2, b_max=2, m_list=[1, 3], n_list=[1, 3],
    tau_b_max=3, tau_n_list=[1], constant_b_max=2,
)


# ── claims ──

@pytest.mark.parametrize(
    "k, a, b, expected",
    [(12, 0, 2, 6), (12, 0, 0, 0), (26, 3, 1, 8), (22, 1, 4, 22), (16, 2, 0, 16), (18, 1, 2, 12)],
)
def test_claimed_exponent(k, a, b, expected):
    assert claimed_exponent(k, a, b) == expected


def test_diagonal_has_no_claim():
    with pytest.raises(NoClaim):
        claimed_exponent(12, 2, 2)


def test_claimed_exponent_rejects_negative():
    with pytest.raises(ValueError):
        claimed_exponent(12, -1, 0)


def test_extra_rows():
    assert claimed_exponent(20, 0, 4, m=-1) == 12
    assert claimed_exponent(16, 0, 0, m=0) == 13
    assert claimed_exponent(16, 0, 3, m=0) == 6


@pytest.mark.parametrize(
    "a, b, m, case",
    [
        (0, 3, 1, CaseLabel.A_ZERO),
        (0, 0, 1, CaseLabel.A_ZERO),
        (2, 0, 5, CaseLabel.B_ZERO),
        (3, 1, 1, CaseLabel.LOWER),
        (1, 3, 1, CaseLabel.UPPER),
        (2, 2, 1, CaseLabel.DIAGONAL),
        (0, 2, -1, CaseLabel.TAU_ROW),
        (0, 0, 0, CaseLabel.CONSTANT_ODD),
        (0, 1, 0, CaseLabel.CONSTANT_EVEN),
    ],
)
def test_case_label(a, b, m, case):
    assert case_label(a, b, m) is case


def test_cell_indices():
    assert Cell(12, 2, 1, 3, 5).indices == (12, 10)
    assert Cell(12, 0, 3, -1, 1).indices == (-1, 8)
    assert Cell(12, 0, 2, 0, 3).indices == (0, 12)


def test_grid_cells_count():
    cells = list(grid_cells(12, SMALL))
    assert len(cells) == 3 * 3 * 2 * 2 + 4 * 1 + 3 * 2


# ── sweep ──

def test_small_grid_passes():
    report = verify_main_theorem(SMALL)
    assert report.ok
    summary = report.summary()
    assert summary["informational"] == 8
    assert summary["total"] + summary["informational"] == len(report.records) == 46
    assert report.params["theorem"]["a_max"] == 2


def test_records_are_sorted():
    records = verify_main_theorem(SMALL).records
    assert records == sorted(records, key=lambda r: r.sort_key)


def test_tau_and_constant_rows():
    records = verify_main_theorem(SMALL).records
    tau = next(r for r in records if r.case == "m=-1" and r.b == 1 and r.n == 1)
    assert (tau.claimed, tau.observed) == (3, 3)
    constant = next(r for r in records if r.case == "m=0,b=0" and r.n == 3)
    assert constant.claimed == 12
    assert constant.observed >= 12


def test_worker_count_does_not_change_report():
    grid = SMALL.model_copy(update={"weights": [12, 16], "a_max": 1, "b_max": 1})
    assert to_json(verify_main_theorem(grid, workers=1)) == to_json(verify_main_theorem(grid, workers=2))


@pytest.mark.slow
def test_default_grid_passes():
    assert verify_main_theorem(workers=2).ok


# ── duality ──

@pytest.mark.parametrize("k", SIX_WEIGHTS)
def test_duality(k):
    assert duality_defects(k, 20) == []


def test_duality_for_a_weight_with_negative_ell():
    assert duality_defects(-10, 12) == []


# ── sharpness ──

def test_sharpness_rows_respect_claims():
    rows = probe_sharpness(12, CaseLabel.A_ZERO, SMALL).rows
    assert [(r.a, r.b) for r in rows] == [(0, 0), (0, 1), (0, 2)]
    for row in rows:
        assert row.cells == 4
        assert row.min_observed is None or row.min_observed >= row.claimed


def test_sharpness_diagonal_is_unclaimed():
    rows = probe_sharpness(12, CaseLabel.DIAGONAL, SMALL).rows
    assert rows
    assert all(r.claimed is None and r.attained is None for r in rows)


def test_sharpness_tau_row():
    rows = probe_sharpness(12, "m=-1", SMALL).rows
    assert [r.claimed for r in rows] == [0, 3, 6, 9]
    assert rows[1].min_observed == 3
    assert rows[1].attained


def test_sharpness_with_empty_grid():
    grid = SMALL.model_copy(update={"a_max": 0})
    assert probe_sharpness(12, CaseLabel.LOWER, grid).rows == []
