"""
Main-theorem sweep, duality check and sharpness probe.

For odd positive m, n the claim on a_k(2^a m, 2^b n) is

    a = 0          2^(gamma b)
    a > 0, b = 0   2^nu
    a > b >= 1     2^chi
    b > a >= 1     2^(rho + gamma (b - a))
    a = b >= 1     none (reported as an informational row)

with two extra rows: a_k(-1, 2^b n) = tau_k(2^b n) against gamma b, and
a_k(0, 2^b n) against eta (b = 0) or omega (b > 0).

Weights are independent, so the sweep fans out one task per weight; records
are sorted afterwards and the report is the same for any worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from . import __version__
from .errors import NoClaim
from .level1 import a_coefficient, reserve, weight_decomposition, weight_profile
from .models import (
    CaseLabel,
    CongruenceRecord,
    GridConfig,
    SharpnessReport,
    SharpnessRow,
    VerificationReport,
)
from .qseries import two_adic_valuation

logger = logging.getLogger(__name__)


# ─────────────────────── claims ───────────────────────

def case_label(a: int, b: int, m: int = 1) -> CaseLabel:
    """Row family of the cell a_k(2^a m, 2^b n); m = -1 and m = 0 select the extra rows."""
    if m == -1:
        return CaseLabel.TAU_ROW
    if m == 0:
        return CaseLabel.CONSTANT_ODD if b == 0 else CaseLabel.CONSTANT_EVEN
    if a == 0:
        return CaseLabel.A_ZERO
    if b == 0:
        return CaseLabel.B_ZERO
    if a > b:
        return CaseLabel.LOWER
    if b > a:
        return CaseLabel.UPPER
    return CaseLabel.DIAGONAL


def claimed_exponent(k: int, a: int, b: int, m: int = 1) -> int:
    if a < 0 or b < 0:
        raise ValueError(f"a and b must be non-negative, got a={a}, b={b}")
    p = weight_profile(k)
    case = case_label(a, b, m)
    if case is CaseLabel.TAU_ROW or case is CaseLabel.A_ZERO:
        return p.gamma * b
    if case is CaseLabel.CONSTANT_ODD:
        return p.eta
    if case is CaseLabel.CONSTANT_EVEN:
        return p.omega
    if case is CaseLabel.B_ZERO:
        return p.nu
    if case is CaseLabel.LOWER:
        return p.chi
    if case is CaseLabel.UPPER:
        return p.rho + p.gamma * (b - a)
    raise NoClaim(f"no congruence is claimed for a = b = {a}")


# ─────────────────────── cells ───────────────────────

class Cell(NamedTuple):
    k: int
    a: int
    b: int
    m: int
    n: int

    @property
    def case(self) -> CaseLabel:
        return case_label(self.a, self.b, self.m)

    @property
    def indices(self) -> Tuple[int, int]:
        """(first, second) index of the coefficient a_k(first, second)."""
        first = self.m if self.m <= 0 else 2**self.a * self.m
        return first, 2**self.b * self.n


def grid_cells(k: int, grid: GridConfig) -> Iterator[Cell]:
    for a in range(grid.a_max + 1):
        for b in range(grid.b_max + 1):
            for m in grid.m_list:
                for n in grid.n_list:
                    yield Cell(k, a, b, m, n)
    for b in range(grid.tau_b_max + 1):
        for n in grid.tau_n_list:
            yield Cell(k, 0, b, -1, n)
    for b in range(grid.constant_b_max + 1):
        for n in grid.n_list:
            yield Cell(k, 0, b, 0, n)


def cell_record(cell: Cell) -> CongruenceRecord:
    first, second = cell.indices
    observed = two_adic_valuation(a_coefficient(cell.k, first, second))
    try:
        claimed: Optional[int] = claimed_exponent(cell.k, cell.a, cell.b, cell.m)
        informational = False
    except NoClaim:
        claimed, informational = None, True
    record = CongruenceRecord(
        k=cell.k, case=cell.case.value, a=cell.a, b=cell.b, m=cell.m, n=cell.n,
        claimed=claimed, observed=observed, informational=informational,
    )
    if record.passed is False:
        logger.warning("k=%d %s a=%d b=%d m=%d n=%d: observed %s < claimed %s",
                       cell.k, record.case, cell.a, cell.b, cell.m, cell.n, record.observed, claimed)
    return record


def _reserve_for(k: int, grid: GridConfig) -> None:
    m_max = 2**grid.a_max * max(grid.m_list, default=1)
    n_max = max(
        2**grid.b_max * max(grid.n_list, default=1),
        2**grid.tau_b_max * max(grid.tau_n_list, default=1),
        2**grid.constant_b_max * max(grid.n_list, default=1),
    )
    reserve(k, m_max, n_max)


def weight_records(k: int, grid: GridConfig) -> List[CongruenceRecord]:
    """Every record of one weight; runs in a worker process when the sweep is parallel."""
    logger.info("verifying k=%d", k)
    _reserve_for(k, grid)
    records = [cell_record(cell) for cell in grid_cells(k, grid)]
    logger.info("k=%d done: %d records", k, len(records))
    return records


def verify_main_theorem(grid: Optional[GridConfig] = None, workers: int = 1) -> VerificationReport:
    grid = grid or GridConfig()
    if workers > 1 and len(grid.weights) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(weight_records, grid.weights, [grid] * len(grid.weights)))
    else:
        chunks = [weight_records(k, grid) for k in grid.weights]
    records = sorted((r for chunk in chunks for r in chunk), key=lambda r: r.sort_key)
    return VerificationReport(
        version=__version__,
        params={"theorem": grid.model_dump()},
        records=records,
    )


# ─────────────────────── duality ───────────────────────

class DualityDefect(NamedTuple):
    m: int
    n: int
    a_k: int
    a_dual: int


def duality_defects(k: int, max_index: int = 20) -> List[DualityDefect]:
    """
    Cells -ell <= m <= max_index, 1 <= n <= max_index where
    a_k(m, n) != -a_{2-k}(n, m).

    The principal cell n = -m is skipped: there a_k(-n, n) = 1 and the dual
    side vanishes, so the relation only holds off the leading term.
    """
    ell = weight_decomposition(k).ell
    reserve(k, max_index, max_index)
    reserve(2 - k, max_index, max_index)
    defects = []
    for m in range(-ell, max_index + 1):
        for n in range(1, max_index + 1):
            if n == -m:
                continue
            left, right = a_coefficient(k, m, n), a_coefficient(2 - k, n, m)
            if left != -right:
                defects.append(DualityDefect(m, n, left, right))
    if defects:
        logger.warning("k=%d: %d duality defects", k, len(defects))
    return defects


# ─────────────────────── sharpness ───────────────────────

# representative m of the extra rows
_ROW_M = {CaseLabel.TAU_ROW: -1, CaseLabel.CONSTANT_ODD: 0, CaseLabel.CONSTANT_EVEN: 0}


def probe_sharpness(k: int, case: CaseLabel, grid: Optional[GridConfig] = None) -> SharpnessReport:
    """
    Minimum observed valuation per (a, b) over the grid cells of one case.

    Purely informational.  For the a = b rows nothing is claimed and only
    the count of odd coefficients is of interest.
    """
    grid = grid or GridConfig(weights=[k])
    case = CaseLabel(case)
    groups: Dict[Tuple[int, int], List[int]] = {}
    zeros: Dict[Tuple[int, int], int] = {}
    for cell in grid_cells(k, grid):
        if cell.case is not case:
            continue
        first, second = cell.indices
        v = two_adic_valuation(a_coefficient(k, first, second))
        key = (cell.a, cell.b)
        groups.setdefault(key, [])
        if v == float("inf"):
            zeros[key] = zeros.get(key, 0) + 1
        else:
            groups[key].append(int(v))

    rows = []
    for (a, b), values in sorted(groups.items()):
        try:
            claimed: Optional[int] = claimed_exponent(k, a, b, _ROW_M.get(case, 1))
        except NoClaim:
            claimed = None
        rows.append(SharpnessRow(
            k=k, case=case, a=a, b=b,
            cells=len(values) + zeros.get((a, b), 0),
            claimed=claimed,
            min_observed=min(values) if values else None,
            odd_cells=sum(1 for v in values if v == 0),
        ))
    return SharpnessReport(rows=rows)
