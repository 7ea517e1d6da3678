"""
Pydantic data models.

Typed records that sit between the arithmetic modules and the report /
CLI layer.  The arithmetic itself works on QSeries and KolbergExpr values;
everything that is configured, tabulated, reported or serialized is a model
defined here.

Mapping overview:
    weight k = 12*ell + k'          → WeightDecomposition
    per-weight congruence constants → WeightProfile
    divisibility indicator          → DivIndicator
    level-2 basis element           → Level2BasisElement
    one checked claim               → CongruenceRecord → report row
    a verification run              → VerificationReport → JSON / YAML / table
    a min-valuation probe           → SharpnessRow / SharpnessReport
    the index-four dissection run   → PipelineTranscript
    YAML defaults                   → GridConfig / LemmaBounds / HarnessConfig
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .qseries import QSeries


SIX_WEIGHTS = (12, 16, 18, 20, 22, 26)
ODD_SAMPLE = (1, 3, 5, 7)


# ──────────────────────────────────────────────
# Enums
# ──────────────────────────────────────────────

class CaseLabel(str, Enum):
    """Row families of the main congruence for a_k(2^a m, 2^b n)."""
    A_ZERO = "a=0"
    B_ZERO = "a>0,b=0"
    LOWER = "a>b>=1"
    UPPER = "b>a>=1"
    DIAGONAL = "a=b"
    TAU_ROW = "m=-1"
    CONSTANT_ODD = "m=0,b=0"
    CONSTANT_EVEN = "m=0,b>0"


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class FormKind(str, Enum):
    """Series the CLI `expand` command knows how to build."""
    CANONICAL = "canonical"
    E4 = "e4"
    E6 = "e6"
    DELTA = "delta"
    J = "j"
    DELTA_K = "delta_k"
    S4 = "s4"
    S6 = "s6"
    T4 = "t4"
    T6 = "t6"
    PHI = "phi"
    PSI = "psi"
    ALPHA = "alpha"
    THETA = "theta"


# ──────────────────────────────────────────────
# Weight data
# ──────────────────────────────────────────────

class WeightDecomposition(BaseModel):
    """k = 12*ell + kprime with kprime in {0, 4, 6, 8, 10, 14}."""
    model_config = ConfigDict(frozen=True)

    k: int
    ell: int
    kprime: int

    @model_validator(mode="after")
    def _check(self) -> "WeightDecomposition":
        if self.kprime not in (0, 4, 6, 8, 10, 14) or 12 * self.ell + self.kprime != self.k:
            raise ValueError(f"invalid decomposition {self.k} = 12*{self.ell} + {self.kprime}")
        return self


class WeightProfile(BaseModel):
    """
    Congruence constants for one of the six weights.

    xi and mu belong to the dual weight 2 - k: xi is the exponent in
    alpha_{2-k} = 1 (mod 2^xi), mu the 2-power of the theta/alpha relation.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., description="Weight, one of 12, 16, 18, 20, 22, 26")
    gamma: int
    rho: int
    chi: int
    nu: int
    eta: int
    omega: int
    xi: int = Field(..., description="xi_{2-k}")
    mu: int = Field(..., description="mu_{2-k}")

    @model_validator(mode="after")
    def _eta_plus_xi_is_nu(self) -> "WeightProfile":
        if self.eta + self.xi != self.nu:
            raise ValueError(f"k={self.k}: eta + xi = {self.eta + self.xi} but nu = {self.nu}")
        return self


class DivIndicator(BaseModel):
    """delta_{x,y}: 1 if y divides x, else 0."""
    model_config = ConfigDict(frozen=True)

    x: int
    y: int
    value: int

    @classmethod
    def of(cls, x: int, y: int) -> "DivIndicator":
        return cls(x=x, y=y, value=1 if x % y == 0 else 0)

    @model_validator(mode="after")
    def _consistent(self) -> "DivIndicator":
        if self.y == 0:
            raise ValueError("y must be nonzero")
        if self.value != (1 if self.x % self.y == 0 else 0):
            raise ValueError(f"value {self.value} disagrees with {self.y} | {self.x}")
        return self


class Level2BasisElement(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    weight: int
    index: int
    label: str = Field(..., description="Product formula, e.g. 'S4^3*E6'")
    series: QSeries

    @property
    def vanishing_order(self) -> int:
        return self.series.valuation


# ──────────────────────────────────────────────
# Verification records
# ──────────────────────────────────────────────

def _exponent_text(value: Optional[int]) -> str:
    return "inf" if value is None else str(value)


class CongruenceRecord(BaseModel):
    """
    One instantiated claim.

    claimed=None means the claim is an exact identity (infinite valuation);
    observed=None means the checked quantity is zero.  Informational rows
    carry no claim and no pass flag.
    """
    model_config = ConfigDict(frozen=True)

    k: int
    case: str
    a: int = 0
    b: int = 0
    m: int = 0
    n: int = 0
    claimed: Optional[int] = None
    observed: Optional[int] = None
    informational: bool = False

    @field_validator("observed", mode="before")
    @classmethod
    def _infinite_is_none(cls, value: Any) -> Any:
        if isinstance(value, float) and math.isinf(value):
            return None
        return value

    @property
    def passed(self) -> Optional[bool]:
        if self.informational:
            return None
        if self.observed is None:
            return True
        if self.claimed is None:
            return False
        return self.observed >= self.claimed

    @property
    def sort_key(self) -> tuple:
        return (self.k, self.case, self.a, self.b, self.m, self.n)

    def to_json_dict(self) -> Dict[str, Any]:
        claimed: Union[int, str, None]
        if self.informational:
            claimed = None
        else:
            claimed = "inf" if self.claimed is None else self.claimed
        return {
            "k": self.k,
            "case": self.case,
            "a": self.a,
            "b": self.b,
            "m": self.m,
            "n": self.n,
            "claimed": claimed,
            "observed": _exponent_text(self.observed),
            "pass": self.passed,
        }


class VerificationReport(BaseModel):
    version: str
    params: Dict[str, Any] = Field(default_factory=dict)
    records: List[CongruenceRecord] = Field(default_factory=list)

    @property
    def checked(self) -> List[CongruenceRecord]:
        return [r for r in self.records if not r.informational]

    @property
    def failures(self) -> List[CongruenceRecord]:
        return [r for r in self.checked if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> Dict[str, int]:
        checked = self.checked
        failed = len(self.failures)
        return {
            "total": len(checked),
            "passed": len(checked) - failed,
            "failed": failed,
            "informational": len(self.records) - len(checked),
        }

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "params": self.params,
            "records": [r.to_json_dict() for r in self.records],
            "summary": self.summary(),
        }


class SharpnessRow(BaseModel):
    """Minimum observed valuation over the (m, n) cells of one (k, case, a, b)."""
    k: int
    case: CaseLabel
    a: int = 0
    b: int = 0
    cells: int
    claimed: Optional[int] = None
    min_observed: Optional[int] = Field(None, description="None when every coefficient vanished")
    odd_cells: int = 0

    @property
    def attained(self) -> Optional[bool]:
        if self.claimed is None or self.cells == 0:
            return None
        return self.min_observed == self.claimed


class SharpnessReport(BaseModel):
    rows: List[SharpnessRow] = Field(default_factory=list)


class PipelineTranscript(BaseModel):
    """Stages of the index-four two-dissection for one weight."""
    k: int
    dual_weight: int
    modulus_exponent: int = Field(..., description="Expressions are reduced mod 2^modulus_exponent")
    j_polynomial: List[int] = Field(..., description="Monic coefficients, highest degree first")
    reduced_form: str
    even_part: str
    halved: str
    odd_part: str
    residue: str = Field(..., description="odd_part reduced mod 2^(rho+gamma)")
    symbolic_zero: bool
    numeric_zero: bool
    closed_form_matches: bool
    dual_coefficients_ok: bool
    expected_odd_part: Optional[str] = None

    @property
    def passed(self) -> bool:
        if self.expected_odd_part is not None and self.expected_odd_part != self.odd_part:
            return False
        return (self.symbolic_zero or self.numeric_zero) and self.closed_form_matches and self.dual_coefficients_ok


# ──────────────────────────────────────────────
# Configuration
# ──────────────────────────────────────────────

def _among_six_weights(values: List[int]) -> List[int]:
    bad = [k for k in values if k not in SIX_WEIGHTS]
    if bad:
        raise ValueError(f"weights must be among {SIX_WEIGHTS}, got {bad}")
    return sorted(set(values))


class GridConfig(BaseModel):
    """Main-theorem grid."""
    weights: List[int] = Field(default_factory=lambda: list(SIX_WEIGHTS))
    a_max: int = Field(4, ge=0)
    b_max: int = Field(4, ge=0)
    m_list: List[int] = Field(default_factory=lambda: list(ODD_SAMPLE))
    n_list: List[int] = Field(default_factory=lambda: list(ODD_SAMPLE))
    tau_b_max: int = Field(6, ge=0)
    tau_n_list: List[int] = Field(default_factory=lambda: [1, 3, 5])
    constant_b_max: int = Field(4, ge=0)

    @field_validator("m_list", "n_list", "tau_n_list")
    @classmethod
    def _odd_positive(cls, values: List[int]) -> List[int]:
        bad = [v for v in values if v <= 0 or v % 2 == 0]
        if bad:
            raise ValueError(f"indices must be odd and positive, got {bad}")
        return sorted(set(values))

    @field_validator("weights")
    @classmethod
    def _six_weights(cls, values: List[int]) -> List[int]:
        return _among_six_weights(values)


class LemmaBounds(BaseModel):
    """Instance bounds for the named-claim registry."""
    weights: List[int] = Field(default_factory=lambda: list(SIX_WEIGHTS))
    odd_max: int = Field(9, ge=1, description="Largest odd m or n")
    a_max: int = Field(3, ge=0)
    b_max: int = Field(3, ge=0)
    hecke_max: int = Field(16, ge=1)
    tau_b_max: int = Field(6, ge=0)
    precision: int = Field(100, ge=10, description="Working precision for series-level checks")

    @field_validator("weights")
    @classmethod
    def _six_weights(cls, values: List[int]) -> List[int]:
        return _among_six_weights(values)

    @property
    def odd_values(self) -> List[int]:
        return list(range(1, self.odd_max + 1, 2))


class HarnessConfig(BaseModel):
    theorem: GridConfig = Field(default_factory=GridConfig)
    lemmas: LemmaBounds = Field(default_factory=LemmaBounds)
    workers: int = Field(1, ge=1)
    log_level: str = "WARNING"
