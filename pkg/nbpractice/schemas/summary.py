"""
Corpus summary schemas
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

HISTOGRAM_BINS = 10


class FiveNumber(BaseModel):
    """min, three quartiles, max"""
    min: float
    q1: float
    median: float
    q3: float
    max: float

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_order(self):
        if not self.min <= self.q1 <= self.median <= self.q3 <= self.max:
            raise ValueError("Five-number summary out of order")
        return self

    def as_list(self) -> List[float]:
        return [self.min, self.q1, self.median, self.q3, self.max]


class Histogram(BaseModel):
    """Ten equal-width bins over [0, 1], last bin right-closed"""
    bin_edges: List[float] = Field(default_factory=lambda: [i / HISTOGRAM_BINS for i in range(HISTOGRAM_BINS + 1)])
    counts: List[int] = Field(default_factory=lambda: [0] * HISTOGRAM_BINS)
    thirds: List[int] = Field(
        default_factory=lambda: [0, 0, 0],
        description="Counts for <=1/3, (1/3, 2/3], >2/3",
    )

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.counts) != HISTOGRAM_BINS or any(c < 0 for c in self.counts):
            raise ValueError("Histogram needs ten non-negative counts")
        if sum(self.thirds) != sum(self.counts):
            raise ValueError("Thirds roll-up does not conserve observations")
        return self

    @property
    def total(self) -> int:
        return sum(self.counts)


class Rate(BaseModel):
    """A proportion with its denominator; value is None when undefined"""
    count: int = Field(..., ge=0)
    denominator: int = Field(..., ge=0)
    value: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    reason: Optional[str] = None

    model_config = ConfigDict(frozen=True)


class Measure(BaseModel):
    """A five-number summary, or the reason it is missing"""
    n: int = Field(..., ge=0)
    five: Optional[FiveNumber] = None
    reason: Optional[str] = None

    model_config = ConfigDict(frozen=True)


class CorpusSummary(BaseModel):
    """Aggregate measures over a set of notebooks"""
    label: str = "ALL"
    n_notebooks: int = Field(..., ge=0)
    n_executed: int = Field(..., ge=0)
    rate_executed: Rate
    rate_top_to_bottom: Rate
    rate_function_def: Rate
    rate_class_def: Rate
    rate_local_import: Rate
    rate_test_import: Rate
    rate_md: Rate
    rate_md_headings: Rate
    rate_bp4_compliant: Rate
    rate_outputs_without_counter: Rate
    lint_category_rates: Dict[str, Rate] = Field(default_factory=dict)
    lint_hits: Dict[str, int] = Field(default_factory=dict)
    fives: Dict[str, Measure] = Field(default_factory=dict)
    histograms: Dict[str, Histogram] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=True)
