from typing import Any, Literal, Optional

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, model_validator


class IntervalSpec(BaseModel):
    """Summation window (m1, m2) or (m1, m2]; None stands for -inf / +inf."""

    model_config = ConfigDict(frozen=True)

    m1: Optional[int] = Field(None, description="Left end (exclusive); None means -inf")
    m2: Optional[int] = Field(None, description="Right end; None means +inf")
    right_closed: bool = Field(False, description="True for (m1, m2], False for (m1, m2)")

    @model_validator(mode="after")
    def validate_order(self) -> "IntervalSpec":
        if self.m1 is not None and self.m2 is not None and not self.m1 < self.m2:
            raise ValueError(f"interval needs m1 < m2, got ({self.m1},{self.m2})")
        if self.m2 is None and self.right_closed:
            raise ValueError("an infinite right end cannot be closed")
        return self

    @property
    def is_finite(self) -> bool:
        return self.m1 is not None and self.m2 is not None

    @property
    def last_point(self) -> int:
        """Largest lattice point of a finite window."""
        return self.m2 if self.right_closed else self.m2 - 1

    def lattice_points(self) -> range:
        return range(self.m1 + 1, self.last_point + 1)

    def shifted(self, n: int) -> "IntervalSpec":
        return IntervalSpec(
            m1=None if self.m1 is None else self.m1 + n,
            m2=None if self.m2 is None else self.m2 + n,
            right_closed=self.right_closed,
        )

    def __str__(self) -> str:
        left = "-inf" if self.m1 is None else str(self.m1)
        right = "inf" if self.m2 is None else str(self.m2)
        return f"({left},{right}{']' if self.right_closed else ')'}"


class ResidualReport(BaseModel):
    """Outcome of one verification instance, serialized one per JSON line."""

    model_config = ConfigDict(populate_by_name=True)

    key: str = Field(..., description="Deterministic instance key used for ordering")
    theorem: str = Field(..., description="Identity or theorem being checked")
    params: dict[str, Any] = Field(default_factory=dict, description="Replayable parameter block")
    blocks: dict[str, str] = Field(default_factory=dict, description="Named intermediate values as value±bound")
    residual: list[str] = Field(default_factory=list, description="Residual value(s); one per T-coefficient")
    residual_magnitude: float = Field(0.0, description="Largest residual magnitude (upper bound)")
    allowance: float = Field(0.0, description="Certified legitimate size of the residual")
    passed: bool = Field(
        ...,
        validation_alias=AliasChoices("passed", "pass"),
        serialization_alias="pass",
        description="Residual within allowance",
    )
    limit_gap: Optional[float] = Field(None, description="Distance to the limiting identity, when measured")
    precision: Optional[int] = Field(None, description="Working precision (digits) used")
    detail: Optional[str] = Field(None, description="Error message or extra notes")


class EvalRequest(BaseModel):
    kind: Literal["finite", "mzv", "star", "colored", "alt", "reg", "decompose", "truncated"] = Field(
        ..., description="Which evaluator to run"
    )
    index: str = Field("", description="Multi-index, e.g. '2,1'")
    interval: Optional[str] = Field(None, description="Window '(m1,m2)' or '(m1,m2]'")
    shift: str = Field("0", description="Rational shift s as 'p/q'")
    colors: Optional[str] = Field(None, description="Colors 'a1,a2@N'")
    star: bool = Field(False, description="Use weak inequalities")
    regularization: Literal["stuffle", "shuffle"] = Field("stuffle", description="Regularization kind")
    word: Optional[str] = Field(None, description="Word literal for 'decompose'")
    eps: Optional[float] = Field(None, description="Absolute error bound requested")
    m: Optional[int] = Field(None, description="Truncation point M for 'truncated'")
    precision: Optional[int] = Field(None, description="Working precision in digits")


class EvalResult(BaseModel):
    success: bool = Field(..., description="Whether evaluation succeeded")
    value: Optional[str] = Field(None, description="Rendered value (exact or value±bound)")
    error: Optional[str] = Field(None, description="Error message if evaluation failed")


class VerifyRequest(BaseModel):
    suite: str = Field(..., description="Check suite name")
    options: dict[str, Any] = Field(default_factory=dict, description="Suite options (index, q, kind, ...)")
    precision: Optional[int] = Field(None, description="Working precision in digits")


class SweepSummary(BaseModel):
    suite: str = Field(..., description="Check suite name")
    total: int = Field(0, description="Number of instances")
    passed: int = Field(0, description="Instances within allowance")
    failed: int = Field(0, description="Instances outside allowance")
    errors: int = Field(0, description="Instances that raised a domain error")
    retries: int = Field(0, description="Precision escalation rounds used")
    precision: Optional[int] = Field(None, description="Final working precision")
    reports: list[ResidualReport] = Field(default_factory=list, description="Per-instance reports")
