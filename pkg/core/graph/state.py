from typing import Optional, TypedDict

from core.models import ResidualReport, SweepSummary, VerifyRequest


class SweepState(TypedDict, total=False):
    request: VerifyRequest
    instances: list[dict]
    reports: list[Optional[ResidualReport]]
    errors: dict[int, str]
    pending: list[int]
    retries: int
    precision: int
    summary: SweepSummary
