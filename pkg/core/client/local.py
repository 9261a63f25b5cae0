from core import service
from core.client.interfaces import IMZVBackend
from core.models import EvalRequest, EvalResult, SweepSummary, VerifyRequest


class LocalBackend(IMZVBackend):
    """Calls the service layer in this process."""

    def evaluate(self, request: EvalRequest) -> EvalResult:
        return service.evaluate(request)

    def verify(self, request: VerifyRequest) -> SweepSummary:
        return service.verify(request)
