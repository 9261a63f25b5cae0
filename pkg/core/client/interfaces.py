from abc import ABC, abstractmethod

from core.models import EvalRequest, EvalResult, SweepSummary, VerifyRequest


class IMZVBackend(ABC):
    @abstractmethod
    def evaluate(self, request: EvalRequest) -> EvalResult:
        """Evaluate one value and return it rendered."""
        pass

    @abstractmethod
    def verify(self, request: VerifyRequest) -> SweepSummary:
        """Run a verification suite and return its summary."""
        pass
