from abc import ABC, abstractmethod
from typing import Any

from core.models import ResidualReport


class ICheckSuite(ABC):
    name: str = ""
    description: str = ""

    @abstractmethod
    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        """Enumerate the instances to check; the order and content depend only on the options."""
        pass

    @abstractmethod
    def run(self, params: dict[str, Any]) -> ResidualReport:
        """Check one planned instance."""
        pass
