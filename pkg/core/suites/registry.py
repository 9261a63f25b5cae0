from core.errors import ParameterError
from core.suites.algebra import NumericSuite, RegLimitSuite, WordsSuite
from core.suites.identities import ExpansionSuite, KernelSuite, PropositionSuite
from core.suites.interfaces import ICheckSuite
from core.suites.parity import (
    BoundsSuite,
    CorollarySuite,
    CyclotomicSuite,
    DepthCertificateSuite,
    FiniteSuite,
    ParitySuite,
)

SUITES: dict[str, type[ICheckSuite]] = {
    suite.name: suite
    for suite in (
        PropositionSuite,
        ExpansionSuite,
        KernelSuite,
        WordsSuite,
        NumericSuite,
        RegLimitSuite,
        ParitySuite,
        FiniteSuite,
        CyclotomicSuite,
        BoundsSuite,
        CorollarySuite,
        DepthCertificateSuite,
    )
}


def get_suite(name: str) -> ICheckSuite:
    try:
        return SUITES[name]()
    except KeyError:
        raise ParameterError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
