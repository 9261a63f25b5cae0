import logging
import multiprocessing
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from core.config import Settings, apply_settings, settings
from core.errors import MZVLabError, PrecisionError
from core.graph.state import SweepState
from core.models import ResidualReport, SweepSummary
from core.numeric.mzv import clear_cache, set_working_precision
from core.parity.reports import error_report
from core.suites.registry import get_suite

logger = logging.getLogger(__name__)


def _step(log, message: str) -> None:
    """Progress line: logged, and echoed on stderr so stdout stays report-only."""
    log(message)
    print(message, file=sys.stderr)


def _init_worker(settings_values: dict[str, Any], precision: int) -> None:
    apply_settings(Settings(**settings_values))
    set_working_precision(precision)


def _check(suite_name: str, params: dict[str, Any]) -> tuple[ResidualReport, str | None]:
    """Run one instance; domain errors become failed reports tagged with the error class."""
    suite = get_suite(suite_name)
    try:
        return suite.run(params), None
    except MZVLabError as exc:
        logger.warning("%s %s: %s", suite_name, params, exc)
        return error_report(suite_name, params, exc), type(exc).__name__
    except Exception as exc:
        logger.exception("Unexpected failure in %s %s", suite_name, params)
        return error_report(suite_name, params, exc), type(exc).__name__


def plan_node(state: SweepState) -> SweepState:
    request = state["request"]
    _step(logger.info, f"🧭 Planning sweep '{request.suite}'...")

    precision = set_working_precision(request.precision or settings.precision_digits)
    instances = get_suite(request.suite).plan(dict(request.options))
    state["instances"] = instances
    state["reports"] = [None] * len(instances)
    state["errors"] = {}
    state["pending"] = list(range(len(instances)))
    state["retries"] = 0
    state["precision"] = precision

    _step(logger.info, f"✅ Planned {len(instances)} instances at {precision} digits")

    return state


def run_checks_node(state: SweepState) -> SweepState:
    request = state["request"]
    pending = state.get("pending", [])
    retry_count = state.get("retries", 0)
    label = "" if retry_count == 0 else f" (round {retry_count + 1})"

    _step(logger.info, f"🔬 Checking {len(pending)} instances{label}...")

    instances = state["instances"]
    params = [instances[i] for i in pending]
    if settings.workers == 1 or len(params) <= 1:
        outcomes = [_check(request.suite, p) for p in params]
    else:
        # mpmath keeps one precision per process; each worker gets its own.
        with ProcessPoolExecutor(
            max_workers=settings.workers,
            mp_context=multiprocessing.get_context("spawn"),
            initializer=_init_worker,
            initargs=(settings.model_dump(), state["precision"]),
        ) as pool:
            outcomes = list(pool.map(_check, [request.suite] * len(params), params))

    reports = state["reports"]
    errors = state.get("errors", {})
    for i, (report, error) in zip(pending, outcomes):
        reports[i] = report
        if error is None:
            errors.pop(i, None)
        else:
            errors[i] = error
    state["errors"] = errors

    failed = sum(1 for i in pending if not reports[i].passed)
    if failed:
        _step(logger.warning, f"❌ {failed} of {len(pending)} instances failed{label}")
    else:
        _step(logger.info, f"✅ All {len(pending)} instances passed{label}")

    return state


def _retryable(state: SweepState) -> list[int]:
    """Failed instances whose outcome can change with precision; other domain errors are final."""
    errors = state.get("errors", {})
    return [
        i
        for i, report in enumerate(state.get("reports", []))
        if report is not None and not report.passed and errors.get(i) in (None, PrecisionError.__name__)
    ]


def escalate_precision_node(state: SweepState) -> SweepState:
    retry_num = state.get("retries", 0) + 1
    precision = state.get("precision", settings.precision_digits) + settings.precision_step

    _step(logger.info, f"🔧 Raising precision to {precision} digits (attempt {retry_num})...")

    set_working_precision(precision)
    clear_cache()
    state["precision"] = precision
    state["pending"] = _retryable(state)
    state["retries"] = retry_num

    return state


def summarize_node(state: SweepState) -> SweepState:
    request = state["request"]
    reports = sorted((r for r in state.get("reports", []) if r is not None), key=lambda r: r.key)
    errors = len(state.get("errors", {}))
    passed = sum(1 for r in reports if r.passed)
    summary = SweepSummary(
        suite=request.suite,
        total=len(reports),
        passed=passed,
        failed=len(reports) - passed - errors,
        errors=errors,
        retries=state.get("retries", 0),
        precision=state.get("precision"),
        reports=reports,
    )
    state["summary"] = summary

    _step(logger.info, f"📋 {request.suite}: {passed}/{len(reports)} passed, {errors} errors")

    return state


def should_retry(state: SweepState) -> str:
    retries = state.get("retries", 0)

    if not _retryable(state):
        return "summarize"
    elif retries < settings.max_retries:
        return "escalate"
    else:
        return "summarize"
