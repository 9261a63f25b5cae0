"""FastMCP server exposing evaluation and verification sweeps."""

import logging
import threading
from pathlib import Path

from fastmcp import FastMCP

from core import service
from core.errors import MZVLabError
from core.models import EvalRequest, EvalResult, SweepSummary, VerifyRequest
from core.parity.reports import error_report

# Initialize FastMCP app
mcp = FastMCP("MZV Lab Server")

# Set up file logger (not stderr, to avoid MCP protocol issues)
log_file = Path(__file__).parent.parent.parent / "mzv_server.log"
logger = logging.getLogger("mzv_mcp")
logger.setLevel(logging.DEBUG)
file_handler = logging.FileHandler(str(log_file), mode="a")
file_handler.setFormatter(logging.Formatter("%(asctime)s [%(levelname)s] %(message)s"))
logger.handlers = [file_handler]

# Working precision is process-global: one sweep at a time, evaluations wait for it.
_sweep_lock = threading.Lock()


@mcp.tool()
def evaluate(request: EvalRequest) -> EvalResult:
    """Evaluate a finite, convergent, colored, alternating or regularized value."""
    logger.info(f"evaluate kind={request.kind} index={request.index!r}")
    try:
        # Waits for a running sweep instead of changing its precision.
        with _sweep_lock:
            result = service.evaluate(request)
    except Exception as e:
        logger.exception(f"Error in evaluate: {e}")
        return EvalResult(success=False, error=f"Error evaluating: {e}")
    logger.info(f"evaluate success={result.success}")
    return result


@mcp.tool()
def verify(request: VerifyRequest) -> SweepSummary:
    """Run a verification suite; failures are reported per instance, never raised."""
    acquired = _sweep_lock.acquire(blocking=False)
    if not acquired:
        busy = error_report(request.suite, request.options, RuntimeError("another sweep is already running"))
        return SweepSummary(suite=request.suite, total=1, errors=1, reports=[busy])

    try:
        logger.info("=" * 60)
        logger.info(f"verify suite={request.suite} options={request.options}")
        summary = service.verify(request)
        logger.info(f"verify done: {summary.passed}/{summary.total} passed, {summary.errors} errors")
        return summary
    except MZVLabError as e:
        logger.warning(f"verify rejected: {e}")
        return SweepSummary(suite=request.suite, total=1, errors=1,
                            reports=[error_report(request.suite, request.options, e)])
    except Exception as e:
        logger.exception(f"Error in verify: {e}")
        return SweepSummary(suite=request.suite, total=1, errors=1,
                            reports=[error_report(request.suite, request.options, e)])
    finally:
        _sweep_lock.release()


if __name__ == "__main__":
    mcp.run()
