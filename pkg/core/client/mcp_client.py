import asyncio
import logging
import threading
from typing import Any, Optional, TypeVar

from fastmcp import Client
from pydantic import BaseModel

from core.client.interfaces import IMZVBackend
from core.client.local import LocalBackend
from core.config import settings
from core.models import EvalRequest, EvalResult, SweepSummary, VerifyRequest

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def run_blocking(coroutine_fn, *args):
    """Run a coroutine function to completion from sync code, even under a running event loop."""
    try:
        asyncio.get_running_loop()
    except RuntimeError:
        return asyncio.run(coroutine_fn(*args))

    outcome: dict[str, Any] = {}

    def _worker():
        try:
            outcome["value"] = asyncio.run(coroutine_fn(*args))
        except Exception as exc:  # pragma: no cover - thread branch
            outcome["error"] = exc

    worker = threading.Thread(target=_worker, daemon=True)
    worker.start()
    worker.join()
    if "error" in outcome:
        raise outcome["error"]
    return outcome["value"]


def tool_payload(tool_result) -> Optional[dict[str, Any]]:
    """The tool's return value as a dict: typed `data` first, then `structured_content`."""
    data = getattr(tool_result, "data", None)
    if isinstance(data, BaseModel):
        return data.model_dump()
    if isinstance(data, dict):
        return data
    structured = getattr(tool_result, "structured_content", None)
    if not isinstance(structured, dict):
        return None
    wrapped = structured.get("result")
    return wrapped if isinstance(wrapped, dict) else structured


def tool_error_text(tool_result) -> Optional[str]:
    lines = [
        block.text.strip()
        for block in getattr(tool_result, "content", None) or []
        if isinstance(getattr(block, "text", None), str) and block.text.strip()
    ]
    return "\n".join(lines) or None


class MCPBackend(IMZVBackend):
    """Talks to the in-process FastMCP server; falls back to LocalBackend on transport errors."""

    def __init__(self, fallback: Optional[IMZVBackend] = None):
        self.fallback = fallback or LocalBackend()

    def evaluate(self, request: EvalRequest) -> EvalResult:
        try:
            tool_result = run_blocking(self._call_tool, "evaluate", request.model_dump())
        except Exception as exc:
            logger.exception("MCP evaluate failed, falling back to in-process: %s", exc)
            return self.fallback.evaluate(request)
        if getattr(tool_result, "is_error", False):
            return EvalResult(success=False, error=tool_error_text(tool_result) or "MCP tool reported an error.")
        result = self._validated(tool_result, EvalResult)
        return result or EvalResult(success=False, error="MCP tool returned no structured payload.")

    def verify(self, request: VerifyRequest) -> SweepSummary:
        try:
            tool_result = run_blocking(self._call_tool, "verify", request.model_dump())
        except Exception as exc:
            logger.exception("MCP verify failed, falling back to in-process: %s", exc)
            return self.fallback.verify(request)
        summary = None if getattr(tool_result, "is_error", False) else self._validated(tool_result, SweepSummary)
        if summary is None:
            logger.warning("MCP verify returned no summary (%s), running in-process", tool_error_text(tool_result))
            return self.fallback.verify(request)
        return summary

    @staticmethod
    def _validated(tool_result, model: type[ModelT]) -> Optional[ModelT]:
        payload = tool_payload(tool_result)
        return None if payload is None else model.model_validate(payload)

    async def _call_tool(self, name: str, request_payload: dict[str, Any]):
        from mcp_servers.mzv_server.main import mcp as mzv_mcp_server

        timeout = settings.mcp_timeout_seconds
        async with Client(mzv_mcp_server, timeout=timeout, init_timeout=timeout) as client:
            return await client.call_tool(name, {"request": request_payload}, timeout=timeout, raise_on_error=False)
