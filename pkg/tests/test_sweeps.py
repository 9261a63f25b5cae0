import json
import threading

import pytest
from mpmath import mp
from pydantic import ValidationError

from app.cli import main
from app.render import render_sweep, report_line
from core import service
from core.client.local import LocalBackend
from core.client.mcp_client import MCPBackend
from core.config import Settings, load_settings, settings
from core.errors import ParameterError
from core.graph.nodes import should_retry
from core.models import EvalRequest, ResidualReport, SweepSummary, VerifyRequest
from core.suites.registry import SUITES, get_suite


def report(passed: bool, key: str = "k") -> ResidualReport:
    return ResidualReport(key=key, theorem="t", passed=passed)


class TestSuitePlans:
    def test_registry(self):
        assert {"prop23", "expansion", "kernel", "words", "numeric", "reglimit", "parity", "finite",
                "cyclotomic", "bounds", "corollaryM", "depthcert"} == set(SUITES)

    def test_unknown_suite(self):
        with pytest.raises(ParameterError):
            get_suite("nope")

    @pytest.mark.parametrize("name", ["prop23", "expansion", "words", "finite", "numeric"])
    def test_plans_are_deterministic(self, name):
        options = {"seed": 7}
        assert get_suite(name).plan(options) == get_suite(name).plan(options)

    def test_seed_changes_sample(self):
        suite = get_suite("finite")
        assert suite.plan({"seed": 1}) != suite.plan({"seed": 2})

    def test_parity_restriction(self):
        plan = get_suite("parity").plan({"index": "2", "q": 2})
        assert plan == [{"kind": "stuffle", "k": "2", "q": 2}, {"kind": "shuffle", "k": "2", "q": 2}]

    def test_bounds_lemma_restriction(self):
        plan = get_suite("bounds").plan({"lemma": "star-log", "n_max": 1000})
        assert [p["r"] for p in plan] == [1, 2, 3]

    def test_depthcert_filters_by_q(self):
        plan = get_suite("depthcert").plan({"q": 3, "max_weight": 4})
        assert plan and all(p["k"].endswith("3") for p in plan)


class TestSuiteRuns:
    @pytest.mark.parametrize("name", ["prop23", "expansion", "words"])
    def test_first_instances_pass(self, name):
        suite = get_suite(name)
        for params in suite.plan({"seed": 3})[:15]:
            outcome = suite.run(params)
            assert outcome.passed, outcome.detail

    def test_kernel_instances(self):
        suite = get_suite("kernel")
        for params in suite.plan({})[:6]:
            assert suite.run(params).passed

    def test_numeric_oracles(self):
        suite = get_suite("numeric")
        for params in suite.plan({"pairs": 5}):
            assert suite.run(params).passed

    def test_depth_certificate_equal_parity_passes(self):
        outcome = get_suite("depthcert").run({"k": "2,2"})
        assert outcome.passed
        assert "no certificate" in outcome.detail

    def test_cyclotomic_trivial_check(self):
        outcome = get_suite("cyclotomic").run({"kind": "shuffle", "k": "1,2", "q": 2, "check": "trivial"})
        assert outcome.passed

    @pytest.mark.slow
    def test_reglimit(self):
        suite = get_suite("reglimit")
        for params in suite.plan({}):
            assert suite.run(params).passed


class TestGraph:
    def test_retry_failed_instance(self):
        assert should_retry({"reports": [report(False)], "errors": {}, "retries": 0}) == "escalate"

    def test_retry_budget(self):
        state = {"reports": [report(False)], "errors": {}, "retries": settings.max_retries}
        assert should_retry(state) == "summarize"

    def test_domain_errors_are_final(self):
        assert should_retry({"reports": [report(False)], "errors": {0: "ParameterError"}, "retries": 0}) == "summarize"

    def test_precision_errors_retry(self):
        assert should_retry({"reports": [report(False)], "errors": {0: "PrecisionError"}, "retries": 0}) == "escalate"

    def test_all_passed(self):
        assert should_retry({"reports": [report(True)], "errors": {}, "retries": 0}) == "summarize"

    def test_sweep(self):
        summary = service.verify(VerifyRequest(suite="parity", options={"index": "2", "q": 2, "kind": "shuffle"}))
        assert (summary.total, summary.passed, summary.errors, summary.retries) == (1, 1, 0, 0)
        assert summary.reports[0].theorem == "parity-shuffle"

    def test_errors_are_reported_not_raised(self):
        summary = service.verify(VerifyRequest(suite="parity", options={"index": "2", "q": 1, "kind": "stuffle"}))
        assert summary.total == 1
        assert summary.errors == 1
        assert summary.reports[0].detail.startswith("ParameterError")

    def test_unknown_suite(self):
        with pytest.raises(ParameterError):
            service.verify(VerifyRequest(suite="nope"))


class TestSweepDeterminism:
    request = VerifyRequest(suite="kernel", options={"centers": 6}, precision=40)

    def test_worker_count_does_not_change_output(self, monkeypatch):
        monkeypatch.setattr(settings, "workers", 1)
        serial = service.verify(self.request).model_dump_json()
        monkeypatch.setattr(settings, "workers", 4)
        pooled = [service.verify(self.request).model_dump_json() for _ in range(2)]
        assert pooled == [serial, serial]

    def test_reports_sorted_by_key(self, monkeypatch):
        monkeypatch.setattr(settings, "workers", 4)
        keys = [r.key for r in service.verify(self.request).reports]
        assert keys == sorted(keys)

    def test_sweep_restores_precision(self, monkeypatch):
        monkeypatch.setattr(settings, "workers", 4)
        before = (mp.prec, mp.dps)
        summary = service.verify(self.request)
        assert summary.precision == 40
        assert (mp.prec, mp.dps) == before


class TestService:
    def test_request_precision_is_scoped(self):
        before = mp.dps
        result = service.evaluate(EvalRequest(kind="mzv", index="2", precision=80))
        assert result.success
        assert mp.dps == before

    def test_server_evaluate_waits_for_sweep(self):
        from mcp_servers.mzv_server import main as server

        tool = getattr(server.evaluate, "fn", server.evaluate)
        results = []
        request = EvalRequest(kind="finite", index="1,2", interval="(0,4)", precision=80)
        with server._sweep_lock:
            worker = threading.Thread(target=lambda: results.append(tool(request)))
            worker.start()
            worker.join(timeout=0.3)
            assert worker.is_alive()
            assert mp.dps == 50
        worker.join(timeout=30)
        assert results[0].value == "5/12"
        assert mp.dps == 50

    def test_finite(self):
        result = service.evaluate(EvalRequest(kind="finite", index="1,2", interval="(0,4)"))
        assert result.success and result.value == "5/12"

    def test_star_shifted(self):
        result = service.evaluate(EvalRequest(kind="finite", index="2", interval="(0,3)", shift="1/2"))
        assert result.value == "136/225"

    def test_truncated(self):
        assert service.evaluate(EvalRequest(kind="truncated", index="1,2", m=4)).value == "5/12"

    def test_decompose_word(self):
        result = service.evaluate(EvalRequest(kind="decompose", word="y:1,1"))
        assert result.value == "(-1/2·y2) + (1/2·∅) * y1^*2"

    def test_reg(self):
        result = service.evaluate(EvalRequest(kind="reg", index="1,1", regularization="shuffle"))
        assert result.success and result.value.startswith("(1/2)·T^2")

    def test_domain_error(self):
        result = service.evaluate(EvalRequest(kind="finite", index="1,2"))
        assert not result.success
        assert result.error.startswith("ParameterError")

    def test_divergent(self):
        result = service.evaluate(EvalRequest(kind="mzv", index="2,1"))
        assert not result.success
        assert "AdmissibilityError" in result.error

    def test_backends_agree(self):
        request = EvalRequest(kind="finite", index="1,1", interval="(0,2]", star=True)
        assert LocalBackend().evaluate(request).value == "7/4"
        assert MCPBackend().evaluate(request).value == "7/4"


class TestConfig:
    def test_overrides(self):
        assert load_settings(trunc_n=500, seed=None).trunc_n == 500

    def test_config_file(self, tmp_path):
        path = tmp_path / "mzvlab.env"
        path.write_text("MZVLAB_TRUNC_N=750\nworkers=2\n")
        loaded = load_settings(path, workers=3)
        assert loaded.trunc_n == 750
        assert loaded.workers == 3

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_settings(tmp_path / "missing.env")

    def test_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            Settings(trunc_n=0)

    def test_rejects_tiny_eps(self):
        with pytest.raises(ValidationError):
            Settings(default_eps=1e-20)


class TestRender:
    def test_json_line(self):
        line = json.loads(report_line(report(True, "a")))
        assert line["pass"] is True and line["key"] == "a"

    def test_sweep_lines(self):
        summary = SweepSummary(suite="s", total=1, passed=1, reports=[report(True)])
        lines = render_sweep(summary)
        assert len(lines) == 2
        assert json.loads(lines[-1])["summary"]["passed"] == 1

    def test_table(self):
        summary = SweepSummary(suite="s", total=1, passed=0, failed=1, reports=[report(False)])
        lines = render_sweep(summary, "table")
        assert lines[0].startswith("pass")
        assert lines[1].startswith("FAIL")
        assert lines[-1].startswith("s: 0/1 passed")


class TestCli:
    def test_eval(self, capsys):
        assert main(["eval", "finite", "--index", "1,2", "--interval", "(0,4)"]) == 0
        assert capsys.readouterr().out.strip() == "5/12"

    def test_bad_index(self, capsys):
        assert main(["eval", "finite", "--index", "1,0", "--interval", "(0,4)"]) == 2
        assert "ParseError" in capsys.readouterr().err

    def test_unknown_suite(self):
        assert main(["verify", "nope"]) == 2

    def test_bad_setting(self):
        assert main(["--trunc", "0", "verify", "parity"]) == 2

    def test_verify(self, capsys):
        assert main(["verify", "parity", "--index", "2", "--q", "2", "--kind", "stuffle"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert json.loads(lines[0])["pass"] is True
        assert json.loads(lines[-1])["summary"]["total"] == 1

    def test_verify_failure_exit_code(self, capsys):
        assert main(["verify", "parity", "--index", "2", "--q", "1", "--kind", "stuffle"]) == 1
        assert json.loads(capsys.readouterr().out.strip().splitlines()[-1])["summary"]["errors"] == 1
