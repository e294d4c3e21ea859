import json

from derivedhecke.reports import AuditReport, Report, emit_report


def test_empty_audit_is_canonical():
    assert AuditReport().to_json() == '{"checks": [], "status": "pass"}\n'


def test_one_failure_fails_audit():
    a = AuditReport()
    a.add("ok", {"x": 1}, True)
    a.add("bad", {"x": 2}, Report("bad", False, {}, {"why": 1}))
    assert a.status == "fail"
    assert "witness for bad" in a.to_markdown()


def test_skip_does_not_fail():
    a = AuditReport()
    a.add("later", {}, None)
    assert a.status == "pass"
    assert a.checks[0].verdict == "skip"


def test_emit_is_byte_identical(tmp_path):
    def build():
        a = AuditReport()
        a.add("c", {"b": [1, 2], "a": "x"}, True, elapsed=0.123)
        return a

    p1 = emit_report(build(), tmp_path / "one" / "r.json")
    p2 = emit_report(build(), tmp_path / "two" / "r.json")
    assert p1.read_bytes() == p2.read_bytes()
    assert (tmp_path / "one" / "r.md").exists()
    timings = json.loads((tmp_path / "one" / "r.timings.json").read_text())
    assert timings == [["c", 0.123]]
    assert "elapsed" not in p1.read_text()
