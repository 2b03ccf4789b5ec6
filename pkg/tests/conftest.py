import os

from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" in props and rep.when == "call":
                rows.append((props, outcome))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for props, outcome in sorted(rows, key=lambda r: r[0]["criterion"]):
        limit = f", limit {props['limit_s']}s" if "limit_s" in props else ""
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(
            f"criterion {props['criterion']:2d} {status}  {props['title']} "
            f"[tolerance: {props['tolerance']}{limit}]")
