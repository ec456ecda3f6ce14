from hypothesis import HealthCheck, settings

settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[i])
