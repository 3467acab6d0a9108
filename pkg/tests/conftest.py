import pytest

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.keywords.get("acceptance_id")
    if marker is None:
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is not None:
        _ACCEPTANCE[crit] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE, key=lambda c: int(c.split()[0])):
        terminalreporter.write_line(f"[{_ACCEPTANCE[crit]}] criterion {crit}")


@pytest.fixture
def criterion(request, record_property):
    """Tag a test as an acceptance criterion: ``criterion("2 lambda(9,9) window")``."""
    request.node.keywords["acceptance_id"] = True

    def tag(label):
        record_property("criterion", label)

    return tag


def _build_corpus(limit=120):
    """Semiprimes (10A+d1)(10B+d2), 1 <= A <= B <= limit, whose class hypotheses hold."""
    from sympy import isprime

    from endsin1.residues import DigitClass, offset_params

    out = []
    for dc in DigitClass:
        d1, d2 = dc.value
        for A in range(1, limit + 1):
            f = 10 * A + d1
            if not isprime(f):
                continue
            for B in range(A, limit + 1):
                g = 10 * B + d2
                if isprime(g) and offset_params(f * g, dc) is not None:
                    out.append((f * g, A, B, dc))
    return out


@pytest.fixture(scope="session")
def corpus():
    return _build_corpus()
