import pytest

from premetric.abelian_groups import FinAbGroup
from premetric.catalog import builtin_catalog
from premetric.quadratic_forms import form_new


@pytest.fixture(scope="session")
def catalog():
    return {spec.name: spec.to_form() for spec in builtin_catalog()}


def make(orders, diag, off=None, name=""):
    return form_new(FinAbGroup(tuple(orders)), list(diag), off or {}, name)


# criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
