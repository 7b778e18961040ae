import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nilcohom import catalog  # noqa: E402
from nilcohom.complex import build_differential, cohomology  # noqa: E402
from nilcohom.symplectic import check_symplectic  # noqa: E402

_SETUPS = {}


def setup(name):
    """(entry, d, coh) for a catalog name, built once per session."""
    if name not in _SETUPS:
        entry = catalog.load(name)
        d = build_differential(entry.algebra)
        _SETUPS[name] = (entry, d, cohomology(d))
    return _SETUPS[name]


_SYMPLECTIC = {}


def symplectic(name, form_name):
    key = (name, form_name)
    if key not in _SYMPLECTIC:
        entry, d, coh = setup(name)
        _SYMPLECTIC[key] = check_symplectic(d, entry.forms[form_name])
    return _SYMPLECTIC[key]


def catalog_pairs():
    return [(name, f) for name in catalog.BUILTIN for f in catalog.load(name).forms]


@pytest.fixture
def prop45():
    return setup("prop45")


@pytest.fixture
def kt():
    return setup("kt")


# acceptance criteria bookkeeping: test_acceptance records verdicts here
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        desc, parts = ACCEPTANCE[num]
        ok = all(parts.values())
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {desc}")
        for part, passed in parts.items():
            if not passed:
                terminalreporter.write_line(f"    failed part: {part}")
