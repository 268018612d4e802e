import functools
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from peterson_schubert import PetersonBasis, build
from peterson_schubert.weyl import weyl_group


@functools.lru_cache(maxsize=None)
def rs_of(name):
    return build(name)


@functools.lru_cache(maxsize=None)
def basis_of(name):
    return PetersonBasis(rs_of(name))


def elem(name, word):
    """Element of ``name`` from a 1-based word string such as "1,2,1"."""
    g = weyl_group(rs_of(name))
    return g.from_word([int(c) - 1 for c in word.split(",") if c])


@pytest.fixture
def B2():
    return rs_of("B2")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(number))
