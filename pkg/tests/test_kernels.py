import os
import subprocess
import sys
from array import array

import pytest
from hypothesis import given, settings, strategies as st

from peterson_schubert import kernels

compiled = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernel not built")


@st.composite
def dp_inputs(draw):
    """Random layered automata: transitions only go to higher-numbered states."""
    rank = draw(st.integers(1, 4))
    n = draw(st.integers(1, 12))
    trans = []
    for s in range(n):
        for _ in range(rank):
            trans.append(draw(st.integers(s + 1, n)) if s + 1 < n and draw(st.booleans()) else -1)
    trans = [t if t < n else -1 for t in trans]
    word = draw(st.lists(st.integers(0, rank - 1), max_size=30))
    heights = draw(st.lists(st.integers(1, 40), min_size=len(word), max_size=len(word)))
    target = draw(st.integers(0, n - 1))
    return trans, rank, word, heights, n, target


@compiled
@settings(max_examples=300, deadline=None)
@given(dp_inputs())
def test_backends_agree(args):
    assert kernels.billey_dp(*args) == kernels.billey_dp_python(*args)


@compiled
def test_overflow_falls_back_to_big_integers():
    # a single chain 0 -> 1 -> ... -> 6 on one letter, with huge heights
    n = 7
    trans = [s + 1 if s + 1 < n else -1 for s in range(n)]
    word = [0] * 12
    heights = [2 ** 40 + k for k in range(12)]
    want = kernels.billey_dp_python(trans, 1, word, heights, n, n - 1)
    assert want > 2 ** 63
    assert kernels.billey_dp(array("i", trans), 1, array("i", word), array("q", heights), n, n - 1) == want


def test_empty_word():
    assert kernels.billey_dp([-1], 1, [], [], 1, 0) == 1
    assert kernels.billey_dp_python([1, -1], 1, [], [], 2, 1) == 0


def test_pure_env_forces_fallback():
    code = "from peterson_schubert import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, PETERSON_SCHUBERT_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_pure_backend_gives_same_multiplicity():
    code = (
        "from peterson_schubert import build, multiplicity, weyl_group\n"
        "rs = build('E8'); g = weyl_group(rs)\n"
        "print(multiplicity(rs, rs.full, g.default_coxeter(rs.full)))"
    )
    env = dict(os.environ, PETERSON_SCHUBERT_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "51840"
