import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from npkorovkin import _kernels_py, kernels

compiled = pytest.importorskip("npkorovkin._kernels")


@pytest.mark.parametrize("n", [1, 2, 10, 101, 543])
def test_backends_agree(n):
    theta = np.concatenate([np.linspace(0.0, math.pi, 2001), chebyshev_like(n)])
    for a, b in zip(_kernels_py.lebesgue_sums(n, theta), compiled.lebesgue_sums(n, theta)):
        assert np.max(np.abs(a - b)) < 1e-12
    assert np.max(np.abs(_kernels_py.pair_matrix(n, theta) - compiled.pair_matrix(n, theta))) < 1e-12


def chebyshev_like(n):
    k = np.arange(1, n + 1)
    a = np.pi / (2 * n)
    nodes = (2 * k - 1) * a
    return np.concatenate([nodes - a, nodes + a, nodes + 1e-9])


@given(st.integers(1, 80), st.lists(st.floats(0, math.pi), min_size=1, max_size=20))
def test_weighted_sum_complex(n, thetas):
    rng = np.random.default_rng(n)
    vals = rng.normal(size=n) + 1j * rng.normal(size=n)
    t = np.asarray(thetas)
    a = _kernels_py.weighted_pair_sum(n, vals, t)
    b = compiled.weighted_pair_sum(n, vals, t)
    assert np.max(np.abs(a - b)) < 1e-11


def test_weighted_sum_is_half_pair_product():
    n = 7
    t = np.linspace(0.0, math.pi, 13)
    vals = np.arange(1.0, n + 1)
    assert np.allclose(kernels.weighted_pair_sum(n, vals, t), 0.5 * kernels.pair_matrix(n, t) @ vals)


def test_backend_selection_env():
    code = "from npkorovkin import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, NPKOROVKIN_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure"
    env["NPKOROVKIN_PURE"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "compiled"
