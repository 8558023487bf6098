import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bhpc import kernels
from bhpc.axioms import check_bihom_poisson
from bhpc.catalog import GeneratorConfig, builtin, generate_pipeline, mutate, names
from bhpc.scalars import GF, QQ

needs_compiled = pytest.mark.skipif(not kernels.compiled_available(), reason="extension not built")


@pytest.fixture
def backend():
    before = kernels.get_backend()
    yield kernels.set_backend
    kernels.set_backend(before)


def reference(C, X, Y, p):
    return np.einsum("ra,sb,abm->rsm", X.astype(object), Y.astype(object), C.astype(object)) % p


@settings(max_examples=60)
@given(n=st.integers(1, 6), r=st.integers(0, 5), s=st.integers(0, 5), seed=st.integers(0, 2**32 - 1),
       p=st.sampled_from([3, 7, 101, 1000003, (1 << 25) - 39]))
def test_kernels_match_reference(n, r, s, seed, p):
    rng = np.random.default_rng(seed)
    C = rng.integers(0, p, size=(n, n, n), dtype=np.int64) * (rng.random((n, n, n)) < 0.4)
    X = rng.integers(0, p, size=(r, n), dtype=np.int64)
    Y = rng.integers(0, p, size=(s, n), dtype=np.int64)
    F = GF(p)
    want = reference(C, X, Y, p)
    before = kernels.get_backend()
    try:
        kernels.set_backend("python")
        py = kernels.bilinear_outer(F, C, X, Y)
        assert py.shape == (r, s, n) and np.array_equal(py.astype(object), want)
        if kernels.compiled_available():
            kernels.set_backend("compiled")
            assert np.array_equal(kernels.bilinear_outer(F, C, X, Y), py)
    finally:
        kernels.set_backend(before)


def test_rational_always_python(backend):
    if kernels.compiled_available():
        backend("compiled")
    assert kernels.active_backend(QQ) == "python"


@needs_compiled
@pytest.mark.parametrize("name", names())
def test_suite_identical_across_backends(name, backend):
    for seed in range(5):
        B = mutate(builtin(name, GF(7)), seed)
        backend("python")
        a = check_bihom_poisson(B).to_dict(timing=False)
        backend("compiled")
        assert check_bihom_poisson(B).to_dict(timing=False) == a


@needs_compiled
def test_generated_identical_across_backends(backend):
    for seed in range(4):
        B = generate_pipeline(GeneratorConfig(seed=seed, orders=(2, 2), field=GF(7), base="dual_group")).bundle
        backend("python")
        a = check_bihom_poisson(B).to_dict(timing=False)
        backend("compiled")
        assert check_bihom_poisson(B).to_dict(timing=False) == a


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.set_backend("gpu")


def test_env_var_forces_pure_python():
    env = dict(os.environ, BHPC_PURE_PYTHON="1")
    code = "from bhpc import kernels; from bhpc.scalars import GF; print(kernels.active_backend(GF(7)))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
