"""Dense Hermitian eigensolver and polygamma kernels, run on each backend."""

import numpy as np
import pytest

from mfgs import _backend


def _random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


def test_backend_selected():
    assert _backend.BACKEND in ("compiled", "python")


def test_pauli_x(backend):
    w, v = backend.eigh(np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(w, [-1, 1], atol=1e-15)
    assert np.allclose(np.abs(v.conj().T @ v), np.eye(2), atol=1e-15)


def test_diagonal_input_sorted(backend):
    d = np.array([3.0, -1.0, 2.0, 0.5])
    w, v = backend.eigh(np.diag(d).astype(complex))
    assert np.array_equal(w, np.sort(d))
    assert np.allclose(np.abs(v), np.eye(4)[:, np.argsort(d)], atol=0)


@pytest.mark.parametrize("n", [1, 2, 3, 17, 100])
def test_random_hermitian(backend, n):
    h = _random_hermitian(n, n)
    w, v = backend.eigh(h)
    assert np.all(np.diff(w) >= 0)
    norm = np.linalg.norm(h, 2)
    assert np.abs(h @ v - v * w).max() < 1e-10 * norm
    assert np.abs(v.conj().T @ v - np.eye(n)).max() < 1e-11
    assert np.abs(w - np.linalg.eigvalsh(h)).max() < 1e-10 * norm


def test_degenerate_spectrum(backend):
    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    h = q @ np.diag([1.0, 1.0, 1.0, 2.0, 2.0, -3.0]) @ q.conj().T
    w, v = backend.eigh(h)
    assert np.allclose(w, [-3, 1, 1, 1, 2, 2], atol=1e-13)
    assert np.abs(h @ v - v * w).max() < 1e-13


def test_tridiagonal_form(backend):
    h = _random_hermitian(9, 3)
    d, e, q = backend.tridiagonalize(h)
    t = np.diag(d) + np.diag(e[:-1], 1) + np.diag(e[:-1], -1)
    assert np.all(e >= 0)
    assert np.abs(q @ t @ q.conj().T - h).max() < 1e-13


def test_ql_iteration_budget(backend):
    d = np.array([1.0, 2.0, 3.0])
    e = np.array([1.0, 1.0, 0.0])
    z = np.eye(3, dtype=complex)
    with pytest.raises(ArithmeticError):
        backend.tql_implicit(d, e, z, 0)


def test_backends_agree():
    from mfgs import _pycore

    core = pytest.importorskip("mfgs._core")
    h = _random_hermitian(40, 11)
    assert np.abs(core.eigh(h)[0] - _pycore.eigh(h)[0]).max() < 1e-12
    for z in (1 + 0.5j, -2.5 + 0.1j, 0.3 - 4j, 1e-3j):
        assert abs(core.digamma(z) - _pycore.digamma(z)) < 1e-14 * abs(_pycore.digamma(z))
        assert abs(core.trigamma(z) - _pycore.trigamma(z)) < 1e-14 * abs(_pycore.trigamma(z))


def _run_with_backend(choice):
    import json
    import os
    import subprocess
    import sys

    code = (
        "import json, mfgs\n"
        "from mfgs.rc_map import rc_steady_state\n"
        "s = rc_steady_state(mfgs.QubitParams.from_tilt(1.0, 0.5), 1.0, 10.0, 2.0)\n"
        "print(json.dumps([mfgs.BACKEND, s.p_e, s.c_ge.real]))\n"
    )
    env = dict(os.environ, MFGS_BACKEND=choice)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_environment_selects_fallback():
    name, p_e, c = _run_with_backend("python")
    assert name == "python"
    pytest.importorskip("mfgs._core")
    name2, p_e2, c2 = _run_with_backend("compiled")
    assert name2 == "compiled"
    assert abs(p_e - p_e2) < 1e-12 and abs(c - c2) < 1e-12
