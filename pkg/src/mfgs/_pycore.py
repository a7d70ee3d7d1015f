"""Pure-Python kernels: complex polygamma and the dense Hermitian eigensolver.

Mirrors ``_core.pyx`` operation for operation; used when the compiled
extension is unavailable or ``MFGS_BACKEND=python`` is set.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

# Bernoulli numbers B_2 .. B_16
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)
_ASYMPTOTIC_START = 30.0
_EPS = np.finfo(float).eps


def _reflection_terms(z: complex) -> tuple[complex, complex]:
    """pi*cot(pi z) and pi^2/sin^2(pi z) for Im z >= 0, overflow-free."""
    w = cmath.exp(2j * math.pi * z)  # |w| <= 1
    cot = 1j * (w + 1.0) / (w - 1.0)
    inv_sin2 = -4.0 * w / (w - 1.0) ** 2
    return math.pi * cot, math.pi * math.pi * inv_sin2


def _digamma_upper(z: complex) -> complex:
    if z.real < 0.5:
        pcot, _ = _reflection_terms(z)
        return _digamma_upper(1.0 - z) - pcot
    acc = 0j
    while z.real <= _ASYMPTOTIC_START:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    series = 0j
    power = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        series += b / (2 * k) * power
        power *= inv2
    return acc + cmath.log(z) - 0.5 / z - series


def _trigamma_upper(z: complex) -> complex:
    if z.real < 0.5:
        _, pis2 = _reflection_terms(z)
        return pis2 - _trigamma_upper(1.0 - z)
    acc = 0j
    while z.real <= _ASYMPTOTIC_START:
        acc += 1.0 / (z * z)
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    series = 0j
    power = inv2 * inv
    for b in _BERNOULLI:
        series += b * power
        power *= inv2
    return acc + inv + 0.5 * inv2 + series


def digamma(z: complex) -> complex:
    z = complex(z)
    if z.imag < 0.0:
        return _digamma_upper(z.conjugate()).conjugate()
    return _digamma_upper(z)


def trigamma(z: complex) -> complex:
    z = complex(z)
    if z.imag < 0.0:
        return _trigamma_upper(z.conjugate()).conjugate()
    return _trigamma_upper(z)


def tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Householder reduction of a Hermitian matrix to real symmetric tridiagonal form.

    Returns ``(d, e, Q)`` with ``a = Q T Q^H``, ``T`` having diagonal ``d`` and
    real non-negative off-diagonal ``e`` (``e[i]`` couples ``i`` and ``i+1``;
    ``e[-1] = 0``).
    """
    a = np.array(a, dtype=np.complex128, order="C", copy=True)
    n = a.shape[0]
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = a[k + 1 :, k]
        norm = math.sqrt(float(np.vdot(x, x).real))
        if norm == 0.0:
            continue
        x0 = x[0]
        ax0 = abs(x0)
        phase = x0 / ax0 if ax0 > 0.0 else 1.0 + 0j
        alpha = -phase * norm
        v = x.copy()
        v[0] -= alpha
        v /= math.sqrt(float(np.vdot(v, v).real))
        sub = a[k + 1 :, k + 1 :]
        p = sub @ v
        kappa = np.vdot(v, p).real
        w = p - kappa * v
        sub -= 2.0 * (np.outer(v, w.conj()) + np.outer(w, v.conj()))
        a[k + 1 :, k] = 0.0
        a[k, k + 1 :] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = np.conj(alpha)
        qs = q[:, k + 1 :]
        qs -= 2.0 * np.outer(qs @ v, v.conj())

    d = a.diagonal().real.copy()
    e = np.zeros(n)
    phase = 1.0 + 0j
    for i in range(n - 1):
        sub_el = a[i + 1, i]
        mag = abs(sub_el)
        e[i] = mag
        if mag > 0.0:
            phase = phase * sub_el / mag
        q[:, i + 1] *= phase
    return d, e, q


def tql_implicit(d: np.ndarray, e: np.ndarray, z: np.ndarray, max_iter: int = 60) -> None:
    """Implicit-shift QL on a real symmetric tridiagonal matrix, in place.

    ``z`` holds the accumulated transform as rows (``z[i]`` is the i-th column
    of the eigenvector matrix) so the plane rotations act on contiguous rows.
    """
    n = d.shape[0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise ArithmeticError(f"QL iteration did not converge for eigenvalue {l}")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi = z[i]
                zi1 = z[i + 1].copy()
                z[i + 1] = s * zi + c * zi1
                z[i] = c * zi - s * zi1
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0


def eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d, e, q = tridiagonalize(a)
    zt = np.ascontiguousarray(q.T)
    tql_implicit(d, e, zt)
    order = np.argsort(d, kind="stable")
    return d[order], np.ascontiguousarray(zt[order].T)
