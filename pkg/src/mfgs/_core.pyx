# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: complex polygamma and the dense Hermitian eigensolver.

Same algorithms as ``_pycore``; the eigensolver loops run without the GIL so
scan workers overlap.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot, copysign, log, atan2, exp, cos, sin, M_PI
from libc.float cimport DBL_EPSILON

cnp.import_array()

cdef double[8] _BERNOULLI
_BERNOULLI[:] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
                 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0]
cdef double _ASYMPTOTIC_START = 30.0


cdef inline double complex _clog(double complex z) nogil:
    return log(hypot(z.real, z.imag)) + 1j * atan2(z.imag, z.real)


cdef inline double complex _cexp_2ipi(double complex z) nogil:
    # exp(2 i pi z) for Im z >= 0
    cdef double mag = exp(-2.0 * M_PI * z.imag)
    cdef double ang = 2.0 * M_PI * z.real
    return mag * cos(ang) + 1j * mag * sin(ang)


cdef double complex _digamma_upper(double complex z) nogil:
    cdef double complex w, acc = 0, inv2, power, series = 0
    cdef int k
    if z.real < 0.5:
        w = _cexp_2ipi(z)
        return _digamma_upper(1.0 - z) - M_PI * 1j * (w + 1.0) / (w - 1.0)
    while z.real <= _ASYMPTOTIC_START:
        acc = acc - 1.0 / z
        z = z + 1.0
    inv2 = 1.0 / (z * z)
    power = inv2
    for k in range(8):
        series = series + _BERNOULLI[k] / (2 * (k + 1)) * power
        power = power * inv2
    return acc + _clog(z) - 0.5 / z - series


cdef double complex _trigamma_upper(double complex z) nogil:
    cdef double complex w, acc = 0, inv, inv2, power, series = 0
    cdef int k
    if z.real < 0.5:
        w = _cexp_2ipi(z)
        return M_PI * M_PI * (-4.0 * w / ((w - 1.0) * (w - 1.0))) - _trigamma_upper(1.0 - z)
    while z.real <= _ASYMPTOTIC_START:
        acc = acc + 1.0 / (z * z)
        z = z + 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    power = inv2 * inv
    for k in range(8):
        series = series + _BERNOULLI[k] * power
        power = power * inv2
    return acc + inv + 0.5 * inv2 + series


def digamma(z):
    cdef double complex zc = complex(z)
    if zc.imag < 0.0:
        return _digamma_upper(zc.conjugate()).conjugate()
    return _digamma_upper(zc)


def trigamma(z):
    cdef double complex zc = complex(z)
    if zc.imag < 0.0:
        return _trigamma_upper(zc.conjugate()).conjugate()
    return _trigamma_upper(zc)


cdef void _householder(double complex[:, ::1] a, double complex[:, ::1] q,
                       double complex[::1] v, double complex[::1] p) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], k, i, j
    cdef double norm, ax0, vnorm, kappa
    cdef double complex x0, phase, alpha, acc
    for k in range(n - 2):
        norm = 0.0
        for i in range(k + 1, n):
            norm += a[i, k].real * a[i, k].real + a[i, k].imag * a[i, k].imag
        norm = sqrt(norm)
        if norm == 0.0:
            continue
        x0 = a[k + 1, k]
        ax0 = hypot(x0.real, x0.imag)
        if ax0 > 0.0:
            phase = x0 / ax0
        else:
            phase = 1.0
        alpha = -phase * norm
        vnorm = 0.0
        for i in range(k + 1, n):
            v[i] = a[i, k]
        v[k + 1] = v[k + 1] - alpha
        for i in range(k + 1, n):
            vnorm += v[i].real * v[i].real + v[i].imag * v[i].imag
        vnorm = sqrt(vnorm)
        for i in range(k + 1, n):
            v[i] = v[i] / vnorm
        # p = A22 v, kappa = v^H p
        kappa = 0.0
        for i in range(k + 1, n):
            acc = 0.0
            for j in range(k + 1, n):
                acc = acc + a[i, j] * v[j]
            p[i] = acc
            kappa += (v[i].conjugate() * acc).real
        for i in range(k + 1, n):
            p[i] = p[i] - kappa * v[i]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i, j] = a[i, j] - 2.0 * (v[i] * p[j].conjugate() + p[i] * v[j].conjugate())
        for i in range(k + 1, n):
            a[i, k] = 0.0
            a[k, i] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha.conjugate()
        # Q[:, k+1:] -= 2 (Q[:, k+1:] v) v^H
        for i in range(n):
            acc = 0.0
            for j in range(k + 1, n):
                acc = acc + q[i, j] * v[j]
            for j in range(k + 1, n):
                q[i, j] = q[i, j] - 2.0 * acc * v[j].conjugate()


cdef int _tql(double[::1] d, double[::1] e, double complex[:, ::1] z, int max_iter) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0], l, m, i, k
    cdef int it
    cdef double dd, g, r, s, c, p, f, b
    cdef double complex zi, zi1
    cdef bint deflated
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) <= DBL_EPSILON * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                return <int>l + 1
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
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
                for k in range(n):
                    zi = z[i, k]
                    zi1 = z[i + 1, k]
                    z[i + 1, k] = s * zi + c * zi1
                    z[i, k] = c * zi - s * zi1
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


def tridiagonalize(a):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] arr = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = arr.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] q = np.eye(n, dtype=np.complex128)
    cdef double complex[::1] v = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] p = np.zeros(n, dtype=np.complex128)
    cdef double complex[:, ::1] av = arr
    cdef double complex[:, ::1] qv = q
    with nogil:
        _householder(av, qv, v, p)
    d = arr.diagonal().real.copy()
    e = np.zeros(n)
    cdef double complex phase = 1.0, sub_el
    cdef double mag
    for i in range(n - 1):
        sub_el = av[i + 1, i]
        mag = hypot(sub_el.real, sub_el.imag)
        e[i] = mag
        if mag > 0.0:
            phase = phase * sub_el / mag
        q[:, i + 1] *= phase
    return d, e, q


def tql_implicit(double[::1] d, double[::1] e, double complex[:, ::1] z, int max_iter=60):
    cdef int status
    with nogil:
        status = _tql(d, e, z, max_iter)
    if status:
        raise ArithmeticError(f"QL iteration did not converge for eigenvalue {status - 1}")


def eigh(a):
    d, e, q = tridiagonalize(a)
    zt = np.ascontiguousarray(q.T)
    tql_implicit(d, e, zt)
    order = np.argsort(d, kind="stable")
    return d[order], np.ascontiguousarray(zt[order].T)
