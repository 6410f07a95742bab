# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels for the shifted cardinal-polynomial sums.

Mirrors ``_kernels_py`` exactly; the pure module is the reference.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, fabs, M_PI, log, exp, remainder

cnp.import_array()

cdef double GUARD = 1e-8
cdef double NEAR = 1e-2


cdef inline double _product_form(int n, int k, double phi, double[::1] cosk) noexcept nogil:
    cdef double c = cos(phi)
    cdef double logsum = 0.0, r
    cdef int j, negatives = 0
    for j in range(n):
        if j == k:
            continue
        r = (c - cosk[j]) / (cosk[k] - cosk[j])
        if r == 0.0:
            return 0.0
        if r < 0.0:
            negatives += 1
            r = -r
        logsum += log(r)
    if negatives % 2:
        return -exp(logsum)
    return exp(logsum)


cdef inline double _near_form(int n, int k, double phi) noexcept nogil:
    cdef double tk = (2 * k + 1) * M_PI / (2.0 * n)
    cdef double psi = fabs(remainder(phi, 2 * M_PI))
    cdef double d = psi - tk
    if d == 0.0:
        return 1.0
    return sin(n * d) * sin(tk) / (2.0 * n * sin(0.5 * (psi + tk)) * sin(0.5 * d))


cdef inline double _cardinal(int n, int k, double phi, double cphi, double cn,
                             double[::1] cosk, double[::1] coef) noexcept nogil:
    cdef double d = cphi - cosk[k]
    if fabs(d) < GUARD:
        return _product_form(n, k, phi, cosk)
    if fabs(d) < NEAR:
        return _near_form(n, k, phi)
    return cn * coef[k] / d


def _node_data(int n):
    k = np.arange(1, n + 1)
    angles = (2 * k - 1) * np.pi / (2 * n)
    cosk = np.cos(angles)
    coef = np.where(k % 2 == 1, 1.0, -1.0) * np.sin(angles) / n
    return np.ascontiguousarray(angles), np.ascontiguousarray(cosk), np.ascontiguousarray(coef)


def pair_matrix(int n, theta):
    cdef double[::1] t = np.ascontiguousarray(theta, dtype=float).ravel()
    angles_a, cosk_a, coef_a = _node_data(n)
    cdef double[::1] cosk = cosk_a
    cdef double[::1] coef = coef_a
    cdef Py_ssize_t m = t.shape[0], i
    cdef int k
    out_a = np.empty((m, n))
    cdef double[:, ::1] out = out_a
    cdef double a = M_PI / (2.0 * n)
    cdef double pm, pp, cm, cp, nm, np_
    with nogil:
        for i in range(m):
            pm = t[i] - a
            pp = t[i] + a
            cm = cos(pm)
            cp = cos(pp)
            nm = cos(n * pm)
            np_ = cos(n * pp)
            for k in range(n):
                out[i, k] = (_cardinal(n, k, pm, cm, nm, cosk, coef)
                             + _cardinal(n, k, pp, cp, np_, cosk, coef))
    return out_a


def lebesgue_sums(int n, theta):
    cdef double[::1] t = np.ascontiguousarray(theta, dtype=float).ravel()
    angles_a, cosk_a, coef_a = _node_data(n)
    cdef double[::1] angles = angles_a
    cdef double[::1] cosk = cosk_a
    cdef double[::1] coef = coef_a
    cdef Py_ssize_t m = t.shape[0], i
    cdef int k
    lam_a = np.empty(m)
    nu_a = np.empty(m)
    xi_a = np.empty(m)
    cdef double[::1] lam = lam_a
    cdef double[::1] nu = nu_a
    cdef double[::1] xi = xi_a
    cdef double a = M_PI / (2.0 * n)
    cdef double pm, pp, cm, cp, nm, np_, ct, v, sl, sn, sx
    with nogil:
        for i in range(m):
            pm = t[i] - a
            pp = t[i] + a
            cm = cos(pm)
            cp = cos(pp)
            nm = cos(n * pm)
            np_ = cos(n * pp)
            ct = cos(t[i])
            sl = 0.0
            sn = 0.0
            sx = 0.0
            for k in range(n):
                v = fabs(_cardinal(n, k, pm, cm, nm, cosk, coef)
                         + _cardinal(n, k, pp, cp, np_, cosk, coef))
                sl += v
                sn += fabs(cosk[k] - ct) * v
                sx += fabs(angles[k] - t[i]) * v
            lam[i] = 0.5 * sl
            nu[i] = 0.5 * sn
            xi[i] = 0.5 * sx
    return lam_a, nu_a, xi_a


def _weighted_real(int n, double[::1] vals, double[::1] t):
    angles_a, cosk_a, coef_a = _node_data(n)
    cdef double[::1] cosk = cosk_a
    cdef double[::1] coef = coef_a
    cdef Py_ssize_t m = t.shape[0], i
    cdef int k
    out_a = np.empty(m)
    cdef double[::1] out = out_a
    cdef double a = M_PI / (2.0 * n)
    cdef double pm, pp, cm, cp, nm, np_, s
    with nogil:
        for i in range(m):
            pm = t[i] - a
            pp = t[i] + a
            cm = cos(pm)
            cp = cos(pp)
            nm = cos(n * pm)
            np_ = cos(n * pp)
            s = 0.0
            for k in range(n):
                s += vals[k] * (_cardinal(n, k, pm, cm, nm, cosk, coef)
                                + _cardinal(n, k, pp, cp, np_, cosk, coef))
            out[i] = 0.5 * s
    return out_a


def weighted_pair_sum(int n, values, theta):
    t = np.ascontiguousarray(theta, dtype=float).ravel()
    values = np.asarray(values)
    if np.iscomplexobj(values):
        re = _weighted_real(n, np.ascontiguousarray(values.real, dtype=float), t)
        im = _weighted_real(n, np.ascontiguousarray(values.imag, dtype=float), t)
        return re + 1j * im
    return _weighted_real(n, np.ascontiguousarray(values, dtype=float), t)
