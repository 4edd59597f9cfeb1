# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled L1 history sums; see _kernels_py for the reference semantics."""

import numpy as np


cdef inline double _dot(const double* a, const double* x, Py_ssize_t m) noexcept nogil:
    # four partial sums keep the FP pipeline busy without -ffast-math
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0
    cdef Py_ssize_t k = 0
    while k + 4 <= m:
        s0 += a[k] * x[k]
        s1 += a[k + 1] * x[k + 1]
        s2 += a[k + 2] * x[k + 2]
        s3 += a[k + 3] * x[k + 3]
        k += 4
    while k < m:
        s0 += a[k] * x[k]
        k += 1
    return (s0 + s1) + (s2 + s3)


cdef _reversed_diffs(const double[::1] b):
    # rev[N-1-j] = b[j] - b[j+1]; for node n the weights of y[1..n-1] are rev[N-n : N-1]
    cdef Py_ssize_t N = b.shape[0]
    cdef Py_ssize_t j
    out = np.empty(max(N - 1, 1), dtype=np.float64)
    cdef double[::1] rev = out
    for j in range(N - 1):
        rev[N - 2 - j] = b[j] - b[j + 1]
    return out


def l1_history(const double[::1] b, const double[::1] y):
    cdef Py_ssize_t N = y.shape[0] - 1
    cdef Py_ssize_t n
    out = np.empty(N, dtype=np.float64)
    cdef double[::1] h = out
    cdef const double[::1] rev = _reversed_diffs(b[:N])
    with nogil:
        for n in range(1, N + 1):
            h[n - 1] = b[n - 1] * y[0]
            if n > 1:
                h[n - 1] += _dot(&rev[N - n], &y[1], n - 1)
    return out


def l1_history_at(const double[::1] b, const double[::1] y, Py_ssize_t n):
    cdef Py_ssize_t i
    cdef double acc = b[n - 1] * y[0]
    for i in range(1, n):
        acc += (b[n - i - 1] - b[n - i]) * y[i]
    return acc


def fode_march(const double[::1] b, double scale, double lam, const double[::1] f, double y0):
    cdef Py_ssize_t N = f.shape[0] - 1
    cdef Py_ssize_t n
    cdef double acc
    cdef double denom = scale + lam
    out = np.empty(N + 1, dtype=np.float64)
    cdef double[::1] Y = out
    cdef const double[::1] rev = _reversed_diffs(b[:N])
    Y[0] = y0
    with nogil:
        for n in range(1, N + 1):
            acc = b[n - 1] * y0
            if n > 1:
                acc += _dot(&rev[N - n], &Y[1], n - 1)
            Y[n] = (f[n] + scale * acc) / denom
    return out
