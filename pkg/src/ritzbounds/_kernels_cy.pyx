# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Jacobi rotation kernels.

Same contract as `_kernels_py`: in-place cyclic Jacobi sweeps for the
Hermitian eigenproblem and the one-sided SVD. These two loops dominate the
runtime of everything else in the package, hence the compiled twin.
"""

from libc.math cimport sqrt, hypot


cdef inline double _cabs(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef inline void _rotation(double tau, double *c, double *s) nogil:
    cdef double t
    if tau > 1e150 or tau < -1e150:
        t = 1.0 / (2.0 * tau)  # asymptotic root; tau*tau would overflow
    elif tau >= 0.0:
        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
    c[0] = 1.0 / sqrt(1.0 + t * t)
    s[0] = t * c[0]


cdef double _offdiag_norm(double complex[:, ::1] A) nogil:
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc = 0.0, m
    for i in range(n):
        for j in range(n):
            if i != j:
                m = _cabs(A[i, j])
                acc += m * m
    return sqrt(acc)


def hermitian_eig_sweeps(double complex[:, ::1] A, double complex[:, ::1] V,
                         double tol_off, int max_sweeps):
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t p, q, i
    cdef int sweeps = 0
    cdef double off, g, tau, c, s
    cdef double complex apq, phase, cphase, tp, tq
    if n < 2:
        return 0.0, 0
    off = _offdiag_norm(A)
    while off > tol_off and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                g = _cabs(apq)
                if g == 0.0:
                    continue
                tau = (A[q, q].real - A[p, p].real) / (2.0 * g)
                _rotation(tau, &c, &s)
                phase = apq / g
                cphase = phase.conjugate()
                for i in range(n):
                    tp = A[i, p]
                    tq = cphase * A[i, q]
                    A[i, p] = c * tp - s * tq
                    A[i, q] = s * tp + c * tq
                for i in range(n):
                    tp = A[p, i]
                    tq = phase * A[q, i]
                    A[p, i] = c * tp - s * tq
                    A[q, i] = s * tp + c * tq
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                A[p, q] = 0.0
                A[q, p] = 0.0
                for i in range(V.shape[0]):
                    tp = V[i, p]
                    tq = cphase * V[i, q]
                    V[i, p] = c * tp - s * tq
                    V[i, q] = s * tp + c * tq
        sweeps += 1
        off = _offdiag_norm(A)
    return off, sweeps


cdef double _worst_rel_offdiag(double complex[:, ::1] W) nogil:
    cdef Py_ssize_t m = W.shape[0], n = W.shape[1]
    cdef Py_ssize_t p, q, i
    cdef double worst = 0.0, g, a, b
    cdef double complex acc
    for p in range(n - 1):
        for q in range(p + 1, n):
            acc = 0.0
            a = 0.0
            b = 0.0
            for i in range(m):
                acc += W[i, p].conjugate() * W[i, q]
                a += W[i, p].real * W[i, p].real + W[i, p].imag * W[i, p].imag
                b += W[i, q].real * W[i, q].real + W[i, q].imag * W[i, q].imag
            if a > 0.0 and b > 0.0:
                g = _cabs(acc) / sqrt(a * b)
                if g > worst:
                    worst = g
    return worst


def svd_onesided_sweeps(double complex[:, ::1] W, double complex[:, ::1] V,
                        double tol_rel, int max_sweeps):
    cdef Py_ssize_t m = W.shape[0], n = W.shape[1]
    cdef Py_ssize_t p, q, i
    cdef int sweeps = 0
    cdef bint rotated
    cdef double g, alpha, beta, denom, tau, c, s
    cdef double complex gamma, phase, cphase, tp, tq
    if n < 2:
        return 0.0, 0
    while sweeps < max_sweeps:
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                gamma = 0.0
                alpha = 0.0
                beta = 0.0
                for i in range(m):
                    gamma += W[i, p].conjugate() * W[i, q]
                    alpha += W[i, p].real * W[i, p].real + W[i, p].imag * W[i, p].imag
                    beta += W[i, q].real * W[i, q].real + W[i, q].imag * W[i, q].imag
                g = _cabs(gamma)
                if g == 0.0:
                    continue
                denom = sqrt(alpha * beta)
                if denom == 0.0 or g <= tol_rel * denom:
                    continue
                tau = (beta - alpha) / (2.0 * g)
                _rotation(tau, &c, &s)
                phase = gamma / g
                cphase = phase.conjugate()
                for i in range(m):
                    tp = W[i, p]
                    tq = cphase * W[i, q]
                    W[i, p] = c * tp - s * tq
                    W[i, q] = s * tp + c * tq
                for i in range(n):
                    tp = V[i, p]
                    tq = cphase * V[i, q]
                    V[i, p] = c * tp - s * tq
                    V[i, q] = s * tp + c * tq
                rotated = True
        sweeps += 1
        if not rotated:
            break
    return _worst_rel_offdiag(W), sweeps
