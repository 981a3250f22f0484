# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled Monte-Carlo kernels.

Both functions mirror :mod:`reciprocal_channels._kernels_py` exactly; the
Python module is the reference and the fallback when this extension is not
built.
"""
import numpy as np


def pure_state_fidelities(const double complex[:, ::1] choi,
                          const double complex[:, ::1] states):
    """Fidelities <psi|Phi(|psi><psi|)|psi> for each row of ``states``."""
    cdef Py_ssize_t n = states.shape[0]
    cdef Py_ssize_t d = states.shape[1]
    cdef Py_ssize_t dd = d * d
    if choi.shape[0] != dd or choi.shape[1] != dd:
        raise ValueError("choi matrix does not match state dimension")

    out = np.empty(n, dtype=np.float64)
    vec_buf = np.empty(dd, dtype=np.complex128)
    cdef double[::1] res = out
    cdef double complex[::1] vec = vec_buf
    cdef Py_ssize_t s, i, k, a, b
    cdef double complex row, acc

    with nogil:
        for s in range(n):
            for i in range(d):
                for k in range(d):
                    vec[i * d + k] = states[s, i].conjugate() * states[s, k]
            acc = 0
            for a in range(dd):
                row = 0
                for b in range(dd):
                    row = row + choi[a, b] * vec[b]
                acc = acc + vec[a].conjugate() * row
            res[s] = d * acc.real
    return out


def twirl_choi_sum(const double complex[:, ::1] choi,
                   const double complex[:, :, ::1] unitaries):
    """Sum over U of (U^T (x) U^dag) J (conj(U) (x) U)."""
    cdef Py_ssize_t n = unitaries.shape[0]
    cdef Py_ssize_t d = unitaries.shape[1]
    cdef Py_ssize_t dd = d * d
    cdef Py_ssize_t d3 = dd * d
    if choi.shape[0] != dd or choi.shape[1] != dd:
        raise ValueError("choi matrix does not match unitary dimension")

    total_buf = np.zeros((dd, dd), dtype=np.complex128)
    cdef double complex[::1] total = total_buf.reshape(-1)
    cdef const double complex[::1] jflat = np.ascontiguousarray(choi).reshape(-1)
    cdef double complex[::1] t1 = np.empty(dd * dd, dtype=np.complex128)
    cdef double complex[::1] t2 = np.empty(dd * dd, dtype=np.complex128)
    cdef Py_ssize_t s, x, y, z, w, m
    cdef double complex acc, u

    # one tensor factor at a time: O(d^5) per unitary instead of O(d^6)
    with nogil:
        for s in range(n):
            # t1[a,k,j,l] = sum_i U[i,a] J[i,k,j,l]
            for x in range(d):
                for m in range(d3):
                    acc = 0
                    for z in range(d):
                        acc = acc + unitaries[s, z, x] * jflat[z * d3 + m]
                    t1[x * d3 + m] = acc
            # t2[a,b,j,l] = sum_k conj(U[k,b]) t1[a,k,j,l]
            for x in range(d):
                for y in range(d):
                    for m in range(dd):
                        acc = 0
                        for z in range(d):
                            acc = acc + unitaries[s, z, y].conjugate() * t1[x * d3 + z * dd + m]
                        t2[x * d3 + y * dd + m] = acc
            # t1[a,b,c,l] = sum_j conj(U[j,c]) t2[a,b,j,l]
            for m in range(dd):
                for y in range(d):
                    for w in range(d):
                        acc = 0
                        for z in range(d):
                            acc = acc + unitaries[s, z, y].conjugate() * t2[m * dd + z * d + w]
                        t1[m * dd + y * d + w] = acc
            # total[a,b,c,e] += sum_l U[l,e] t1[a,b,c,l]
            for m in range(d3):
                for w in range(d):
                    acc = 0
                    for z in range(d):
                        u = unitaries[s, z, w]
                        acc = acc + u * t1[m * d + z]
                    total[m * d + w] = total[m * d + w] + acc
    return total_buf
