# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled divider sweep kernel. Same contract as ``_kernel_py.divider_s``."""

import numpy as np
cimport numpy as cnp

cdef extern from "<complex.h>" nogil:
    double complex ccosh(double complex)
    double complex csinh(double complex)
    double cabs(double complex)

cnp.import_array()


cdef inline void _point(const double[::1] zc, const double complex[:, ::1] gl, Py_ssize_t i,
                        const Py_ssize_t[::1] ptr, const double[::1] shunt, double z,
                        double complex[:, :, ::1] out) noexcept nogil:
    cdef double complex s11[3]
    cdef double complex s12[3]
    cdef double complex s21[3]
    cdef double complex s22[3]
    cdef double complex m[3][3]
    cdef double complex x[3][3]
    cdef double complex a, b, c, d, na, nb, nc, nd, ch, sh, delta, piv, f, tmp
    cdef double sj, best
    cdef Py_ssize_t j, k, r, col, p, q

    for j in range(3):
        a = 1.0
        b = 0.0
        c = 0.0
        d = 1.0
        for k in range(ptr[j], ptr[j + 1]):
            ch = ccosh(gl[i, k])
            sh = csinh(gl[i, k])
            na = a * ch + b * sh / zc[k]
            nb = a * zc[k] * sh + b * ch
            nc = c * ch + d * sh / zc[k]
            nd = c * zc[k] * sh + d * ch
            a = na
            b = nb
            c = nc
            d = nd
        if shunt[j] != 0.0:
            a = a + b * (1j * shunt[j])
            c = c + d * (1j * shunt[j])
        delta = a + b / z + c * z + d
        s11[j] = (a + b / z - c * z - d) / delta
        s12[j] = 2.0 * (a * d - b * c) / delta
        s21[j] = 2.0 / delta
        s22[j] = (-a + b / z - c * z + d) / delta

    # m = I - Sj diag(s22); x starts as Sj and becomes m^-1 Sj
    for r in range(3):
        for col in range(3):
            sj = 2.0 / 3.0 - (1.0 if r == col else 0.0)
            m[r][col] = (1.0 if r == col else 0.0) - sj * s22[col]
            x[r][col] = sj

    # Gaussian elimination with partial pivoting
    for col in range(3):
        p = col
        best = cabs(m[col][col])
        for r in range(col + 1, 3):
            if cabs(m[r][col]) > best:
                best = cabs(m[r][col])
                p = r
        if p != col:
            for q in range(3):
                tmp = m[col][q]
                m[col][q] = m[p][q]
                m[p][q] = tmp
                tmp = x[col][q]
                x[col][q] = x[p][q]
                x[p][q] = tmp
        piv = m[col][col]
        for r in range(col + 1, 3):
            f = m[r][col] / piv
            for q in range(col, 3):
                m[r][q] = m[r][q] - f * m[col][q]
            for q in range(3):
                x[r][q] = x[r][q] - f * x[col][q]
    for col in range(2, -1, -1):
        for q in range(3):
            tmp = x[col][q]
            for r in range(col + 1, 3):
                tmp = tmp - m[col][r] * x[r][q]
            x[col][q] = tmp / m[col][col]

    for r in range(3):
        for col in range(3):
            out[i, r, col] = s12[r] * x[r][col] * s21[col]
        out[i, r, r] = out[i, r, r] + s11[r]


def divider_s(zc, gl, arm_ptr, shunt_b, double zref):
    cdef const double[::1] zc_v = np.ascontiguousarray(zc, dtype=np.float64)
    cdef const double complex[:, ::1] gl_v = np.ascontiguousarray(gl, dtype=np.complex128)
    cdef const Py_ssize_t[::1] ptr_v = np.ascontiguousarray(arm_ptr, dtype=np.intp)
    cdef const double[::1] sh_v = np.ascontiguousarray(shunt_b, dtype=np.float64)
    cdef Py_ssize_t nf = gl_v.shape[0]
    result = np.empty((nf, 3, 3), dtype=np.complex128)
    cdef double complex[:, :, ::1] out = result
    cdef Py_ssize_t i
    with nogil:
        for i in range(nf):
            _point(zc_v, gl_v, i, ptr_v, sh_v, zref, out)
    return result
