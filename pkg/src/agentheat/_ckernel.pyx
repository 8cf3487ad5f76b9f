# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled stencil core.  Mirrors ``agentheat._kernels`` operation for operation."""

from cython.parallel cimport prange


cdef inline double _edge(double t, double h, bint convective,
                         double alpha, double t_env) noexcept nogil:
    if convective:
        return alpha * (t_env - t) / h
    return 0.0


cdef inline double _cell(const double[:, ::1] T, const double[:, ::1] kn,
                         const double[:, ::1] ks, const double[:, ::1] ke,
                         const double[:, ::1] kw, const double[:, ::1] crho,
                         const double[:, ::1] klin, const double[:, ::1] src,
                         Py_ssize_t j, Py_ssize_t i, Py_ssize_t ny, Py_ssize_t nx,
                         double h, double h2, double dt, bint convective,
                         double alpha, double t_env) noexcept nogil:
    cdef double t = T[j, i]
    cdef double qn, qs, qe, qw
    if j > 0:
        qn = kn[j, i] * (T[j - 1, i] - t) / h2
    else:
        qn = _edge(t, h, convective, alpha, t_env)
    if j < ny - 1:
        qs = ks[j, i] * (T[j + 1, i] - t) / h2
    else:
        qs = _edge(t, h, convective, alpha, t_env)
    if i < nx - 1:
        qe = ke[j, i] * (T[j, i + 1] - t) / h2
    else:
        qe = _edge(t, h, convective, alpha, t_env)
    if i > 0:
        qw = kw[j, i] * (T[j, i - 1] - t) / h2
    else:
        qw = _edge(t, h, convective, alpha, t_env)
    return t + dt * (((qn + qs) + (qe + qw)) + (klin[j, i] * t + src[j, i])) / crho[j, i]


cdef void _row(const double[:, ::1] T, double[:, ::1] out,
               const double[:, ::1] kn, const double[:, ::1] ks,
               const double[:, ::1] ke, const double[:, ::1] kw,
               const double[:, ::1] crho, const double[:, ::1] klin,
               const double[:, ::1] src, Py_ssize_t j, Py_ssize_t ny, Py_ssize_t nx,
               double h, double h2, double dt, bint convective,
               double alpha, double t_env) noexcept nogil:
    cdef Py_ssize_t i
    cdef double t, qn, qs, qe, qw
    if j == 0 or j == ny - 1 or nx < 3:
        for i in range(nx):
            out[j, i] = _cell(T, kn, ks, ke, kw, crho, klin, src, j, i, ny, nx,
                              h, h2, dt, convective, alpha, t_env)
        return
    out[j, 0] = _cell(T, kn, ks, ke, kw, crho, klin, src, j, 0, ny, nx,
                      h, h2, dt, convective, alpha, t_env)
    # interior columns of an interior row: branch free
    for i in range(1, nx - 1):
        t = T[j, i]
        qn = kn[j, i] * (T[j - 1, i] - t) / h2
        qs = ks[j, i] * (T[j + 1, i] - t) / h2
        qe = ke[j, i] * (T[j, i + 1] - t) / h2
        qw = kw[j, i] * (T[j, i - 1] - t) / h2
        out[j, i] = t + dt * (((qn + qs) + (qe + qw)) + (klin[j, i] * t + src[j, i])) / crho[j, i]
    out[j, nx - 1] = _cell(T, kn, ks, ke, kw, crho, klin, src, j, nx - 1, ny, nx,
                           h, h2, dt, convective, alpha, t_env)


def step_field(const double[:, ::1] T, double[:, ::1] out,
               const double[:, ::1] kn, const double[:, ::1] ks,
               const double[:, ::1] ke, const double[:, ::1] kw,
               const double[:, ::1] crho, const double[:, ::1] klin,
               const double[:, ::1] src,
               double h, double dt, bint convective, double alpha, double t_env,
               int workers=1):
    """Write one synchronous step of ``T`` into ``out``; rows split into bands per worker."""
    cdef Py_ssize_t ny = T.shape[0]
    cdef Py_ssize_t nx = T.shape[1]
    cdef Py_ssize_t j
    cdef double h2 = h * h
    cdef int nthreads = workers if workers > 1 else 1
    cdef Py_ssize_t chunk = (ny + nthreads - 1) // nthreads

    if nthreads == 1:
        with nogil:
            for j in range(ny):
                _row(T, out, kn, ks, ke, kw, crho, klin, src, j, ny, nx,
                     h, h2, dt, convective, alpha, t_env)
        return
    for j in prange(ny, nogil=True, schedule="static", chunksize=chunk,
                    num_threads=nthreads):
        _row(T, out, kn, ks, ke, kw, crho, klin, src, j, ny, nx,
             h, h2, dt, convective, alpha, t_env)
