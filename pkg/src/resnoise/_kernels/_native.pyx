# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the `_pyref` kernels.

Same call signatures and semantics; the sequential per-step loops run in C
with BLAS matrix-vector products, which removes the interpreter overhead
that dominates the pure build on single trajectories.
"""

from libc.math cimport exp, fabs, isfinite, pow, tanh

import numpy as np

cimport numpy as cnp
from scipy.linalg.cython_blas cimport ddot, dgemv

from ..errors import NumericError

cnp.import_array()

BACKEND = "native"

ACT_TANH = 0
ACT_SIGMOID = 1
ACT_LINEAR = 2


cdef inline double _act(int act_id, double a) noexcept nogil:
    if act_id == 0:
        return tanh(a)
    if act_id == 1:
        return 1.0 / (1.0 + exp(-a))
    return a


cdef inline void _recurrent(double[:, ::1] w_res, double[::1] y, double[::1] out) noexcept nogil:
    # out = y @ w_res. The C-contiguous (row-major) array viewed in Fortran
    # order is its own transpose, so a no-transpose dgemv computes W^T y.
    cdef int n = w_res.shape[0]
    cdef int inc = 1
    cdef double one = 1.0, zero = 0.0
    dgemv("N", &n, &n, &one, &w_res[0, 0], &n, &y[0], &inc, &zero, &out[0], &inc)


def mg_euler(Py_ssize_t total, Py_ssize_t delay_steps, double beta, double gamma,
             double n_exp, double dt, double history):
    """Euler-integrate the delay equation, returning `total` raw samples."""
    out_arr = np.empty(total)
    cdef double[::1] r = out_arr
    cdef Py_ssize_t k
    cdef double ud, val, nxt
    cdef Py_ssize_t bad = -1
    r[0] = history
    with nogil:
        for k in range(total - 1):
            ud = r[k - delay_steps] if k >= delay_steps else history
            val = r[k]
            nxt = val + dt * (beta * ud / (1.0 + pow(ud, n_exp)) - gamma * val)
            if not isfinite(nxt):
                bad = k + 1
                break
            r[k + 1] = nxt
    if bad >= 0:
        raise NumericError(f"integration produced a non-finite value at step {bad}")
    return out_arr


def collect_states(double[::1] w_in, double[:, ::1] w_res, double[::1] inputs,
                   int act_id, double[::1] x0):
    """Drive the reservoir over `inputs` and record the state after each step."""
    cdef Py_ssize_t n = w_in.shape[0]
    cdef Py_ssize_t steps = inputs.shape[0]
    states_arr = np.empty((steps, n))
    cdef double[:, ::1] states = states_arr
    y_arr = np.array(x0, dtype=float, copy=True)
    cdef double[::1] y = y_arr
    work_arr = np.empty(n)
    cdef double[::1] work = work_arr
    cdef Py_ssize_t t, j
    cdef double u
    with nogil:
        for t in range(steps):
            _recurrent(w_res, y, work)
            u = inputs[t]
            for j in range(n):
                y[j] = _act(act_id, u * w_in[j] + work[j])
                states[t, j] = y[j]
    return states_arr


def open_loop_clean(double[::1] w_in, double[:, ::1] w_res, double[::1] w_out,
                    double[::1] inputs, int act_id, double[::1] x0):
    """Noise-free driven run; returns the readout at every step."""
    cdef Py_ssize_t n = w_in.shape[0]
    cdef Py_ssize_t steps = inputs.shape[0]
    out_arr = np.empty(steps)
    cdef double[::1] outputs = out_arr
    y_arr = np.array(x0, dtype=float, copy=True)
    cdef double[::1] y = y_arr
    work_arr = np.empty(n)
    cdef double[::1] work = work_arr
    cdef int ni = <int> n, inc = 1
    cdef Py_ssize_t t, j
    cdef double u
    with nogil:
        for t in range(steps):
            _recurrent(w_res, y, work)
            u = inputs[t]
            for j in range(n):
                y[j] = _act(act_id, u * w_in[j] + work[j])
            outputs[t] = ddot(&ni, &y[0], &inc, &w_out[0], &inc)
    return out_arr


def closed_loop_clean(double[::1] w_in, double[:, ::1] w_res, double[::1] w_out,
                      int act_id, double[::1] y0, double u0, Py_ssize_t steps,
                      double limit):
    """Noise-free free-run; see the reference twin for the return contract."""
    cdef Py_ssize_t n = w_in.shape[0]
    out_arr = np.zeros(steps)
    cdef double[::1] outputs = out_arr
    y_arr = np.array(y0, dtype=float, copy=True)
    cdef double[::1] y = y_arr
    work_arr = np.empty(n)
    cdef double[::1] work = work_arr
    cdef int ni = <int> n, inc = 1
    cdef Py_ssize_t t, j
    cdef double u = u0
    cdef Py_ssize_t diverged = -1
    with nogil:
        for t in range(steps):
            _recurrent(w_res, y, work)
            for j in range(n):
                y[j] = _act(act_id, u * w_in[j] + work[j])
            u = ddot(&ni, &y[0], &inc, &w_out[0], &inc)
            outputs[t] = u
            if not isfinite(u) or fabs(u) > limit:
                diverged = t
                break
    return out_arr, diverged
