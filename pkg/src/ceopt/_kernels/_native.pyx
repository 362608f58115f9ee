# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled round kernel.

Mirrors _pyfallback.py operation for operation; both backends must stay
bitwise-equivalent (same accumulation order, compiled with
-ffp-contract=off). Change one, change the other.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

NAME = "native"


cdef void _sq_dists(const double[::1] own, const double[:, ::1] msgs,
                    double[::1] out) noexcept nogil:
    cdef Py_ssize_t m = msgs.shape[0]
    cdef Py_ssize_t d = msgs.shape[1]
    cdef Py_ssize_t k, c
    cdef double s, diff
    for k in range(m):
        s = 0.0
        for c in range(d):
            diff = own[c] - msgs[k, c]
            s += diff * diff
        out[k] = s


cdef void _affine_project(const double[::1] x, const double[:, ::1] proj_mat,
                          const double[::1] proj_off, double[::1] out) noexcept nogil:
    cdef Py_ssize_t d = x.shape[0]
    cdef Py_ssize_t r, c
    cdef double s
    for r in range(d):
        s = 0.0
        for c in range(d):
            s += proj_mat[r, c] * x[c]
        out[r] = s + proj_off[r]


cdef void _order_by_dist_then_id(const double[::1] dists, const cnp.int64_t[::1] ids,
                                 Py_ssize_t[::1] order) noexcept nogil:
    # insertion sort: ascending (distance, sender id); m is small
    cdef Py_ssize_t m = dists.shape[0]
    cdef Py_ssize_t i, j, cur
    for i in range(m):
        order[i] = i
    for i in range(1, m):
        cur = order[i]
        j = i - 1
        while j >= 0 and (dists[cur] < dists[order[j]] or
                          (dists[cur] == dists[order[j]] and ids[cur] < ids[order[j]])):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = cur


def sq_dists(const double[::1] own, const double[:, ::1] msgs, out=None):
    """Squared Euclidean distance from `own` (d,) to each row of `msgs` (m, d)."""
    if out is None:
        out = np.empty(msgs.shape[0])
    cdef double[::1] out_view = out
    _sq_dists(own, msgs, out_view)
    return out


def affine_project(const double[::1] x, const double[:, ::1] proj_mat,
                   const double[::1] proj_off, out=None):
    """y = proj_mat @ x + proj_off with row-sequential accumulation."""
    if out is None:
        out = np.empty(x.shape[0])
    cdef double[::1] out_view = out
    _affine_project(x, proj_mat, proj_off, out_view)
    return out


def drift_step(const double[::1] estimate, const double[:, ::1] kept, double eta,
               out=None):
    """z = estimate - eta * sum_j (estimate - kept[j]), kept rows in order."""
    cdef Py_ssize_t k = kept.shape[0]
    cdef Py_ssize_t d = estimate.shape[0]
    cdef Py_ssize_t c, j
    cdef double acc
    if out is None:
        out = np.empty(d)
    cdef double[::1] out_view = out
    with nogil:
        for c in range(d):
            acc = 0.0
            for j in range(k):
                acc += estimate[c] - kept[j, c]
            out_view[c] = estimate[c] - eta * acc
    return out


def filter_order(const double[::1] dists, const cnp.int64_t[::1] sender_ids):
    """Indices sorted by (distance, sender id) ascending."""
    order_arr = np.empty(dists.shape[0], dtype=np.intp)
    cdef Py_ssize_t[::1] order = order_arr
    _order_by_dist_then_id(dists, sender_ids, order)
    return order_arr.tolist()


def round_step(const double[:, ::1] estimates, const double[:, :, ::1] inbox,
               const cnp.int64_t[:, ::1] sender_ids, Py_ssize_t f, double eta,
               bint filter_enabled, const double[:, :, ::1] proj_mats,
               const double[:, ::1] proj_offs, out=None):
    """Fused filter+update for every honest agent against a pre-round snapshot.

    See the Python twin for the argument layout.
    """
    cdef Py_ssize_t h = inbox.shape[0]
    cdef Py_ssize_t m = inbox.shape[1]
    cdef Py_ssize_t d = inbox.shape[2]
    cdef Py_ssize_t keep = m - f if filter_enabled else m
    cdef Py_ssize_t i, c, j
    cdef double acc
    if out is None:
        out = np.empty((h, d))
    cdef double[:, ::1] out_view = out
    dists_arr = np.empty(m)
    order_arr = np.empty(m, dtype=np.intp)
    z_arr = np.empty(d)
    cdef double[::1] dists = dists_arr
    cdef Py_ssize_t[::1] order = order_arr
    cdef double[::1] z = z_arr
    with nogil:
        for i in range(h):
            if filter_enabled:
                _sq_dists(estimates[i], inbox[i], dists)
                _order_by_dist_then_id(dists, sender_ids[i], order)
            else:
                for j in range(m):
                    order[j] = j
            for c in range(d):
                acc = 0.0
                for j in range(keep):
                    acc += estimates[i, c] - inbox[i, order[j], c]
                z[c] = estimates[i, c] - eta * acc
            _affine_project(z, proj_mats[i], proj_offs[i], out_view[i])
    return out


def sum_sq_error(const double[:, ::1] estimates, const double[::1] x_star):
    """Sum over agents (row order) of the squared distance to x_star."""
    cdef Py_ssize_t h = estimates.shape[0]
    cdef Py_ssize_t d = estimates.shape[1]
    cdef Py_ssize_t i, c
    cdef double diff
    cdef double total = 0.0
    with nogil:
        for i in range(h):
            for c in range(d):
                diff = estimates[i, c] - x_star[c]
                total += diff * diff
    return total
