# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled boolean detour fold over a dense uint8 adjacency matrix."""


def detour_fold_inplace(unsigned char[:, ::1] a, long long[::1] order):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, x, y, v
    for i in range(order.shape[0]):
        v = order[i]
        for x in range(n):
            if a[x, v]:
                for y in range(n):
                    if a[v, y] and y != x:
                        a[x, y] = 1
        for x in range(n):
            a[x, v] = 0
            a[v, x] = 0
