# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels in _kernels_py.

Same semantics, 64-bit integer arithmetic; the dispatcher in kernels.py
only routes calls here whose inputs provably fit.
"""

from libc.stdlib cimport free, malloc

from .errors import ClosureGuardError


def count_colength(long long xcap, long long bound):
    """Count (a, b, c) >= 0 with a <= xcap and a+b+c <= bound."""
    cdef long long total = 0
    cdef long long a, b, c, amax
    if bound < 0:
        return 0
    amax = xcap if xcap < bound else bound
    for a in range(amax + 1):
        for b in range(bound - a + 1):
            for c in range(bound - a - b + 1):
                total += 1
    return total


def count_weighted(long long xcap, long long wx, long long wy, long long wz,
                   long long bound):
    """Count (a, b, c) >= 0 with a <= xcap and wx*a + wy*b + wz*c <= bound."""
    cdef long long total = 0
    cdef long long a = 0, b, c, rest_a, rest_b
    if bound < 0:
        return 0
    while a <= xcap and wx * a <= bound:
        rest_a = bound - wx * a
        b = 0
        while wy * b <= rest_a:
            rest_b = rest_a - wy * b
            c = 0
            while wz * c <= rest_b:
                total += 1
                c += 1
            b += 1
        a += 1
    return total


cdef inline int _heap_push(long long* heap, Py_ssize_t* size,
                           Py_ssize_t capacity, long long value):
    cdef Py_ssize_t i = size[0]
    cdef Py_ssize_t parent
    if i >= capacity:
        return -1
    heap[i] = value
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if heap[parent] <= heap[i]:
            break
        heap[parent], heap[i] = heap[i], heap[parent]
        i = parent
    return 0


cdef inline long long _heap_pop(long long* heap, Py_ssize_t* size):
    cdef long long top = heap[0]
    cdef Py_ssize_t i = 0, child, n
    size[0] -= 1
    n = size[0]
    heap[0] = heap[n]
    while True:
        child = 2 * i + 1
        if child >= n:
            break
        if child + 1 < n and heap[child + 1] < heap[child]:
            child += 1
        if heap[i] <= heap[child]:
            break
        heap[i], heap[child] = heap[child], heap[i]
        i = child
    return top


def laufer_closure(diag, indptr, indices, mults, start, long long guard):
    """Increment loop computing the least anti-nef cycle >= start.

    Mirrors _kernels_py.laufer_closure: lazy min-heap of candidate
    violators, lowest violating id first.
    """
    cdef Py_ssize_t n = len(diag)
    cdef Py_ssize_t nnz = len(indices)
    cdef Py_ssize_t i, k
    cdef long long j, was, bad = -1
    cdef long long* cdiag = <long long*> malloc(n * sizeof(long long))
    cdef long long* cptr = <long long*> malloc((n + 1) * sizeof(long long))
    cdef long long* cind = <long long*> malloc(max(nnz, 1) * sizeof(long long))
    cdef long long* cmul = <long long*> malloc(max(nnz, 1) * sizeof(long long))
    cdef long long* z = <long long*> malloc(n * sizeof(long long))
    cdef long long* pair = <long long*> malloc(n * sizeof(long long))
    # pushes happen only on a 0->positive crossing or right after a pop,
    # so each vertex holds at most one live entry; capacity n+1 suffices
    # and overflow would indicate a bug, reported below, never corruption
    cdef Py_ssize_t heap_cap = 2 * (n + 1)
    cdef long long* heap = <long long*> malloc(heap_cap * sizeof(long long))
    cdef Py_ssize_t heap_size = 0
    cdef int overflow = 0
    if not (cdiag and cptr and cind and cmul and z and pair and heap):
        free(cdiag); free(cptr); free(cind); free(cmul)
        free(z); free(pair); free(heap)
        raise MemoryError()
    try:
        for i in range(n):
            cdiag[i] = diag[i]
            z[i] = start[i]
        for i in range(n + 1):
            cptr[i] = indptr[i]
        for k in range(nnz):
            cind[k] = indices[k]
            cmul[k] = mults[k]

        for i in range(n):
            pair[i] = cdiag[i] * z[i]
        for i in range(n):
            for k in range(cptr[i], cptr[i + 1]):
                pair[i] += cmul[k] * z[cind[k]]

        for i in range(n):
            if pair[i] > 0:
                overflow |= _heap_push(heap, &heap_size, heap_cap, i)

        while heap_size > 0 and not overflow:
            i = <Py_ssize_t> _heap_pop(heap, &heap_size)
            if pair[i] <= 0:
                continue
            z[i] += 1
            if z[i] > guard:
                bad = i
                break
            pair[i] += cdiag[i]
            for k in range(cptr[i], cptr[i + 1]):
                j = cind[k]
                was = pair[j]
                pair[j] = was + cmul[k]
                if was <= 0 and pair[j] > 0:
                    overflow |= _heap_push(heap, &heap_size, heap_cap, j)
            if pair[i] > 0:
                overflow |= _heap_push(heap, &heap_size, heap_cap, i)

        if overflow:
            raise RuntimeError("internal error: closure heap overflowed")
        if bad >= 0:
            raise ClosureGuardError(
                f"coefficient of vertex index {bad} exceeded {guard}; "
                "intersection lattice is not negative definite"
            )
        return [z[i] for i in range(n)]
    finally:
        free(cdiag); free(cptr); free(cind); free(cmul)
        free(z); free(pair); free(heap)
