"""Pure-Python reference implementations of the hot kernels.

The compiled twin lives in ``_kernels_c`` (built from ``_kernels_c.pyx``)
and mirrors these functions statement for statement; ``kernels`` picks a
backend at import time.  Everything here is exact integer arithmetic.
"""

import heapq

from .errors import ClosureGuardError


def count_colength(xcap, bound):
    """Count lattice points (a, b, c) >= 0 with a <= xcap and a+b+c <= bound.

    Deliberately a direct triple enumeration with early cuts: this is the
    brute-force oracle for quotient-ring colengths and must not trust any
    closed form.
    """
    if bound < 0:
        return 0
    total = 0
    amax = xcap if xcap < bound else bound
    for a in range(amax + 1):
        for b in range(bound - a + 1):
            for _c in range(bound - a - b + 1):
                total += 1
    return total


def count_weighted(xcap, wx, wy, wz, bound):
    """Count (a, b, c) >= 0 with a <= xcap and wx*a + wy*b + wz*c <= bound.

    Weights must be positive.  Same direct-enumeration policy as
    count_colength.
    """
    if bound < 0:
        return 0
    total = 0
    a = 0
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


def laufer_closure(diag, indptr, indices, mults, start, guard):
    """Increment loop computing the least anti-nef cycle >= start.

    The graph arrives as a CSR adjacency structure: vertex i has diagonal
    self-intersection diag[i] and neighbours indices[indptr[i]:indptr[i+1]]
    with edge multiplicities mults[...].  Repeatedly pick the lowest-id
    vertex i whose pairing with the current cycle is positive and add one
    to its coefficient.  Any coefficient exceeding ``guard`` aborts: on a
    negative-definite lattice the loop provably terminates below it.

    Returns the list of final coefficients.
    """
    n = len(diag)
    z = list(start)
    pair = [diag[i] * z[i] for i in range(n)]
    for i in range(n):
        for k in range(indptr[i], indptr[i + 1]):
            pair[i] += mults[k] * z[indices[k]]

    # Lazy min-heap of candidate violators; stale entries are skipped on
    # pop, so the pop order is exactly "lowest violating id first".
    heap = [i for i in range(n) if pair[i] > 0]
    heapq.heapify(heap)
    while heap:
        i = heapq.heappop(heap)
        if pair[i] <= 0:
            continue
        z[i] += 1
        if z[i] > guard:
            raise ClosureGuardError(
                f"coefficient of vertex index {i} exceeded {guard}; "
                "intersection lattice is not negative definite"
            )
        pair[i] += diag[i]
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            was = pair[j]
            pair[j] = was + mults[k]
            if was <= 0 and pair[j] > 0:
                heapq.heappush(heap, j)
        if pair[i] > 0:
            heapq.heappush(heap, i)
    return z
