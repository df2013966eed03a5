# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 kernel for the contraction pair scan.

Operates on a metric rescaled to even integers (twice the common
denominator), so every comparison functional is integer-valued and the
exact ratio supremum reduces to 128-bit cross-multiplied comparisons.
The caller guarantees entries fit in 62 bits; semantics mirror
``orthofix.contraction._scan_scaled_py`` exactly (same scan order, strict
improvement on ties, first infeasible pair wins).
"""

cdef extern from *:
    ctypedef long long i128 "__int128"


def scan_pairs(long long[::1] dist, Py_ssize_t n, long long[::1] images,
               long long[::1] pairs, int kind_id):
    """Return (best_num, best_den, best_pos, inf_pos) over the flat pair list."""
    cdef Py_ssize_t npairs = pairs.shape[0] // 2
    cdef Py_ssize_t pos, x, y, tx, ty, ttx
    cdef Py_ssize_t best_pos = -1, inf_pos = -1
    cdef long long num, den, term, best_num = 0, best_den = 0
    for pos in range(npairs):
        x = <Py_ssize_t>pairs[2 * pos]
        y = <Py_ssize_t>pairs[2 * pos + 1]
        tx = <Py_ssize_t>images[x]
        ty = <Py_ssize_t>images[y]
        num = dist[tx * n + ty]
        if kind_id == 0:
            den = dist[x * n + y]
        elif kind_id == 2:
            den = dist[x * n + tx] + dist[y * n + ty]
        elif kind_id == 3:
            den = dist[x * n + ty] + dist[y * n + tx]
        else:
            den = dist[x * n + y]
            term = dist[x * n + tx]
            if term > den:
                den = term
            term = dist[y * n + ty]
            if term > den:
                den = term
            term = (dist[x * n + ty] + dist[tx * n + y]) // 2
            if term > den:
                den = term
            if kind_id == 4:
                ttx = <Py_ssize_t>images[tx]
                term = (dist[ttx * n + x] + dist[ttx * n + ty]) // 2
                if term > den:
                    den = term
                term = dist[ttx * n + tx]
                if term > den:
                    den = term
                term = dist[ttx * n + y]
                if term > den:
                    den = term
                term = dist[ttx * n + ty]
                if term > den:
                    den = term
        if den == 0:
            if num > 0 and inf_pos < 0:
                inf_pos = pos
            continue
        if best_pos < 0 or (<i128>num) * (<i128>best_den) > (<i128>best_num) * (<i128>den):
            best_num = num
            best_den = den
            best_pos = pos
    return best_num, best_den, best_pos, inf_pos
