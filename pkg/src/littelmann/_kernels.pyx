# cython: language_level=3, boundscheck=False, wraparound=False, overflowcheck=True, cdivision=True
"""Compiled path kernels.

Same contract as ``_kernels_py``; arithmetic is done in ``long long`` with
overflow checks, so an ``OverflowError`` means the caller must retry with
the pure-Python kernels.
"""

from libc.stdlib cimport malloc, free


cdef long long _gcd(long long a, long long b) except? -1:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef long long _lcm(long long a, long long b) except? -1:
    return (a // _gcd(a, b)) * b


cdef bint _collinear(long long* u, long long* w, int d) except -1:
    cdef int p = 0
    while p < d and u[p] == 0:
        p += 1
    cdef long long up = u[p]
    cdef long long wp = w[p]
    if wp == 0 or (wp > 0) != (up > 0):
        return False
    cdef int b
    for b in range(d):
        if up * w[b] != wp * u[b]:
            return False
    return True


cdef tuple _finish(long long* buf, int m, int d, long long denom):
    """Merge/drop rows in place and return the canonical Python value."""
    cdef int s = 0
    cdef int r, b
    cdef bint nonzero
    for r in range(m):
        nonzero = False
        for b in range(d):
            if buf[r * d + b] != 0:
                nonzero = True
                break
        if not nonzero:
            continue
        if s > 0 and _collinear(&buf[(s - 1) * d], &buf[r * d], d):
            for b in range(d):
                buf[(s - 1) * d + b] += buf[r * d + b]
        else:
            if s != r:
                for b in range(d):
                    buf[s * d + b] = buf[r * d + b]
            s += 1
    if s == 0:
        return ((), 1)
    cdef long long g = denom
    for r in range(s * d):
        if g == 1:
            break
        g = _gcd(g, buf[r])
    out = []
    for r in range(s):
        out.append(tuple([buf[r * d + b] // g for b in range(d)]))
    return (tuple(out), denom // g)


cdef long long* _load(rows, int m, int d, int extra) except NULL:
    cdef long long* buf = <long long*> malloc(sizeof(long long) * d * (m + extra + 1))
    if buf == NULL:
        raise MemoryError()
    cdef int r, b
    try:
        for r in range(m):
            row = rows[r]
            for b in range(d):
                buf[r * d + b] = row[b]
    except BaseException:
        free(buf)
        raise
    return buf


def canonical_form(rows, denom):
    cdef int m = len(rows)
    if m == 0:
        return ((), 1)
    cdef int d = len(rows[0])
    cdef long long* buf = _load(rows, m, d, 0)
    try:
        return _finish(buf, m, d, denom)
    finally:
        free(buf)


def h_extrema(rows, int col):
    cdef long long acc = 0
    cdef long long low = 0
    for row in rows:
        acc += <long long> row[col]
        if acc < low:
            low = acc
    return low, acc


def root_operator(rows, long long denom, int col, alpha, long long alpha_denom,
                  long long k, bint lowering):
    cdef int m = len(rows)
    if m == 0:
        return None
    cdef int d = len(rows[0])
    cdef long long* src = _load(rows, m, d, 0)
    cdef long long* H = <long long*> malloc(sizeof(long long) * (m + 1))
    cdef long long* smin = <long long*> malloc(sizeof(long long) * (m + 1))
    # per piece: source row, p, q, hval
    cdef long long* pc = <long long*> malloc(sizeof(long long) * 4 * 2 * m)
    cdef long long* al = <long long*> malloc(sizeof(long long) * d)
    cdef long long* out = NULL
    cdef int j, b, npc = 0
    cdef long long lo, K, level, run_min, hj, start, end, top, p, q, scale, f, g
    try:
        if H == NULL or smin == NULL or pc == NULL or al == NULL:
            raise MemoryError()
        for b in range(d):
            al[b] = alpha[b]
        H[0] = 0
        lo = 0
        for j in range(m):
            H[j + 1] = H[j] + src[j * d + col]
            if H[j + 1] < lo:
                lo = H[j + 1]
        K = k * denom
        if lowering:
            if H[m] - lo < K:
                return None
        elif lo > -K:
            return None
        level = lo + K

        if not lowering:
            run_min = 0
            for j in range(m):
                hj = src[j * d + col]
                if hj < 0:
                    start = H[j]
                    end = H[j + 1]
                    top = start
                    if run_min < top:
                        top = run_min
                    if level < top:
                        top = level
                    if end < top:
                        q = -hj
                        p = start - top
                        if p:
                            pc[4 * npc] = j; pc[4 * npc + 1] = p; pc[4 * npc + 2] = q; pc[4 * npc + 3] = 0
                            npc += 1
                        pc[4 * npc] = j; pc[4 * npc + 1] = q - p; pc[4 * npc + 2] = q; pc[4 * npc + 3] = end - top
                        npc += 1
                    else:
                        pc[4 * npc] = j; pc[4 * npc + 1] = 1; pc[4 * npc + 2] = 1; pc[4 * npc + 3] = 0
                        npc += 1
                    if end < run_min:
                        run_min = end
                else:
                    pc[4 * npc] = j; pc[4 * npc + 1] = 1; pc[4 * npc + 2] = 1; pc[4 * npc + 3] = 0
                    npc += 1
        else:
            smin[m] = H[m]
            for j in range(m - 1, -1, -1):
                smin[j] = H[j] if H[j] < smin[j + 1] else smin[j + 1]
            for j in range(m):
                hj = src[j * d + col]
                if hj > 0:
                    start = H[j]
                    top = smin[j + 1]
                    if level < top:
                        top = level
                    if top > start:
                        p = top - start
                        pc[4 * npc] = j; pc[4 * npc + 1] = p; pc[4 * npc + 2] = hj; pc[4 * npc + 3] = p
                        npc += 1
                        if hj - p:
                            pc[4 * npc] = j; pc[4 * npc + 1] = hj - p; pc[4 * npc + 2] = hj; pc[4 * npc + 3] = 0
                            npc += 1
                    else:
                        pc[4 * npc] = j; pc[4 * npc + 1] = 1; pc[4 * npc + 2] = 1; pc[4 * npc + 3] = 0
                        npc += 1
                else:
                    pc[4 * npc] = j; pc[4 * npc + 1] = 1; pc[4 * npc + 2] = 1; pc[4 * npc + 3] = 0
                    npc += 1

        scale = alpha_denom
        for j in range(npc):
            if pc[4 * j + 2] != 1:
                scale = _lcm(scale, pc[4 * j + 2])
        out = <long long*> malloc(sizeof(long long) * d * (npc + 1))
        if out == NULL:
            raise MemoryError()
        for j in range(npc):
            f = pc[4 * j + 1] * (scale // pc[4 * j + 2])
            g = pc[4 * j + 3] * (scale // alpha_denom)
            for b in range(d):
                out[j * d + b] = src[pc[4 * j] * d + b] * f - g * al[b]
        return _finish(out, npc, d, denom * scale)
    finally:
        free(src)
        free(H)
        free(smin)
        free(pc)
        free(al)
        if out != NULL:
            free(out)
