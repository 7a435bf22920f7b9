"""Pure-Python path kernels.

A path is stored as integer rows over a shared positive denominator: row
``j`` is the displacement of segment ``j`` scaled by ``denom``.  Rows hold
the fundamental-weight coefficients followed by the delta coefficient.  The
canonical form has no zero rows, no two consecutive positively-collinear
rows, and ``gcd(denom, all entries) == 1``; equal paths therefore have
identical ``(rows, denom)``.

The compiled module ``_kernels`` implements the same three functions with
C integers and overflow checks.
"""

from math import gcd, lcm


def _collinear(u, w):
    """True iff ``w`` is a positive multiple of ``u`` (both nonzero)."""
    for p, up in enumerate(u):
        if up:
            break
    wp = w[p]
    if wp == 0 or (wp > 0) != (up > 0):
        return False
    return all(up * wb == wp * ub for ub, wb in zip(u, w))


def canonical_form(rows, denom):
    stack = []
    for row in rows:
        if not any(row):
            continue
        if stack and _collinear(stack[-1], row):
            stack[-1] = [a + b for a, b in zip(stack[-1], row)]
        else:
            stack.append(list(row))
    if not stack:
        return (), 1
    g = denom
    for row in stack:
        for x in row:
            g = gcd(g, x)
            if g == 1:
                break
        if g == 1:
            break
    if g != 1:
        return tuple(tuple(x // g for x in row) for row in stack), denom // g
    return tuple(tuple(row) for row in stack), denom


def h_extrema(rows, col):
    """Minimum and final value of the scaled H-function on column ``col``."""
    acc = 0
    low = 0
    for row in rows:
        acc += row[col]
        if acc < low:
            low = acc
    return low, acc


def root_operator(rows, denom, col, alpha, alpha_denom, k, lowering):
    """Apply ``e_i^(k)`` (or ``f_i^(k)`` when ``lowering``) to a canonical path.

    ``col`` is the column of ``Lambda_i``; ``alpha`` is ``alpha_i`` scaled by
    ``alpha_denom``.  Returns the canonical result or ``None``.

    The reflected portions are exactly those where H sits at its running
    minimum (from the left for e, from the right for f) while strictly
    moving, restricted to values in ``[m, m + k]``.  Each segment is cut at
    most once, so the subdivision is the finest one at breakpoints of H.
    """
    h = [row[col] for row in rows]
    nseg = len(h)
    H = [0] * (nseg + 1)
    for j in range(nseg):
        H[j + 1] = H[j] + h[j]
    m = min(H)
    K = k * denom
    if lowering:
        if H[nseg] - m < K:
            return None
    elif m > -K:
        return None
    level = m + K

    # pieces: (row, p, q, hval) meaning row * p / q, reflected by hval when hval != 0
    pieces = []
    if not lowering:
        run_min = 0
        for j in range(nseg):
            hj = h[j]
            if hj < 0:
                start, end = H[j], H[j + 1]
                top = min(start, run_min, level)
                if end < top:
                    q = -hj
                    p = start - top
                    if p:
                        pieces.append((rows[j], p, q, 0))
                    pieces.append((rows[j], q - p, q, end - top))
                else:
                    pieces.append((rows[j], 1, 1, 0))
                if end < run_min:
                    run_min = end
            else:
                pieces.append((rows[j], 1, 1, 0))
    else:
        suffix_min = H[:]
        for j in range(nseg - 1, -1, -1):
            if suffix_min[j + 1] < suffix_min[j]:
                suffix_min[j] = suffix_min[j + 1]
        for j in range(nseg):
            hj = h[j]
            if hj > 0:
                start = H[j]
                top = min(H[j + 1], suffix_min[j + 1], level)
                if top > start:
                    p = top - start
                    pieces.append((rows[j], p, hj, p))
                    if hj - p:
                        pieces.append((rows[j], hj - p, hj, 0))
                else:
                    pieces.append((rows[j], 1, 1, 0))
            else:
                pieces.append((rows[j], 1, 1, 0))

    scale = alpha_denom
    for _, _, q, _ in pieces:
        if q != 1:
            scale = lcm(scale, q)
    out = []
    for row, p, q, hval in pieces:
        f = p * (scale // q)
        new = [x * f for x in row]
        if hval:
            g = hval * (scale // alpha_denom)
            new = [x - g * a for x, a in zip(new, alpha)]
        out.append(new)
    return canonical_form(out, denom * scale)
