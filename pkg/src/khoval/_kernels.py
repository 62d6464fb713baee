"""Compiled inner loops: state enumeration, differential blocks, exact rank.

Everything here works on plain integer arrays so it can run under numba's
nopython mode.  Arc ids are zero-based in this module.
"""

import numpy as np
from numba import njit

# |entry| bound below which a fraction-free row combination cannot overflow int64
_SAFE = 1 << 30


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def _union(parent, x, y):
    rx = _find(parent, x)
    ry = _find(parent, y)
    if rx < ry:
        parent[ry] = rx
    elif ry < rx:
        parent[rx] = ry


@njit(cache=True)
def resolve_labels(xs, bits, m, out):
    """Circle label of every arc in the smoothing ``bits``; returns the circle count.

    Circles are numbered in order of their smallest arc.
    """
    parent = np.arange(m)
    for p in range(xs.shape[0]):
        a, b, c, d = xs[p, 0], xs[p, 1], xs[p, 2], xs[p, 3]
        if (bits >> p) & 1:
            _union(parent, a, d)
            _union(parent, b, c)
        else:
            _union(parent, a, b)
            _union(parent, c, d)
    count = 0
    for x in range(m):
        r = _find(parent, x)
        if r == x:
            out[x] = count
            count += 1
        else:
            out[x] = out[r]
    return count


@njit(cache=True)
def state_table(xs, m, lo, hi):
    """Arc-circle counts and arc labels for the states ``lo <= bits < hi``."""
    size = hi - lo
    counts = np.empty(size, np.int32)
    labels = np.empty((size, m), np.int8)
    buf = np.empty(m, np.int64)
    for s in range(size):
        counts[s] = resolve_labels(xs, lo + s, m, buf)
        for x in range(m):
            labels[s, x] = buf[x]
    return counts, labels


@njit(cache=True)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def binomials(size):
    table = np.zeros((size + 1, size + 1), np.int64)
    for a in range(size + 1):
        table[a, 0] = 1
        for b in range(1, a + 1):
            table[a, b] = table[a - 1, b - 1] + table[a - 1, b]
    return table


@njit(cache=True)
def colex_rank(mask, binom):
    """Position of ``mask`` among masks of the same popcount, in increasing order."""
    r = 0
    s = 1
    pos = 0
    while mask:
        if mask & 1:
            r += binom[pos, s]
            s += 1
        mask >>= 1
        pos += 1
    return r


@njit(cache=True)
def _first_mask(t):
    return (1 << t) - 1


@njit(cache=True)
def _next_mask(v):
    # Gosper's hack: next larger integer with the same popcount
    c = v & -v
    r = v + c
    return (((r ^ v) >> 2) // c) | r


@njit(cache=True)
def block_offsets(weights, counts, extra, i, j, binom):
    """Generator offsets of the (i, j) block for every state (-1 when absent).

    ``weights``/``counts`` are indexed by state bits; ``counts`` excludes
    crossing-free circles, which are added via ``extra``.
    """
    size = weights.shape[0]
    offsets = np.full(size, -1, np.int64)
    total = 0
    for e in range(size):
        if weights[e] != i:
            continue
        k = counts[e] + extra
        twice_t = k + i - j
        if twice_t < 0 or twice_t % 2 or twice_t // 2 > k:
            continue
        offsets[e] = total
        total += binom[k, twice_t // 2]
    return offsets, total


@njit(cache=True, nogil=True)
def differential_block(xs, weights, counts, labels, extra, i, j, binom, src_off, dst_off, nnz_bound):
    """COO triplets of the signed cube differential C^{i,j} -> C^{i+1,j}.

    Each state's tensor factors follow its circle order (smallest arc first,
    crossing-free circles last).  Labels are bitmasks with bit c set when
    circle c carries X.
    """
    n = xs.shape[0]
    m = labels.shape[1]
    rows = np.empty(nnz_bound, np.int64)
    cols = np.empty(nnz_bound, np.int64)
    vals = np.empty(nnz_bound, np.int64)
    nnz = 0
    rep = np.empty(m + extra + 1, np.int64)
    perm = np.empty(m + extra + 1, np.int64)
    size = weights.shape[0]
    for e in range(size):
        if src_off[e] < 0:
            continue
        karc = counts[e]
        k = karc + extra
        t = (k + i - j) // 2
        # representative (smallest) arc of every arc circle
        seen = 0
        for x in range(m):
            if labels[e, x] == seen:
                rep[seen] = x
                seen += 1
        for p in range(n):
            if (e >> p) & 1:
                continue
            e2 = e | (1 << p)
            if dst_off[e2] < 0:
                continue
            sign = 1 - 2 * (popcount(e & ((1 << p) - 1)) & 1)
            karc2 = counts[e2]
            for c in range(karc):
                perm[c] = labels[e2, rep[c]]
            for c in range(karc, k):
                perm[c] = c - karc + karc2
            a = xs[p, 0]
            b = xs[p, 1]
            cc = xs[p, 2]
            ca = labels[e, a]
            cb = labels[e, cc]
            merge = ca != cb
            if merge:
                target = labels[e2, a]
                s1 = 0
                s2 = 0
            else:
                target = -1
                s1 = labels[e2, a]
                s2 = labels[e2, b]
            mask = _first_mask(t)
            idx = src_off[e]
            limit = 1 << k
            while mask < limit:
                base = 0
                for c in range(k):
                    if c == ca or c == cb:
                        continue
                    if (mask >> c) & 1:
                        base |= 1 << perm[c]
                xa = (mask >> ca) & 1
                if merge:
                    xb = (mask >> cb) & 1
                    if not (xa and xb):
                        if xa or xb:
                            base |= 1 << target
                        rows[nnz] = dst_off[e2] + colex_rank(base, binom)
                        cols[nnz] = idx
                        vals[nnz] = sign
                        nnz += 1
                else:
                    if xa:
                        nm = base | (1 << s1) | (1 << s2)
                        rows[nnz] = dst_off[e2] + colex_rank(nm, binom)
                        cols[nnz] = idx
                        vals[nnz] = sign
                        nnz += 1
                    else:
                        nm = base | (1 << s1)
                        rows[nnz] = dst_off[e2] + colex_rank(nm, binom)
                        cols[nnz] = idx
                        vals[nnz] = sign
                        nnz += 1
                        nm = base | (1 << s2)
                        rows[nnz] = dst_off[e2] + colex_rank(nm, binom)
                        cols[nnz] = idx
                        vals[nnz] = sign
                        nnz += 1
                idx += 1
                if t == 0:
                    break
                mask = _next_mask(mask)
    return rows[:nnz], cols[:nnz], vals[:nnz]


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _combine(ra, va, rb, vb, fa, fb):
    """Sorted sparse fa*A - fb*B, normalised by the gcd of its entries."""
    out_r = np.empty(ra.shape[0] + rb.shape[0], np.int64)
    out_v = np.empty(ra.shape[0] + rb.shape[0], np.int64)
    p = 0
    q = 0
    n = 0
    while p < ra.shape[0] or q < rb.shape[0]:
        if q >= rb.shape[0] or (p < ra.shape[0] and ra[p] < rb[q]):
            r = ra[p]
            v = fa * va[p]
            p += 1
        elif p >= ra.shape[0] or rb[q] < ra[p]:
            r = rb[q]
            v = -fb * vb[q]
            q += 1
        else:
            r = ra[p]
            v = fa * va[p] - fb * vb[q]
            p += 1
            q += 1
        if v != 0:
            out_r[n] = r
            out_v[n] = v
            n += 1
    g = 0
    for s in range(n):
        g = _gcd(g, abs(out_v[s]))
    if g > 1:
        for s in range(n):
            out_v[s] //= g
    return out_r[:n], out_v[:n]


@njit(cache=True)
def _max_abs(v):
    m = 0
    for x in v:
        if abs(x) > m:
            m = abs(x)
    return m


@njit(cache=True, nogil=True)
def sparse_rank(n_rows, indptr, indices, data):
    """Exact rank of a CSC integer matrix by fraction-free column reduction.

    Columns are reduced against earlier pivots keyed by their largest row
    index.  Every combination is integral and divided by its content, so the
    arithmetic is exact; returns -1 if an entry could outgrow int64, in
    which case the caller must redo the block with unbounded integers.
    """
    n_cols = indptr.shape[0] - 1
    pivot_of_row = np.full(n_rows, -1, np.int64)
    store_r = []
    store_v = []
    rank = 0
    for j in range(n_cols):
        r = indices[indptr[j]:indptr[j + 1]].copy()
        v = data[indptr[j]:indptr[j + 1]].copy()
        while r.shape[0] > 0:
            low = r[r.shape[0] - 1]
            slot = pivot_of_row[low]
            if slot < 0:
                pivot_of_row[low] = len(store_r)
                store_r.append(r)
                store_v.append(v)
                rank += 1
                break
            pr = store_r[slot]
            pv = store_v[slot]
            fa = pv[pv.shape[0] - 1]
            fb = v[v.shape[0] - 1]
            g = _gcd(abs(fa), abs(fb))
            fa //= g
            fb //= g
            if abs(fa) >= _SAFE or abs(fb) >= _SAFE or _max_abs(v) >= _SAFE or _max_abs(pv) >= _SAFE:
                return -1
            r, v = _combine(r, v, pr, pv, fa, fb)
    return rank
