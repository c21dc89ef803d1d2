"""Compiled inner loops of the exhaustive oracle.

Vertices are 0-indexed here.  ``partner[v]`` is the other end of the arc at
``v``; during the walk -1 marks an undecided vertex and -2 an unpaired one.
Genus uses the backbone-contracted chord diagram (one polygon vertex), an
independent route from the half-edge traversal in :mod:`blockspectrum.diagram`.
"""
import numpy as np

from ._accel import jit

TYPE_TRIVIAL, TYPE_T, TYPE_H, TYPE_K, TYPE_L, TYPE_M, TYPE_OTHER = range(7)
TYPE_NAMES = ("trivial", "T", "H", "K", "L", "M", "other")
NO_ARCS = 1 << 30  # min_stack of an arc-free diagram


@jit
def _crosses(a0, a1, b0, b1):
    return (a0 < b0 and b0 < a1 and a1 < b1) or (b0 < a0 and a0 < b1 and b1 < a1)


@jit
def _relabel(left, right, m):
    ends = np.empty(2 * m, np.int64)
    for k in range(m):
        ends[2 * k] = left[k]
        ends[2 * k + 1] = right[k]
    ends.sort()
    for k in range(m):
        left[k] = np.searchsorted(ends, left[k])
        right[k] = np.searchsorted(ends, right[k])


@jit
def _chord_genus(left, right, m):
    """Genus of ``m`` arcs on endpoints ``0..2m-1``: faces are cycles of shift . pairing."""
    size = 2 * m
    pair = np.empty(size, np.int64)
    for k in range(m):
        pair[left[k]] = right[k]
        pair[right[k]] = left[k]
    seen = np.zeros(size, np.bool_)
    cycles = 0
    for s in range(size):
        if not seen[s]:
            cycles += 1
            x = s
            while not seen[x]:
                seen[x] = True
                x = pair[x] + 1
                if x == size:
                    x = 0
    return (m + 1 - cycles) // 2


@jit
def _shadow_code(left, right, m, genus):
    """Block type code of a component given its relabelled arcs."""
    if m == 1:
        return TYPE_T
    if genus >= 2:
        return TYPE_OTHER
    while True:
        hit = -1
        for a in range(m):
            for b in range(m):
                if left[b] == left[a] + 1 and right[b] == right[a] - 1:
                    hit = b
        if hit < 0:
            break
        left[hit] = left[m - 1]
        right[hit] = right[m - 1]
        m -= 1
        _relabel(left, right, m)
    if m == 2:
        return TYPE_H
    if m == 4:
        return TYPE_M
    for a in range(m):
        for b in range(a + 1, m):
            if not _crosses(left[a], right[a], left[b], right[b]):
                return TYPE_K
    return TYPE_L


@jit
def _analyse(partner, n, blen_row, btype_row):
    """Return ``(min_stack, max_genus, n_blocks)`` and fill the block rows."""
    half = n // 2 + 1
    L = np.empty(half, np.int64)
    R = np.empty(half, np.int64)
    arc_at = np.full(max(n, 1), -1, np.int64)
    m = 0
    for v in range(n):
        if partner[v] > v:
            L[m] = v
            R[m] = partner[v]
            arc_at[v] = m
            m += 1

    min_stack = NO_ARCS
    for a in range(m):
        i = L[a]
        j = R[a]
        if i > 0 and j < n - 1 and partner[i - 1] == j + 1:
            continue
        s = 0
        while i + s < j - s and partner[i + s] == j - s:
            s += 1
        if s < min_stack:
            min_stack = s

    root = np.arange(m)
    for a in range(m):
        for b in range(a + 1, m):
            if _crosses(L[a], R[a], L[b], R[b]):
                ra = a
                while root[ra] != ra:
                    ra = root[ra]
                rb = b
                while root[rb] != rb:
                    rb = root[rb]
                if ra != rb:
                    root[ra] = rb
    for a in range(m):
        r = a
        while root[r] != r:
            r = root[r]
        root[a] = r

    hi = np.full(max(m, 1), -1, np.int64)
    code = np.zeros(max(m, 1), np.int64)
    max_genus = 0
    cl = np.empty(max(m, 1), np.int64)
    cr = np.empty(max(m, 1), np.int64)
    for c in range(m):
        if root[c] != c:
            continue
        k = 0
        for a in range(m):
            if root[a] == c:
                cl[k] = L[a]
                cr[k] = R[a]
                if R[a] > hi[c]:
                    hi[c] = R[a]
                k += 1
        _relabel(cl, cr, k)
        g = _chord_genus(cl, cr, k)
        if g > max_genus:
            max_genus = g
        code[c] = _shadow_code(cl, cr, k, g)

    nb = 0
    v = 0
    while v < n:
        if partner[v] < 0:
            blen_row[nb] = 1
            btype_row[nb] = TYPE_TRIVIAL
            v += 1
        else:
            c = root[arc_at[v]]
            blen_row[nb] = hi[c] - v + 1
            btype_row[nb] = code[c]
            v = hi[c] + 1
        nb += 1
    return min_stack, max_genus, nb


@jit
def walk(n, lam, fill, partners, min_stack, max_genus, blen, btype, nblocks):
    """Visit every partial matching on ``n`` vertices with arc length >= ``lam``.

    Returns the number of matchings.  With ``fill`` set, row ``k`` of each
    output array describes the ``k``-th matching (lexicographic in the
    choices "unpaired" < "paired to j" for j increasing).
    """
    partner = np.full(n, -1, np.int64)
    dec_v = np.empty(n + 1, np.int64)
    dec_c = np.empty(n + 1, np.int64)
    depth = 0
    i = 0
    count = 0
    while True:
        while i < n and partner[i] >= 0:
            i += 1
        if i < n:
            partner[i] = -2
            dec_v[depth] = i
            dec_c[depth] = -1
            depth += 1
            i += 1
            continue
        if fill:
            for v in range(n):
                partners[count, v] = partner[v] if partner[v] >= 0 else -1
            ms, mg, nb = _analyse(partner, n, blen[count], btype[count])
            min_stack[count] = ms
            max_genus[count] = mg
            nblocks[count] = nb
        count += 1
        advanced = False
        while depth > 0:
            depth -= 1
            v = dec_v[depth]
            c = dec_c[depth]
            if c >= 0:
                partner[c] = -1
                start = c + 1
            else:
                start = v + lam
            partner[v] = -1
            j = start
            while j < n and partner[j] != -1:
                j += 1
            if j < n:
                partner[v] = j
                partner[j] = v
                dec_c[depth] = j
                depth += 1
                i = v + 1
                advanced = True
                break
        if not advanced:
            break
    return count
