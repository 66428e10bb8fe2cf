"""Pure-Python kernel: dense integer bracket/elimination primitives.

Mirror of the compiled module `_ops_c`; `gorbit._kernel` picks whichever is
importable.  All vectors are plain lists of Python ints (exact, unbounded),
and the bracket table comes flattened as (offsets, targets, coefficients).
"""

from __future__ import annotations


def brk(offs, tgts, cfs, dim, x, y):
    """Bracket of two dense coefficient vectors."""
    out = [0] * dim
    for i in range(dim):
        xi = x[i]
        if not xi:
            continue
        base = i * dim
        for j in range(dim):
            yj = y[j]
            if not yj:
                continue
            s = offs[base + j]
            e = offs[base + j + 1]
            if s == e:
                continue
            p = xi * yj
            for t in range(s, e):
                out[tgts[t]] += p * cfs[t]
    return out


def ad_cols(offs, tgts, cfs, dim, x):
    """All brackets [x, e_j], flattened column-major: out[j*dim + i]."""
    out = [0] * (dim * dim)
    for i in range(dim):
        xi = x[i]
        if not xi:
            continue
        base = i * dim
        for j in range(dim):
            s = offs[base + j]
            e = offs[base + j + 1]
            if s == e:
                continue
            col = j * dim
            for t in range(s, e):
                out[col + tgts[t]] += xi * cfs[t]
    return out


def dots_cols(cols, dim, w):
    """Per-column dot products against a weight vector."""
    ncols = len(cols) // dim
    out = [0] * ncols
    wnz = [(i, w[i]) for i in range(dim) if w[i]]
    for j in range(ncols):
        base = j * dim
        acc = 0
        for i, wi in wnz:
            v = cols[base + i]
            if v:
                acc += wi * v
        out[j] = acc
    return out


def bareiss_ranks(rows, acols):
    """Ranks of A and [A|b] for an integer matrix with one appended rhs column.

    Fraction-free elimination with full column sweep; returns
    (rank_A, rank_augmented).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = acols + 1
    prev = 1
    r = 0
    rank_a = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        mrc = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            for j in range(c, ncols):
                q, rem = divmod(m[i][j] * mrc - mic * m[r][j], prev)
                assert rem == 0
                m[i][j] = q
        prev = m[r][c]
        r += 1
        if c < acols:
            rank_a = r
        if r == nrows:
            break
    return rank_a, r
