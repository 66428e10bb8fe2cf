# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernel: dense integer bracket/elimination primitives.

Same contract as `_ops_py`; coefficients stay Python ints (exact, unbounded)
while the loop structure, table walks, and index arithmetic compile to C.
"""


def brk(object offs_o, object tgts_o, object cfs_o, Py_ssize_t dim, list x, list y):
    """Bracket of two dense coefficient vectors."""
    cdef long long[::1] offs = offs_o
    cdef long long[::1] tgts = tgts_o
    cdef long long[::1] cfs = cfs_o
    cdef Py_ssize_t i, j, t, base, s, e, k
    cdef list out = [0] * dim
    cdef object xi, yj, p
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
                k = <Py_ssize_t> tgts[t]
                out[k] = out[k] + p * (<long long> cfs[t])
    return out


def ad_cols(object offs_o, object tgts_o, object cfs_o, Py_ssize_t dim, list x):
    """All brackets [x, e_j], flattened column-major: out[j*dim + i]."""
    cdef long long[::1] offs = offs_o
    cdef long long[::1] tgts = tgts_o
    cdef long long[::1] cfs = cfs_o
    cdef Py_ssize_t i, j, t, base, s, e, col, k
    cdef list out = [0] * (dim * dim)
    cdef object xi
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
                k = col + <Py_ssize_t> tgts[t]
                out[k] = out[k] + xi * (<long long> cfs[t])
    return out


def dots_cols(list cols, Py_ssize_t dim, list w):
    """Per-column dot products against a weight vector."""
    cdef Py_ssize_t ncols = len(cols) // dim
    cdef Py_ssize_t i, j, base, nnz, t
    cdef list out = [0] * ncols
    cdef list widx = []
    cdef list wval = []
    cdef object wi, v, acc
    for i in range(dim):
        wi = w[i]
        if wi:
            widx.append(i)
            wval.append(wi)
    nnz = len(widx)
    for j in range(ncols):
        base = j * dim
        acc = 0
        for t in range(nnz):
            v = cols[base + <Py_ssize_t> widx[t]]
            if v:
                acc = acc + (<object> wval[t]) * v
        out[j] = acc
    return out


def bareiss_ranks(list rows, Py_ssize_t acols):
    """Ranks of A and [A|b] for an integer matrix with one appended rhs column."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = acols + 1
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t r = 0, rank_a = 0, c, i, j, piv
    cdef object prev = 1
    cdef object mrc, mic, tmp
    cdef list rowr, rowi
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if (<list> m[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            tmp = m[r]
            m[r] = m[piv]
            m[piv] = tmp
        rowr = <list> m[r]
        mrc = rowr[c]
        for i in range(r + 1, nrows):
            rowi = <list> m[i]
            mic = rowi[c]
            for j in range(c, ncols):
                rowi[j] = (rowi[j] * mrc - mic * rowr[j]) // prev
        prev = mrc
        r += 1
        if c < acols:
            rank_a = r
        if r == nrows:
            break
    return rank_a, r
