# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled linear algebra over a table-driven finite field."""
from libc.stdlib cimport malloc, free


cdef class FqKernel:
    """Row reduction and products over ``F_q`` given its operation tables."""

    cdef readonly int q
    cdef int *_add
    cdef int *_mul
    cdef int *_neg
    cdef int *_inv

    def __cinit__(self, int q, add, mul, neg, inv):
        cdef int i
        self.q = q
        self._add = <int *> malloc(q * q * sizeof(int))
        self._mul = <int *> malloc(q * q * sizeof(int))
        self._neg = <int *> malloc(q * sizeof(int))
        self._inv = <int *> malloc(q * sizeof(int))
        if not (self._add and self._mul and self._neg and self._inv):
            raise MemoryError()
        for i in range(q * q):
            self._add[i] = add[i]
            self._mul[i] = mul[i]
        for i in range(q):
            self._neg[i] = neg[i]
            self._inv[i] = inv[i]

    def __dealloc__(self):
        free(self._add)
        free(self._mul)
        free(self._neg)
        free(self._inv)

    cdef int *_load(self, rows, int nrows, int ncols) except NULL:
        cdef int *m = <int *> malloc((nrows * ncols + 1) * sizeof(int))
        cdef int i, j
        if not m:
            raise MemoryError()
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j]
        return m

    cdef int _reduce(self, int *m, int nrows, int ncols, int *pivots, bint full) noexcept nogil:
        cdef int q = self.q
        cdef int r = 0, col, pr, t, u, s, f, x
        cdef int *row
        cdef int *other
        cdef int *mf
        cdef int tmp
        for col in range(ncols):
            pr = r
            while pr < nrows and m[pr * ncols + col] == 0:
                pr += 1
            if pr == nrows:
                continue
            if pr != r:
                for u in range(ncols):
                    tmp = m[r * ncols + u]
                    m[r * ncols + u] = m[pr * ncols + u]
                    m[pr * ncols + u] = tmp
            row = m + r * ncols
            s = self._inv[row[col]]
            if full and s != 1:
                for u in range(col, ncols):
                    row[u] = self._mul[s * q + row[u]]
                s = 1
            for t in range(nrows):
                if t == r or (not full and t < r):
                    continue
                other = m + t * ncols
                f = other[col]
                if f:
                    mf = self._mul + self._neg[self._mul[f * q + s]] * q
                    for u in range(col, ncols):
                        x = row[u]
                        if x:
                            other[u] = self._add[other[u] * q + mf[x]]
            pivots[r] = col
            r += 1
            if r == nrows:
                break
        return r

    def rref(self, rows, int ncols):
        """Reduced row echelon form; returns ``(nonzero_rows, pivot_columns)``."""
        cdef int nrows = len(rows)
        if nrows == 0 or ncols == 0:
            return [], []
        cdef int *m = self._load(rows, nrows, ncols)
        cdef int *piv = <int *> malloc(nrows * sizeof(int))
        cdef int r, i, j
        try:
            r = self._reduce(m, nrows, ncols, piv, True)
            out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
            pivots = [piv[i] for i in range(r)]
        finally:
            free(m)
            free(piv)
        return out, pivots

    def rank(self, rows, int ncols):
        cdef int nrows = len(rows)
        if nrows == 0 or ncols == 0:
            return 0
        cdef int *m = self._load(rows, nrows, ncols)
        cdef int *piv = <int *> malloc(nrows * sizeof(int))
        cdef int r
        try:
            r = self._reduce(m, nrows, ncols, piv, False)
        finally:
            free(m)
            free(piv)
        return r

    def matmul(self, a, b):
        cdef int n = len(a)
        cdef int k = len(b)
        cdef int p = len(b[0]) if k else 0
        cdef int q = self.q
        cdef int i, j, t, x, y
        if n == 0:
            return []
        if k == 0:
            return [[0] * p for _ in range(n)]
        cdef int *ma = self._load(a, n, k)
        cdef int *mb = self._load(b, k, p)
        cdef int *mc = <int *> malloc((n * p + 1) * sizeof(int))
        try:
            for i in range(n * p):
                mc[i] = 0
            for i in range(n):
                for t in range(k):
                    x = ma[i * k + t]
                    if x:
                        for j in range(p):
                            y = mb[t * p + j]
                            if y:
                                mc[i * p + j] = self._add[mc[i * p + j] * q + self._mul[x * q + y]]
            out = [[mc[i * p + j] for j in range(p)] for i in range(n)]
        finally:
            free(ma)
            free(mb)
            free(mc)
        return out
