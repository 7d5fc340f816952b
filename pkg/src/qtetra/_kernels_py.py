"""Pure-Python linear algebra over a table-driven finite field.

Mirrors the compiled ``_kernels`` module function for function; the
selection between the two happens in :mod:`qtetra.linalg`.
"""
from __future__ import annotations


class FqKernel:
    """Row reduction and products over ``F_q`` given its operation tables."""

    def __init__(self, q, add, mul, neg, inv):
        self.q = q
        self._add = [list(add[a * q:(a + 1) * q]) for a in range(q)]
        self._mul = [list(mul[a * q:(a + 1) * q]) for a in range(q)]
        self._neg = list(neg)
        self._inv = list(inv)

    def rref(self, rows, ncols):
        """Reduced row echelon form; returns ``(nonzero_rows, pivot_columns)``."""
        m = [list(r) for r in rows]
        add, mul, neg, inv = self._add, self._mul, self._neg, self._inv
        pivots = []
        r = 0
        nrows = len(m)
        for col in range(ncols):
            pr = r
            while pr < nrows and m[pr][col] == 0:
                pr += 1
            if pr == nrows:
                continue
            m[r], m[pr] = m[pr], m[r]
            row = m[r]
            s = inv[row[col]]
            if s != 1:
                ms = mul[s]
                for t in range(col, ncols):
                    row[t] = ms[row[t]]
            for t in range(nrows):
                if t != r:
                    other = m[t]
                    f = other[col]
                    if f:
                        mf = mul[neg[f]]
                        for u in range(col, ncols):
                            x = row[u]
                            if x:
                                other[u] = add[other[u]][mf[x]]
            pivots.append(col)
            r += 1
            if r == nrows:
                break
        return m[:r], pivots

    def rank(self, rows, ncols):
        m = [list(r) for r in rows]
        add, mul, neg, inv = self._add, self._mul, self._neg, self._inv
        r = 0
        nrows = len(m)
        for col in range(ncols):
            pr = r
            while pr < nrows and m[pr][col] == 0:
                pr += 1
            if pr == nrows:
                continue
            m[r], m[pr] = m[pr], m[r]
            row = m[r]
            s = inv[row[col]]
            for t in range(r + 1, nrows):
                other = m[t]
                f = other[col]
                if f:
                    mf = mul[neg[mul[f][s]]]
                    for u in range(col, ncols):
                        x = row[u]
                        if x:
                            other[u] = add[other[u]][mf[x]]
            r += 1
            if r == nrows:
                break
        return r

    def matmul(self, a, b):
        add, mul = self._add, self._mul
        ncols = len(b[0]) if b else 0
        out = []
        for row in a:
            acc = [0] * ncols
            for k, x in enumerate(row):
                if x:
                    mx = mul[x]
                    brow = b[k]
                    for j in range(ncols):
                        y = brow[j]
                        if y:
                            acc[j] = add[acc[j]][mx[y]]
            out.append(acc)
        return out
