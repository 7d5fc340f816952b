"""Dense linear algebra over ``F_q`` with a switchable kernel backend.

The compiled extension is used when it imports; otherwise the pure-Python
kernel takes over.  ``use_backend`` switches explicitly (tests run both).
Matrices are lists of row lists of field elements.
"""
from __future__ import annotations

from typing import Sequence

from . import _kernels_py
from .finfield import FiniteField

try:  # pragma: no cover - depends on the build
    from . import _kernels as _kernels_c
except ImportError:  # pragma: no cover
    _kernels_c = None

_MODULES = {"python": _kernels_py}
if _kernels_c is not None:
    _MODULES["compiled"] = _kernels_c

_state = {"backend": "compiled" if _kernels_c is not None else "python"}
_cache: dict = {}


def available_backends() -> list[str]:
    return sorted(_MODULES)


def backend_name() -> str:
    return _state["backend"]


def use_backend(name: str) -> str:
    """Select ``"compiled"`` or ``"python"``; returns the previous backend."""
    if name not in _MODULES:
        raise ValueError(f"backend {name!r} unavailable (have {available_backends()})")
    prev = _state["backend"]
    _state["backend"] = name
    return prev


def kernel_for(field: FiniteField, backend: str | None = None):
    name = backend or _state["backend"]
    key = (name, id(field))
    entry = _cache.get(key)
    if entry is None or entry[1] is not field:
        # the field is kept alongside so its id cannot be recycled
        entry = (_MODULES[name].FqKernel(field.q, *field.tables()), field)
        _cache[key] = entry
    return entry[0]


class Fq:
    """Linear algebra helpers bound to one field."""

    def __init__(self, field: FiniteField):
        self.field = field

    @property
    def kernel(self):
        return kernel_for(self.field)

    def rref(self, rows, ncols: int):
        if not rows or ncols == 0:
            return [], []
        return self.kernel.rref(rows, ncols)

    def rank(self, rows, ncols: int) -> int:
        if not rows or ncols == 0:
            return 0
        return self.kernel.rank(rows, ncols)

    def matmul(self, a, b):
        if not a:
            return []
        if not b:
            return [[] for _ in a]
        return self.kernel.matmul(a, b)

    def matvec(self, a, x):
        return [row[0] for row in self.matmul(a, [[t] for t in x])] if a else []

    def nullspace(self, rows, ncols: int) -> list[list[int]]:
        """Basis of ``{x : rows . x = 0}``."""
        red, piv = self.rref(rows, ncols)
        F = self.field
        pivset = set(piv)
        basis = []
        for f in range(ncols):
            if f in pivset:
                continue
            x = [0] * ncols
            x[f] = 1
            for r, pc in enumerate(piv):
                x[pc] = F.neg(red[r][f])
            basis.append(x)
        return basis

    def coords(self, basis: Sequence[Sequence[int]], vectors: Sequence[Sequence[int]]):
        """Rows ``c`` with ``vector = sum_r c_r basis_r``; ``None`` if some vector is outside the span."""
        r = len(basis)
        if not vectors:
            return []
        if r == 0:
            return [[] for _ in vectors] if all(not any(v) for v in vectors) else None
        n = len(basis[0])
        w = len(vectors)
        aug = [[basis[s][t] for s in range(r)] + [vectors[u][t] for u in range(w)] for t in range(n)]
        red, piv = self.rref(aug, r + w)
        if piv[:r] != list(range(r)) or len(piv) > r:
            if len(piv) >= r and piv[:r] == list(range(r)):
                return None
            raise ValueError("basis vectors are linearly dependent")
        return [[red[s][r + u] for s in range(r)] for u in range(w)]

    def in_span(self, basis, vectors) -> bool:
        n = len(basis[0]) if basis else (len(vectors[0]) if vectors else 0)
        return self.rank(list(basis) + list(vectors), n) == self.rank(list(basis), n) if basis else all(not any(v) for v in vectors)

    def transpose(self, a, ncols: int | None = None):
        if not a:
            return [[] for _ in range(ncols or 0)]
        return [list(col) for col in zip(*a)]

    def identity(self, n: int):
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def inverse(self, a):
        n = len(a)
        aug = [list(a[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
        red, piv = self.rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(red) < n:
            raise ValueError("matrix is singular")
        return [row[n:] for row in red]

    def is_invertible(self, a) -> bool:
        return self.rank(a, len(a)) == len(a) if a else True
