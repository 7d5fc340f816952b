"""Representations of valued quivers over a finite field ``F_q``.

Vertex ``i`` carries ``K_i^{v_i}`` with ``K_i = F_{q^{d_i}}``.  All linear
algebra happens over ``F_q`` after restriction of scalars: a vector of
``K_i^{v_i}`` is the concatenation of the power-basis coordinates of its
entries, and multiplication by the generator ``x`` of ``K_i`` is the block
diagonal companion matrix.  Subspaces are always ``K_i``-subspaces, stored
through the expanded basis ``u, xu, ..., x^{d-1}u`` of a ``K_i``-basis, so
that restricting or projecting keeps the companion form of the ``K_i``-action.

An arrow ``i -> j`` carries an ``F_q`` matrix of shape ``(v_j d_j) x (v_i d_i)``
that commutes with the action of ``F_{q^g}``, ``g = gcd(d_i, d_j)``.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations, product
from math import gcd
from typing import Iterator, Sequence

from .cartan import DimVector, ValuedQuiver, euler_form, positive_roots
from .finfield import FiniteField, embedding, is_prime_power
from .linalg import Fq

Matrix = tuple  # tuple of row tuples

# Desk-scale caps for exhaustive searches.
MAX_ORBIT_FQ_DIM = 6
MAX_ENUM_Q = 13
MAX_ORBIT_TUPLES = 250000


def _freeze(m) -> Matrix:
    return tuple(tuple(r) for r in m)


def _blockdiag(block: Sequence[Sequence[int]], copies: int) -> list[list[int]]:
    d = len(block)
    n = d * copies
    out = [[0] * n for _ in range(n)]
    for c in range(copies):
        for r in range(d):
            for s in range(d):
                out[c * d + r][c * d + s] = block[r][s]
    return out


class RepContext:
    """A valued quiver over a fixed ``F_q`` together with all cached tables."""

    def __init__(self, quiver: ValuedQuiver, q: int):
        if not is_prime_power(q):
            raise ValueError(f"{q} is not a prime power")
        self.quiver = quiver
        self.q = q
        self.F = FiniteField.of_order(q)
        self.la = Fq(self.F)
        self.K = [self.F.extension(d) for d in quiver.d]
        # for d_i = 1 the generator acts as the identity
        self.companion = [K.companion() if K is not self.F else [[1]] for K in self.K]
        # expanded arrows: one slot per parallel arrow
        self.arrows: list[tuple[int, int]] = []
        for i, j, m in quiver.arrow_indices():
            for _ in range(m):
                self.arrows.append((i, j))
        self._sub_cache: dict = {}
        self._arrow_cache: dict = {}
        self._class_cache: dict = {}
        self._gfield_action: dict = {}

    def __repr__(self):
        return f"RepContext(q={self.q}, d={self.quiver.d}, arrows={self.arrows})"

    # -- vertex geometry ----------------------------------------------------
    def d(self, i: int) -> int:
        return self.quiver.d[i]

    def kaction(self, i: int, v: int) -> list[list[int]]:
        """Multiplication by the generator of ``K_i`` on ``K_i^v``."""
        return _blockdiag(self.companion[i], v)

    def ksubspaces(self, i: int, v: int, e: int) -> list[tuple[Matrix, tuple[int, ...]]]:
        """All ``K_i``-subspaces of ``K_i^v`` of ``K``-dimension ``e``.

        Each comes as ``(expanded F_q basis, K-pivot columns)``; enumeration order
        is by pivot set, then by free entries, as in reduced echelon form.
        """
        key = (i, v, e)
        if key in self._sub_cache:
            return self._sub_cache[key]
        K = self.K[i]
        d = self.d(i)
        X = self.companion[i]
        out = []
        for pivots in combinations(range(v), e):
            pivset = set(pivots)
            free_slots = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, v) if c not in pivset]
            for vals in product(range(K.q), repeat=len(free_slots)):
                kmat = [[0] * v for _ in range(e)]
                for r, p in enumerate(pivots):
                    kmat[r][p] = 1
                for (r, c), val in zip(free_slots, vals):
                    kmat[r][c] = val
                basis = []
                for row in kmat:
                    coords = []
                    for entry in row:
                        coords.extend(K.to_coords(entry) if d > 1 else [entry])
                    vec = coords
                    for _ in range(d):
                        basis.append(tuple(vec))
                        vec = _apply_blocks(self.F, X, vec, d)
                out.append((tuple(basis), pivots))
        self._sub_cache[key] = out
        return out

    def complement(self, i: int, v: int, pivots: Sequence[int]) -> Matrix:
        """Standard expanded basis vectors at the non-pivot ``K``-columns."""
        d = self.d(i)
        rows = []
        for c in range(v):
            if c in pivots:
                continue
            for m in range(d):
                vec = [0] * (v * d)
                vec[c * d + m] = 1
                rows.append(tuple(vec))
        return tuple(rows)

    # -- arrow spaces ---------------------------------------------------------
    def _small_action(self, i: int, v: int, g: int) -> list[list[int]]:
        """Action of the generator of ``F_{q^g}`` on ``K_i^v`` (via a field embedding)."""
        key = (i, v, g)
        if key not in self._gfield_action:
            small = self.F.extension(g)
            table = embedding(small, self.K[i])
            y = table[small.gen()]
            block = self.K[i].mult_matrix(y)
            self._gfield_action[key] = _blockdiag(block, v)
        return self._gfield_action[key]

    def arrow_space(self, a: int, vi: int, vj: int) -> list[Matrix]:
        """``F_q``-basis of the ``F_{q^g}``-linear maps for arrow slot ``a``."""
        key = (a, vi, vj)
        if key in self._arrow_cache:
            return self._arrow_cache[key]
        i, j = self.arrows[a]
        ni, nj = vi * self.d(i), vj * self.d(j)
        g = gcd(self.d(i), self.d(j))
        if g == 1 or ni == 0 or nj == 0:
            basis = []
            for r in range(nj):
                for c in range(ni):
                    basis.append(tuple(tuple(1 if (rr, cc) == (r, c) else 0 for cc in range(ni)) for rr in range(nj)))
        else:
            Yi = self._small_action(i, vi, g)
            Yj = self._small_action(j, vj, g)
            eqs = _commuting_equations(self.F, nj, ni, Yi, Yj)
            sols = self.la.nullspace(eqs, nj * ni)
            basis = [tuple(tuple(s[r * ni:(r + 1) * ni]) for r in range(nj)) for s in sols]
        self._arrow_cache[key] = basis
        return basis


def _apply_blocks(F: FiniteField, X, vec, d):
    """Apply the ``d x d`` block ``X`` to every length-``d`` block of ``vec``."""
    if d == 1:
        return list(vec)
    out = []
    for start in range(0, len(vec), d):
        blk = vec[start:start + d]
        for row in X:
            acc = 0
            for a, b in zip(row, blk):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
    return out


def _commuting_equations(F: FiniteField, nrows: int, ncols: int, Yi, Yj) -> list[list[int]]:
    """Rows of ``phi Yi - Yj phi = 0`` in the unknown entries of ``phi``."""
    eqs = []
    for r in range(nrows):
        for c in range(ncols):
            row = [0] * (nrows * ncols)
            for t in range(ncols):
                if Yi[t][c]:
                    row[r * ncols + t] = F.add(row[r * ncols + t], Yi[t][c])
            for t in range(nrows):
                if Yj[r][t]:
                    row[t * ncols + c] = F.sub(row[t * ncols + c], Yj[r][t])
            eqs.append(row)
    return eqs


def _gbasis(ctx: RepContext, i: int, g: int) -> tuple[list[list[int]], list[list[int]]]:
    """``F_q`` matrix of ``K_i`` in the ``F_{q^g}``-basis ``1, x, ..., x^{d/g-1}`` and its inverse.

    Column ``r g + s`` holds the coordinates of ``w^s x^r`` with ``w`` the generator of ``F_{q^g}``.
    """
    K = ctx.K[i]
    d = ctx.d(i)
    small = ctx.F.extension(g)
    emb = embedding(small, K)
    x = K.gen() if d > 1 else 1
    cols = []
    xr = 1
    for _ in range(d // g):
        for s in range(g):
            w = emb[small.from_coords([int(t == s) for t in range(g)])]
            cols.append(K.to_coords(K.mul(w, xr)) if K is not ctx.F else [K.mul(w, xr)])
        xr = K.mul(xr, x)
    M = [[cols[c][r] for c in range(d)] for r in range(d)]
    return M, ctx.la.inverse(M)


def _to_gfield(ctx: RepContext, i: int, j: int, g: int, dims, phi) -> list[list[int]]:
    if g == 1:
        return [list(r) for r in phi]
    small = ctx.F.extension(g)
    di, dj = ctx.d(i), ctx.d(j)
    _, Minv = _gbasis(ctx, j, g)
    ri, rj = di // g, dj // g
    out = [[0] * (dims[i] * ri) for _ in range(dims[j] * rj)]
    for t in range(dims[i]):
        for r in range(ri):
            col = t * di + r  # x^r in entry t is a unit vector over F_q
            image = [phi[row][col] for row in range(dims[j] * dj)]
            for t2 in range(dims[j]):
                c = ctx.la.matvec(Minv, image[t2 * dj:(t2 + 1) * dj])
                for r2 in range(rj):
                    out[t2 * rj + r2][t * ri + r] = small.from_coords(c[r2 * g:(r2 + 1) * g])
    return out


def _from_gfield(ctx: RepContext, i: int, j: int, g: int, dims, A) -> list[list[int]]:
    if g == 1:
        return [list(r) for r in A]
    small = ctx.F.extension(g)
    di, dj = ctx.d(i), ctx.d(j)
    _, Minv_i = _gbasis(ctx, i, g)
    Mj, _ = _gbasis(ctx, j, g)
    ri, rj = di // g, dj // g
    if len(A) != dims[j] * rj or any(len(row) != dims[i] * ri for row in A):
        raise ValueError("arrow matrix over F_(q^g) has the wrong shape")
    phi = [[0] * (dims[i] * di) for _ in range(dims[j] * dj)]
    for t in range(dims[i]):
        for u in range(di):
            # x^u = sum_r c_r x^r with c_r in F_{q^g}
            cq = [row[u] for row in Minv_i]
            c = [small.from_coords(cq[r * g:(r + 1) * g]) for r in range(ri)]
            for t2 in range(dims[j]):
                coords = []
                for r2 in range(rj):
                    acc = 0
                    for r in range(ri):
                        acc = small.add(acc, small.mul(c[r], A[t2 * rj + r2][t * ri + r]))
                    coords += small.to_coords(acc) if small is not ctx.F else [acc]
                y = ctx.la.matvec(Mj, coords)
                for k in range(dj):
                    phi[t2 * dj + k][t * di + u] = y[k]
    return phi


@lru_cache(maxsize=None)
def context(quiver: ValuedQuiver, q: int) -> RepContext:
    return RepContext(quiver, q)


class QuiverRep:
    """A concrete representation: dimension vector plus one matrix per arrow slot."""

    __slots__ = ("ctx", "dims", "maps", "_hash")

    def __init__(self, ctx: RepContext, dims: Sequence[int], maps: Sequence, check: bool = True):
        self.ctx = ctx
        self.dims = tuple(int(x) for x in dims)
        self.maps = tuple(_freeze(m) for m in maps)
        self._hash = None
        if check:
            self._validate()

    def _validate(self):
        ctx = self.ctx
        if len(self.dims) != ctx.quiver.n or min(self.dims, default=0) < 0:
            raise ValueError("bad dimension vector")
        if len(self.maps) != len(ctx.arrows):
            raise ValueError(f"expected {len(ctx.arrows)} arrow matrices, got {len(self.maps)}")
        for a, (i, j) in enumerate(ctx.arrows):
            ni, nj = self.fq_dim(i), self.fq_dim(j)
            m = self.maps[a]
            if nj and (len(m) != nj or any(len(r) != ni for r in m)):
                raise ValueError(f"arrow {a} must be {nj} x {ni} over F_q")
            if not nj and len(m):
                raise ValueError(f"arrow {a} must be empty")
            if any(x < 0 or x >= ctx.q for r in m for x in r):
                raise ValueError("matrix entries must encode elements of F_q")
            g = gcd(ctx.d(i), ctx.d(j))
            if g > 1 and ni and nj:
                Yi = ctx._small_action(i, self.dims[i], g)
                Yj = ctx._small_action(j, self.dims[j], g)
                if ctx.la.matmul(list(m), Yi) != ctx.la.matmul(Yj, list(m)):
                    raise ValueError(f"arrow {a} is not linear over F_(q^{g})")

    # -- basics -----------------------------------------------------------------
    def fq_dim(self, i: int) -> int:
        return self.dims[i] * self.ctx.d(i)

    def total_fq_dim(self) -> int:
        return sum(self.fq_dim(i) for i in range(len(self.dims)))

    def is_zero(self) -> bool:
        return not any(self.dims)

    def key(self) -> tuple:
        return (self.dims, self.maps)

    def __eq__(self, other):
        return isinstance(other, QuiverRep) and self.ctx is other.ctx and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"QuiverRep(dims={self.dims}, maps={[list(map(list, m)) for m in self.maps]}, q={self.ctx.q})"

    def map_of(self, a: int) -> list[list[int]]:
        return [list(r) for r in self.maps[a]]

    def to_json(self) -> dict:
        """Arrow matrices over ``F_q`` after restriction of scalars."""
        return {"q": self.ctx.q, "dims": list(self.dims), "maps": [[list(r) for r in m] for m in self.maps]}

    @classmethod
    def from_json(cls, ctx: RepContext, data: dict) -> "QuiverRep":
        if data.get("field") == "gcd":
            return cls.from_gfield_json(ctx, data)
        dims = tuple(data["dims"])
        maps = data.get("maps") or []
        if not maps:
            maps = [[[0] * (dims[i] * ctx.d(i)) for _ in range(dims[j] * ctx.d(j))] for i, j in ctx.arrows]
        return cls(ctx, dims, maps)

    def to_gfield_json(self) -> dict:
        """Arrow matrices over ``F_{q^g}`` of shape ``(v_j d_j/g) x (v_i d_i/g)``."""
        ctx = self.ctx
        maps = []
        for a, (i, j) in enumerate(ctx.arrows):
            g = gcd(ctx.d(i), ctx.d(j))
            maps.append(_to_gfield(ctx, i, j, g, self.dims, self.maps[a]))
        return {"q": ctx.q, "dims": list(self.dims), "field": "gcd", "maps": maps}

    @classmethod
    def from_gfield_json(cls, ctx: RepContext, data: dict) -> "QuiverRep":
        dims = tuple(data["dims"])
        maps = []
        for a, (i, j) in enumerate(ctx.arrows):
            g = gcd(ctx.d(i), ctx.d(j))
            maps.append(_from_gfield(ctx, i, j, g, dims, data["maps"][a]))
        return cls(ctx, dims, maps)

    # -- constructions ----------------------------------------------------------
    @classmethod
    def zero(cls, ctx: RepContext) -> "QuiverRep":
        return cls.from_maps_dict(ctx, (0,) * ctx.quiver.n, {})

    @classmethod
    def simple(cls, ctx: RepContext, i: int) -> "QuiverRep":
        dims = tuple(1 if t == i else 0 for t in range(ctx.quiver.n))
        return cls.from_maps_dict(ctx, dims, {})

    @classmethod
    def from_maps_dict(cls, ctx: RepContext, dims, maps: dict) -> "QuiverRep":
        out = []
        for a, (i, j) in enumerate(ctx.arrows):
            ni, nj = dims[i] * ctx.d(i), dims[j] * ctx.d(j)
            out.append(maps.get(a, [[0] * ni for _ in range(nj)]))
        return cls(ctx, dims, out)

    def direct_sum(self, other: "QuiverRep") -> "QuiverRep":
        """Block sum; each vertex space is ``self`` then ``other`` in ``K``-coordinates."""
        ctx = self.ctx
        dims = tuple(a + b for a, b in zip(self.dims, other.dims))
        maps = []
        for a, (i, j) in enumerate(ctx.arrows):
            m1, m2 = self.maps[a], other.maps[a]
            ni1, nj1 = self.fq_dim(i), self.fq_dim(j)
            ni2, nj2 = other.fq_dim(i), other.fq_dim(j)
            rows = [list(m1[r]) + [0] * ni2 for r in range(nj1)]
            rows += [[0] * ni1 + list(m2[r]) for r in range(nj2)]
            maps.append(rows)
        return QuiverRep(ctx, dims, maps, check=False)


def _images(la: Fq, basis: Sequence, phi) -> list[list[int]]:
    """Images of the basis rows under ``phi`` (as rows)."""
    if not basis or not phi:
        return []
    phit = [list(c) for c in zip(*phi)]
    return la.matmul([list(b) for b in basis], phit)


def _restrict(V: QuiverRep, bases: dict[int, Sequence]) -> QuiverRep:
    """The subrepresentation spanned by ``bases`` (identity basis where omitted)."""
    ctx = V.ctx
    la = ctx.la
    dims = list(V.dims)
    for i, b in bases.items():
        dims[i] = len(b) // ctx.d(i)
    maps = []
    for a, (i, j) in enumerate(ctx.arrows):
        phi = V.maps[a]
        if i not in bases and j not in bases:
            maps.append(phi)
            continue
        nsi = dims[i] * ctx.d(i)
        nsj = dims[j] * ctx.d(j)
        if nsi == 0 or nsj == 0:
            maps.append([[0] * nsi for _ in range(nsj)])
            continue
        src = bases.get(i)
        if src is None:
            imgs = [list(c) for c in zip(*phi)]  # images of the standard basis
        else:
            imgs = _images(la, src, phi)
        tgt = bases.get(j)
        if tgt is None:
            coords = imgs
        else:
            coords = la.coords(tgt, imgs)
            if coords is None:
                raise ValueError("subspaces are not closed under the arrows")
        maps.append([list(r) for r in zip(*coords)])
    return QuiverRep(ctx, dims, maps, check=False)


def _quotient(V: QuiverRep, subs: dict[int, tuple[Sequence, Sequence[int]]]) -> QuiverRep:
    """``V / U`` where ``subs[i] = (basis, K-pivots)``; omitted vertices have ``U_i = 0``."""
    ctx = V.ctx
    la = ctx.la
    dims = list(V.dims)
    comp = {}
    full = {}
    for i, (b, piv) in subs.items():
        c = ctx.complement(i, V.dims[i], piv)
        comp[i] = c
        full[i] = (list(b), list(c))
        dims[i] = V.dims[i] - len(piv)
    maps = []
    for a, (i, j) in enumerate(ctx.arrows):
        phi = V.maps[a]
        nsi = dims[i] * ctx.d(i)
        nsj = dims[j] * ctx.d(j)
        if nsi == 0 or nsj == 0:
            maps.append([[0] * nsi for _ in range(nsj)])
            continue
        if i in comp:
            imgs = _images(la, comp[i], phi)
        else:
            imgs = [list(c) for c in zip(*phi)]
        if j in full:
            b, c = full[j]
            coords = la.coords(b + c, imgs)
            coords = [row[len(b):] for row in coords]
        else:
            coords = imgs
        maps.append([list(r) for r in zip(*coords)])
    return QuiverRep(ctx, dims, maps, check=False)


# ---------------------------------------------------------------------------
# subrepresentations and flags

def _incoming_images(V: QuiverRep, j: int, bases: dict | None = None) -> list[list[int]]:
    ctx = V.ctx
    out = []
    for a, (i, jj) in enumerate(ctx.arrows):
        if jj != j or not V.fq_dim(i) or not V.fq_dim(j):
            continue
        phi = V.maps[a]
        if bases is not None and i in bases:
            out.extend(_images(ctx.la, bases[i], phi))
        else:
            out.extend([list(c) for c in zip(*phi)])
    return [r for r in out if any(r)]


def _contains(la: Fq, basis: Sequence, vectors: Sequence, n: int) -> bool:
    if not vectors:
        return True
    if not basis:
        return False
    return la.rank([list(b) for b in basis] + [list(v) for v in vectors], n) == len(basis)


def iter_subreps(V: QuiverRep, e: Sequence[int]) -> Iterator[dict[int, tuple]]:
    """Subrepresentations of dimension ``e`` as ``{vertex: (basis, pivots)}``."""
    ctx = V.ctx
    n = len(V.dims)
    if any(x < 0 or x > y for x, y in zip(e, V.dims)):
        return
    order = ctx.quiver.topological_order()
    chosen: dict[int, tuple] = {}

    def walk(t: int):
        if t == n:
            yield dict(chosen)
            return
        j = order[t]
        imgs = []
        for a, (i, jj) in enumerate(ctx.arrows):
            if jj == j and V.fq_dim(i) and V.fq_dim(j) and chosen[i][0]:
                imgs.extend(_images(ctx.la, chosen[i][0], V.maps[a]))
        imgs = [r for r in imgs if any(r)]
        for basis, piv in ctx.ksubspaces(j, V.dims[j], e[j]):
            if _contains(ctx.la, basis, imgs, V.fq_dim(j)):
                chosen[j] = (basis, piv)
                yield from walk(t + 1)
        chosen.pop(j, None)

    yield from walk(0)


def subrep_count(V: QuiverRep, e: Sequence[int]) -> int:
    return sum(1 for _ in iter_subreps(V, e))


def _peel(V: QuiverRep, j: int, a: int) -> Iterator[QuiverRep]:
    """Subreps ``W`` with ``V / W`` isomorphic to ``S_j^a``."""
    ctx = V.ctx
    imgs = _incoming_images(V, j)
    for basis, _piv in ctx.ksubspaces(j, V.dims[j], V.dims[j] - a):
        if _contains(ctx.la, basis, imgs, V.fq_dim(j)):
            yield _restrict(V, {j: basis})


def flag_counts(V: QuiverRep) -> dict[tuple, int]:
    """``|F_j(V)|`` for every word ``j`` (vertex labels) with a nonempty flag set."""
    return dict(_flag_counts(V))


@lru_cache(maxsize=50000)
def _flag_counts(V: QuiverRep) -> tuple:
    if V.is_zero():
        return (((), 1),)
    labels = V.ctx.quiver.labels
    out: dict = {}
    for j in range(len(V.dims)):
        if not V.dims[j]:
            continue
        for W in _peel(V, j, 1):
            for w, c in _flag_counts(W):
                key = (labels[j],) + w
                out[key] = out.get(key, 0) + c
    return tuple(sorted(out.items(), key=lambda kv: [labels.index(x) for x in kv[0]]))


def flag_count(V: QuiverRep, word: Sequence) -> int:
    """``|F_j(V)|``: flags ``V = V_0 > V_1 > ... > V_r = 0`` with ``V_{k-1}/V_k = S_{j_k}``."""
    ctx = V.ctx
    word = tuple(word)
    if ctx.quiver.cartan_data.word_degree(word) != V.dims:
        return 0
    return _flag_count_word(V, word)


def _flag_count_word(V: QuiverRep, word: tuple) -> int:
    if not word:
        return 1 if V.is_zero() else 0
    j = V.ctx.quiver.index(word[0])
    if not V.dims[j]:
        return 0
    return sum(_flag_count_word(W, word[1:]) for W in _peel(V, j, 1))


def typed_flag_count(V: QuiverRep, word: Sequence, a: Sequence[int]) -> int:
    """``|F_{i,a}(V)|``: flags whose ``k``-th quotient is ``S_{i_k}^{a_k}``."""
    word, a = tuple(word), tuple(a)
    if len(word) != len(a):
        raise ValueError("word and exponent vector differ in length")
    deg = [0] * len(V.dims)
    for letter, ak in zip(word, a):
        deg[V.ctx.quiver.index(letter)] += ak
    if tuple(deg) != V.dims:
        return 0
    return _typed(V, word, a)


def _typed(V: QuiverRep, word: tuple, a: tuple) -> int:
    if not word:
        return 1 if V.is_zero() else 0
    if a[0] == 0:
        return _typed(V, word[1:], a[1:])
    j = V.ctx.quiver.index(word[0])
    if V.dims[j] < a[0]:
        return 0
    return sum(_typed(W, word[1:], a[1:]) for W in _peel(V, j, a[0]))


def typed_flag_counts(V: QuiverRep, word: Sequence) -> dict[tuple, int]:
    """``|F_{i,a}(V)|`` for every ``a`` with a nonempty flag set."""
    word = tuple(word)
    out: dict = {}

    def walk(W: QuiverRep, k: int, acc: tuple):
        if k == len(word):
            if W.is_zero():
                out[acc] = out.get(acc, 0) + 1
            return
        j = W.ctx.quiver.index(word[k])
        # a vertex that never appears again must be emptied now
        later = any(W.ctx.quiver.index(x) == j for x in word[k + 1:])
        choices = range(W.dims[j] + 1) if later else [W.dims[j]]
        for ak in choices:
            if ak == 0:
                walk(W, k + 1, acc + (0,))
            else:
                for U in _peel(W, j, ak):
                    walk(U, k + 1, acc + (ak,))

    walk(V, 0, ())
    return out


# ---------------------------------------------------------------------------
# morphisms

def _hom_equations(M: QuiverRep, N: QuiverRep):
    ctx = M.ctx
    F = ctx.F
    n = len(M.dims)
    shapes = [(N.fq_dim(i), M.fq_dim(i)) for i in range(n)]
    offsets = []
    total = 0
    for r, c in shapes:
        offsets.append(total)
        total += r * c
    eqs = []
    # K-linearity: f X_M = X_N f
    for i in range(n):
        r_, c_ = shapes[i]
        if not r_ or not c_ or ctx.d(i) == 1:
            continue
        XM = ctx.kaction(i, M.dims[i])
        XN = ctx.kaction(i, N.dims[i])
        for r in range(r_):
            for c in range(c_):
                row = [0] * total
                for t in range(c_):
                    if XM[t][c]:
                        idx = offsets[i] + r * c_ + t
                        row[idx] = F.add(row[idx], XM[t][c])
                for t in range(r_):
                    if XN[r][t]:
                        idx = offsets[i] + t * c_ + c
                        row[idx] = F.sub(row[idx], XN[r][t])
                eqs.append(row)
    # arrow squares: f_j phi_M = phi_N f_i
    for a, (i, j) in enumerate(ctx.arrows):
        rj, cj = shapes[j]
        ri, ci = shapes[i]
        if not rj or not ci:
            continue
        pM, pN = M.maps[a], N.maps[a]
        for r in range(rj):
            for c in range(ci):
                row = [0] * total
                # (f_j phi_M)[r][c] = sum_t f_j[r][t] phi_M[t][c]
                for t in range(cj):
                    if pM[t][c]:
                        idx = offsets[j] + r * cj + t
                        row[idx] = F.add(row[idx], pM[t][c])
                # (phi_N f_i)[r][c] = sum_t phi_N[r][t] f_i[t][c]
                for t in range(ri):
                    if pN[r][t]:
                        idx = offsets[i] + t * ci + c
                        row[idx] = F.sub(row[idx], pN[r][t])
                eqs.append(row)
    return eqs, total, shapes, offsets


def hom_dim(M: QuiverRep, N: QuiverRep) -> int:
    """``dim_{F_q} Hom(M, N)``."""
    if M.ctx is not N.ctx:
        raise ValueError("representations over different quivers or fields")
    eqs, total, _, _ = _hom_equations(M, N)
    return total - M.ctx.la.rank(eqs, total)


def hom_basis(M: QuiverRep, N: QuiverRep) -> list[list[list[list[int]]]]:
    eqs, total, shapes, offsets = _hom_equations(M, N)
    if total == 0:
        return []
    sols = M.ctx.la.nullspace(eqs, total) if eqs else [[1 if t == s else 0 for t in range(total)] for s in range(total)]
    out = []
    for s in sols:
        comps = []
        for (r, c), off in zip(shapes, offsets):
            comps.append([s[off + k * c: off + (k + 1) * c] for k in range(r)])
        out.append(comps)
    return out


def is_rigid(V: QuiverRep) -> bool:
    """``Ext^1(V, V) = 0``, tested as ``dim End(V) == <|V|, |V|>``."""
    return hom_dim(V, V) == euler_form(V.ctx.quiver, V.dims, V.dims)


def gl_order(n: int, Q: int) -> int:
    out = 1
    for k in range(n):
        out *= Q ** n - Q ** k
    return out


def group_order(ctx: RepContext, dims: Sequence[int]) -> int:
    out = 1
    for i, v in enumerate(dims):
        out *= gl_order(v, ctx.q ** ctx.d(i))
    return out


def aut_count(V: QuiverRep) -> int:
    """``|Aut(V)|`` as the group order divided by the orbit size."""
    if V.is_zero():
        return 1
    return repclass_of(V).aut


def aut_count_by_units(V: QuiverRep, limit: int = 200000) -> int:
    """``|Aut(V)|`` by enumerating ``End(V)`` and keeping the invertible elements."""
    if V.is_zero():
        return 1
    ctx = V.ctx
    F = ctx.F
    basis = hom_basis(V, V)
    if ctx.q ** len(basis) > limit:
        raise ValueError("endomorphism algebra too large to enumerate")
    count = 0
    for coeffs in product(range(ctx.q), repeat=len(basis)):
        ok = True
        for i in range(len(V.dims)):
            n_i = V.fq_dim(i)
            if not n_i:
                continue
            m = [[0] * n_i for _ in range(n_i)]
            for c, b in zip(coeffs, basis):
                if c:
                    for r in range(n_i):
                        for s in range(n_i):
                            if b[i][r][s]:
                                m[r][s] = F.add(m[r][s], F.mul(c, b[i][r][s]))
            if ctx.la.rank(m, n_i) != n_i:
                ok = False
                break
        count += ok
    return count


# ---------------------------------------------------------------------------
# isomorphism classes

class RepClass:
    """An isomorphism class of representations over a fixed field."""

    __slots__ = ("ctx", "dims", "key", "orbit_size", "index")

    def __init__(self, ctx: RepContext, dims: tuple, key: tuple, orbit_size: int, index: int):
        self.ctx = ctx
        self.dims = dims
        self.key = key
        self.orbit_size = orbit_size
        self.index = index

    @property
    def rep(self) -> QuiverRep:
        return QuiverRep(self.ctx, self.dims, self.key, check=False)

    @property
    def aut(self) -> int:
        return group_order(self.ctx, self.dims) // self.orbit_size

    def fingerprint(self) -> tuple:
        return (self.dims, hom_dim(self.rep, self.rep))

    def __eq__(self, other):
        return isinstance(other, RepClass) and self.ctx is other.ctx and self.dims == other.dims and self.key == other.key

    def __hash__(self):
        return hash((self.dims, self.key))

    def __lt__(self, other):
        return (sum(self.dims), self.dims, self.index) < (sum(other.dims), other.dims, other.index)

    @property
    def name(self) -> str:
        return class_label(self)

    def __repr__(self):
        return f"RepClass({self.name}, dims={self.dims}, q={self.ctx.q})"


def _group_generators(ctx: RepContext, i: int, v: int) -> list[tuple[list, list]]:
    """Generators of ``GL_v(K_i)`` as ``(g, g^{-1})`` pairs of ``F_q`` matrices."""
    K = ctx.K[i]
    d = ctx.d(i)
    n = v * d
    la = ctx.la
    gens = []
    gamma = K.primitive if K is not ctx.F else ctx.F.primitive
    block = K.mult_matrix(gamma) if d > 1 else [[gamma]]
    for r in range(v):
        g = la.identity(n)
        for s in range(d):
            for t in range(d):
                g[r * d + s][r * d + t] = block[s][t]
        gens.append(g)
    for r in range(v):
        for s in range(v):
            if r != s:
                g = la.identity(n)
                for t in range(d):
                    g[r * d + t][s * d + t] = 1
                gens.append(g)
    return [(g, la.inverse(g)) for g in gens if ctx.q > 2 or g != la.identity(n)]


def _orbit_table(ctx: RepContext, dims: tuple) -> tuple[dict, list]:
    """Map every arrow tuple of dimension ``dims`` to its orbit index; list orbit data."""
    if dims in ctx._class_cache:
        return ctx._class_cache[dims]
    total_fq = sum(v * ctx.d(i) for i, v in enumerate(dims))
    if total_fq > MAX_ORBIT_FQ_DIM:
        raise ValueError(f"orbit search is capped at total F_q-dimension {MAX_ORBIT_FQ_DIM}")
    if ctx.q > MAX_ENUM_Q:
        raise ValueError(f"enumeration is capped at q <= {MAX_ENUM_Q}")
    la = ctx.la
    F = ctx.F
    spaces = [ctx.arrow_space(a, dims[i], dims[j]) for a, (i, j) in enumerate(ctx.arrows)]
    count = 1
    for s in spaces:
        count *= ctx.q ** len(s)
    if count > MAX_ORBIT_TUPLES:
        raise ValueError("too many arrow tuples for an orbit search")

    def combo(space, coeffs):
        if not space:
            return ()
        nr, nc = len(space[0]), len(space[0][0]) if space[0] else 0
        m = [[0] * nc for _ in range(nr)]
        for c, b in zip(coeffs, space):
            if c:
                for r in range(nr):
                    for s in range(nc):
                        if b[r][s]:
                            m[r][s] = F.add(m[r][s], F.mul(c, b[r][s]))
        return _freeze(m)

    per_arrow = []
    for a, s in enumerate(spaces):
        if s:
            per_arrow.append([combo(s, cs) for cs in product(range(ctx.q), repeat=len(s))])
        else:
            ni = dims[ctx.arrows[a][0]] * ctx.d(ctx.arrows[a][0])
            nj = dims[ctx.arrows[a][1]] * ctx.d(ctx.arrows[a][1])
            per_arrow.append([_freeze([[0] * ni for _ in range(nj)])])
    all_tuples = list(product(*per_arrow))
    gens = []
    for i, v in enumerate(dims):
        if v:
            for g, ginv in _group_generators(ctx, i, v):
                gens.append((i, g, ginv))
    orbit_of: dict = {}
    orbits: list = []
    for t in all_tuples:
        if t in orbit_of:
            continue
        idx = len(orbits)
        orbit_of[t] = idx
        queue = deque([t])
        members = [t]
        while queue:
            cur = queue.popleft()
            for i, g, ginv in gens:
                new = list(cur)
                for a, (s, tt) in enumerate(ctx.arrows):
                    m = cur[a]
                    if not m or not m[0]:
                        continue
                    if s == i:
                        m = la.matmul([list(r) for r in m], ginv)
                    if tt == i:
                        m = la.matmul(g, [list(r) for r in m])
                    new[a] = _freeze(m)
                new = tuple(new)
                if new not in orbit_of:
                    orbit_of[new] = idx
                    members.append(new)
                    queue.append(new)
        orbits.append((min(members), len(members)))
    # deterministic numbering: by canonical key
    order = sorted(range(len(orbits)), key=lambda k: orbits[k][0])
    renumber = {old: new for new, old in enumerate(order)}
    classes = [RepClass(ctx, dims, orbits[old][0], orbits[old][1], new) for new, old in enumerate(order)]
    table = {t: classes[renumber[k]] for t, k in orbit_of.items()}
    ctx._class_cache[dims] = (table, classes)
    return table, classes


def rep_classes(ctx: RepContext, dims: Sequence[int]) -> list[RepClass]:
    """All isomorphism classes of the given dimension vector (cached)."""
    return list(_orbit_table(ctx, tuple(dims))[1])


def repclass_of(V: QuiverRep) -> RepClass:
    table, _ = _orbit_table(V.ctx, V.dims)
    key = V.maps
    return table[key]


def classes_up_to(ctx: RepContext, max_fq_dim: int) -> list[RepClass]:
    """Every class whose total ``F_q``-dimension is at most ``max_fq_dim``."""
    out = []
    n = ctx.quiver.n
    for dims in product(*(range(max_fq_dim // ctx.d(i) + 1) for i in range(n))):
        if sum(v * ctx.d(i) for i, v in enumerate(dims)) <= max_fq_dim:
            out.extend(rep_classes(ctx, dims))
    return sorted(out)


def hall_number(U: RepClass | QuiverRep, W: RepClass | QuiverRep, V: RepClass | QuiverRep) -> int:
    """``|F^V_{UW}|``: subreps ``R`` of ``V`` with ``R = W`` and ``V/R = U``."""
    U = U if isinstance(U, RepClass) else repclass_of(U)
    W = W if isinstance(W, RepClass) else repclass_of(W)
    Vr = V.rep if isinstance(V, RepClass) else V
    if tuple(a + b for a, b in zip(U.dims, W.dims)) != Vr.dims:
        return 0
    count = 0
    for sub in iter_subreps(Vr, W.dims):
        R = _restrict(Vr, {i: b for i, (b, _p) in sub.items()})
        if repclass_of(R) != W:
            continue
        if repclass_of(_quotient(Vr, sub)) == U:
            count += 1
    return count


def hall_numbers(V: RepClass, e: Sequence[int]) -> dict[tuple[RepClass, RepClass], int]:
    """All nonzero ``|F^V_{UW}|`` with ``|W| = e`` in one pass over the subreps."""
    Vr = V.rep
    out: dict = {}
    for sub in iter_subreps(Vr, e):
        R = repclass_of(_restrict(Vr, {i: b for i, (b, _p) in sub.items()}))
        Q = repclass_of(_quotient(Vr, sub))
        out[(Q, R)] = out.get((Q, R), 0) + 1
    return out


def subrep_and_quotient(V: QuiverRep, sub: dict) -> tuple[QuiverRep, QuiverRep]:
    return _restrict(V, {i: b for i, (b, _p) in sub.items()}), _quotient(V, sub)


# ---------------------------------------------------------------------------
# rigid representations

class NoRigidError(ValueError):
    """No rigid representation exists in the requested dimension."""


def _scan_vectors(q: int, length: int) -> Iterator[tuple[int, ...]]:
    """0/1 vectors by number of nonzeros, then every other vector lexicographically."""
    seen_binary = q == 2
    for weight in range(length + 1):
        for ones in combinations(range(length), weight):
            yield tuple(1 if t in ones else 0 for t in range(length))
    if seen_binary:
        return
    for vec in product(range(q), repeat=length):
        if all(x in (0, 1) for x in vec):
            continue
        yield vec


def rigid_rep(quiver_or_ctx, nu: Sequence[int], field_q: int | None = None) -> QuiverRep:
    """The first rigid representation of dimension ``nu`` in the deterministic scan."""
    ctx = quiver_or_ctx if isinstance(quiver_or_ctx, RepContext) else context(quiver_or_ctx, field_q)
    return _rigid_rep(ctx, tuple(nu))


@lru_cache(maxsize=None)
def _rigid_rep(ctx: RepContext, nu: tuple) -> QuiverRep:
    F = ctx.F
    spaces = [ctx.arrow_space(a, nu[i], nu[j]) for a, (i, j) in enumerate(ctx.arrows)]
    sizes = [len(s) for s in spaces]
    target = euler_form(ctx.quiver, nu, nu)
    for vec in _scan_vectors(ctx.q, sum(sizes)):
        maps = []
        pos = 0
        for a, (i, j) in enumerate(ctx.arrows):
            ni, nj = nu[i] * ctx.d(i), nu[j] * ctx.d(j)
            m = [[0] * ni for _ in range(nj)]
            for c, b in zip(vec[pos:pos + sizes[a]], spaces[a]):
                if c:
                    for r in range(nj):
                        for s in range(ni):
                            if b[r][s]:
                                m[r][s] = F.add(m[r][s], F.mul(c, b[r][s]))
            pos += sizes[a]
            maps.append(m)
        V = QuiverRep(ctx, nu, maps, check=False)
        if hom_dim(V, V) == target:
            return V
    raise NoRigidError(f"no rigid representation of dimension {nu} over F_{ctx.q}")


def injective_dims(quiver: ValuedQuiver, j: int) -> DimVector:
    """Dimension vector of the injective hull of ``S_j``: ``<alpha_i, y> = delta_ij d_j``."""
    return _solve_euler(quiver, j, left=True)


def projective_dims(quiver: ValuedQuiver, j: int) -> DimVector:
    """Dimension vector of the projective cover of ``S_j``: ``<y, alpha_i> = delta_ij d_j``."""
    return _solve_euler(quiver, j, left=False)


def _solve_euler(quiver: ValuedQuiver, j: int, left: bool) -> DimVector:
    n = quiver.n
    order = quiver.topological_order()
    # the Euler matrix is triangular in topological order
    seq = list(reversed(order)) if left else list(order)
    y = [0] * n
    for i in seq:
        ai = quiver.simple(quiver.labels[i])
        if left:
            partial = euler_form(quiver, ai, y)
        else:
            partial = euler_form(quiver, y, ai)
        rhs = (quiver.d[j] if i == j else 0) - partial
        if rhs % quiver.d[i]:
            raise ArithmeticError("non-integral dimension vector")
        y[i] = rhs // quiver.d[i]
    return tuple(y)


def injective_hull(ctx: RepContext, j: int) -> QuiverRep:
    return rigid_rep(ctx, injective_dims(ctx.quiver, j))


def projective_cover(ctx: RepContext, j: int) -> QuiverRep:
    return rigid_rep(ctx, projective_dims(ctx.quiver, j))


# ---------------------------------------------------------------------------
# recipes: direct sums of indecomposables named by their root

def indecomposable(ctx: RepContext, root: Sequence[int]) -> QuiverRep:
    """The rigid indecomposable of a real positive root (finite type)."""
    return rigid_rep(ctx, tuple(root))


def from_recipe(ctx: RepContext, roots: Sequence[Sequence[int]]) -> QuiverRep:
    out = QuiverRep.zero(ctx)
    for r in sorted(tuple(x) for x in roots):
        out = out.direct_sum(indecomposable(ctx, r))
    return out


def recipes(quiver: ValuedQuiver, dims: Sequence[int]) -> list[tuple]:
    """Multisets of positive roots summing to ``dims`` (finite type only)."""
    roots = positive_roots(quiver.cartan_data)
    dims = tuple(dims)
    out = []

    def walk(start: int, rest: tuple, acc: list):
        if not any(rest):
            out.append(tuple(acc))
            return
        for t in range(start, len(roots)):
            r = roots[t]
            if all(x <= y for x, y in zip(r, rest)):
                acc.append(r)
                walk(t, tuple(y - x for x, y in zip(r, rest)), acc)
                acc.pop()

    walk(0, dims, [])
    return out


def root_label(quiver: ValuedQuiver, root: Sequence[int]) -> str:
    if sum(root) == 1:
        return f"S{quiver.labels[list(root).index(1)]}"
    return "M(" + ",".join(str(x) for x in root) + ")"


def recipe_label(quiver: ValuedQuiver, roots: Sequence[Sequence[int]]) -> str:
    if not roots:
        return "0"
    return "+".join(root_label(quiver, r) for r in sorted(tuple(x) for x in roots))


def class_label(cls: RepClass) -> str:
    ctx = cls.ctx
    if not any(cls.dims):
        return "0"
    try:
        for rec in recipes(ctx.quiver, cls.dims):
            if repclass_of(from_recipe(ctx, rec)) == cls:
                return recipe_label(ctx.quiver, rec)
    except ValueError:
        pass
    return f"E{cls.index}@" + ",".join(map(str, cls.dims))


def parse_rep(ctx: RepContext, name: str) -> QuiverRep:
    """Build a representation from a name such as ``S1``, ``I2``, ``P1``, ``M(1,1)``,
    ``S1+M(1,1)``, ``R(2,1)`` (the rigid representation of that dimension) or
    ``E0@1,1`` (the ``k``-th enumerated class)."""
    name = name.strip()
    quiver = ctx.quiver
    if name == "0":
        return QuiverRep.zero(ctx)
    parts = _split_sum(name)
    if len(parts) > 1:
        out = QuiverRep.zero(ctx)
        for p in parts:
            out = out.direct_sum(parse_rep(ctx, p))
        return out
    if name.startswith("E") and "@" in name:
        k, dims = name[1:].split("@")
        dims = tuple(int(x) for x in dims.split(","))
        return rep_classes(ctx, dims)[int(k)].rep
    if name.startswith("M(") and name.endswith(")"):
        return indecomposable(ctx, _parse_dims(quiver, name[2:-1]))
    if name.startswith("R(") and name.endswith(")"):
        return rigid_rep(ctx, _parse_dims(quiver, name[2:-1]))
    kind, label = name[0], name[1:]
    lab = _match_label(quiver, label)
    j = quiver.index(lab)
    if kind == "S":
        return QuiverRep.simple(ctx, j)
    if kind == "I":
        return injective_hull(ctx, j)
    if kind == "P":
        return projective_cover(ctx, j)
    raise ValueError(f"cannot parse representation name {name!r}")


def _parse_dims(quiver: ValuedQuiver, text: str) -> tuple:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"bad dimension vector {text!r}") from None
    if len(dims) != quiver.n or min(dims) < 0:
        raise ValueError(f"dimension vector {text!r} does not fit a quiver with {quiver.n} vertices")
    return dims


def _split_sum(name: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def _match_label(quiver: ValuedQuiver, text: str):
    for lab in quiver.labels:
        if str(lab) == text:
            return lab
    raise ValueError(f"unknown vertex {text!r}")
