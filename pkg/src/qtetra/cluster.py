"""Acyclic quantum cluster algebras: seeds, mutation, and quantum cluster characters."""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Sequence

from .cartan import ValuedQuiver, euler_form, positive_roots, star
from .coeff import ScalarFraction, SqrtQScalar
from .finrep import QuiverRep, RepClass, subrep_count
from .hall import SymbolicRep, grassmannian_degree_bound, psi_tilde, psi_tilde_symbolic
from .interp import interpolate_count
from .qtorus import CommutationForm, TorusElt, compatibility_check, right_divide, torus_mul


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _frac(x) -> Fraction:
    return Fraction(x) if not isinstance(x, str) else Fraction(x)


def mutate_matrix(btilde: Sequence[Sequence[int]], kc: int, kr: int) -> tuple:
    """Matrix mutation at column ``kc`` whose principal row is ``kr``."""
    m, n = len(btilde), len(btilde[0])
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            b = btilde[i][j]
            if i == kr or j == kc:
                row.append(-b)
            else:
                bik = btilde[i][kc]
                bkj = btilde[kr][j]
                row.append(b + _pos(bik) * bkj + bik * _pos(-bkj))
        out.append(tuple(row))
    return tuple(out)


def mutate_lambda(lam: Sequence[Sequence], btilde: Sequence[Sequence[int]], kc: int, kr: int) -> tuple:
    """``Lambda' = E^T Lambda E`` with ``E_kk = -1`` and ``E_ik = [-b_ik]_+``."""
    m = len(lam)
    E = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    for i in range(m):
        E[i][kr] = Fraction(_pos(-btilde[i][kc])) if i != kr else Fraction(-1)
    L = [[_frac(x) for x in row] for row in lam]
    LE = [[sum(L[i][t] * E[t][j] for t in range(m)) for j in range(m)] for i in range(m)]
    return tuple(tuple(sum(E[t][i] * LE[t][j] for t in range(m)) for j in range(m)) for i in range(m))


class Seed:
    """A quantum seed: exchange matrix, compatible ``Lambda`` and a cluster in the ambient torus.

    ``J`` lists all labels; ``I`` the mutable ones.  ``btilde`` rows follow ``J``,
    columns follow ``I``.  ``lam`` is the current commutation matrix (Fractions);
    ``cluster`` holds one ``TorusElt`` per label of ``J``.
    """

    __slots__ = ("J", "I", "btilde", "lam", "d", "cluster", "ambient")

    def __init__(self, J: Sequence, I: Sequence, btilde, lam, d: Sequence[int] | None = None,
                 cluster: Sequence[TorusElt] | None = None, ambient: CommutationForm | None = None,
                 check: bool = True):
        self.J = tuple(J)
        self.I = tuple(I)
        self.btilde = tuple(tuple(int(x) for x in row) for row in btilde)
        self.lam = tuple(tuple(_frac(x) for x in row) for row in lam)
        if d is None:
            d = _symmetrizer(self.principal())
        self.d = tuple(d)
        if ambient is None:
            ambient = CommutationForm([[int(2 * x) for x in row] for row in self.lam])
        self.ambient = ambient
        if cluster is None:
            m = len(self.J)
            cluster = [TorusElt.monomial(ambient, [int(t == s) for t in range(m)]) for s in range(m)]
        self.cluster = tuple(cluster)
        if check:
            self.validate()

    def principal(self) -> tuple:
        rows = [self.J.index(i) for i in self.I]
        return tuple(self.btilde[r] for r in rows)

    def validate(self):
        m, n = len(self.J), len(self.I)
        if not set(self.I) <= set(self.J):
            raise ValueError("mutable labels must be a subset of J")
        if len(self.btilde) != m or any(len(r) != n for r in self.btilde):
            raise ValueError("Btilde must be |J| x |I|")
        B = self.principal()
        for i in range(n):
            for j in range(n):
                if self.d[i] * B[i][j] != -self.d[j] * B[j][i]:
                    raise ValueError("principal part is not skew-symmetrizable by d")
        if not compatibility_check(self.btilde, self.lam, self.d):
            raise ValueError("Btilde and Lambda are not compatible")
        if len(self.cluster) != m:
            raise ValueError("one cluster variable per label of J")

    def mutate(self, k) -> "Seed":
        return mutate(self, k)

    def variable(self, label) -> TorusElt:
        return self.cluster[self.J.index(label)]

    def form(self) -> CommutationForm:
        return CommutationForm([[int(2 * x) for x in row] for row in self.lam])

    def monomial(self, a: Sequence[int]) -> TorusElt:
        """The bar-invariant monomial ``X_t^a`` for ``a >= 0`` in the current cluster."""
        c = self.form().c
        m = len(a)
        shift = 0
        for i in range(m):
            for j in range(i + 1, m):
                shift += a[i] * a[j] * c[j][i]
        out = TorusElt.one(self.ambient)
        for i, ai in enumerate(a):
            if ai < 0:
                raise ValueError("negative exponent in a cluster monomial")
            for _ in range(ai):
                out = torus_mul(self.ambient, out, self.cluster[i])
        return out.vshift(shift)

    def key(self) -> frozenset:
        """Clusters as unordered sets of mutable variables."""
        return frozenset(self.variable(i) for i in self.I)

    def to_json(self) -> dict:
        return {
            "J": list(self.J),
            "I": list(self.I),
            "d": list(self.d),
            "Btilde": [list(r) for r in self.btilde],
            "Lambda": [[_fr_json(x) for x in r] for r in self.lam],
            "ambient_Lambda": [[_fr_json(Fraction(x, 2)) for x in r] for r in self.ambient.c],
            "cluster": [x.to_json() for x in self.cluster],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Seed":
        lam = [[Fraction(str(x)) for x in r] for r in data["Lambda"]]
        amb = data.get("ambient_Lambda")
        ambient = None
        if amb is not None:
            ambient = CommutationForm([[int(2 * Fraction(str(x))) for x in r] for r in amb])
        elif data.get("cluster") is not None:
            raise ValueError("a seed with an explicit cluster needs ambient_Lambda")
        cluster = None
        if data.get("cluster") is not None:
            form = ambient if ambient is not None else CommutationForm([[int(2 * x) for x in r] for r in lam])
            cluster = [TorusElt.from_json(form, c) for c in data["cluster"]]
        J = data["J"]
        I = data.get("I", J[: len(data["Btilde"][0])])
        return cls(J, I, data["Btilde"], lam, data.get("d"), cluster, ambient)

    def __eq__(self, other):
        return (isinstance(other, Seed) and self.J == other.J and self.I == other.I and self.btilde == other.btilde
                and self.lam == other.lam and self.cluster == other.cluster)

    def __repr__(self):
        return f"Seed(J={self.J}, I={self.I}, Btilde={self.btilde})"


def _fr_json(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def _symmetrizer(B) -> tuple:
    """Smallest positive ``d`` with ``d_i b_ij = -d_j b_ji`` (connected components separately)."""
    n = len(B)
    d: list = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if B[i][j] and d[j] is None:
                    d[j] = d[i] * Fraction(-B[i][j], B[j][i]) if B[j][i] else None
                    if d[j] is None or d[j] <= 0:
                        raise ValueError("exchange matrix is not skew-symmetrizable")
                    comp.append(j)
                    queue.append(j)
        lcm = 1
        for i in comp:
            den = d[i].denominator
            lcm = lcm * den // _gcd(lcm, den)
        for i in comp:
            d[i] = d[i] * lcm
    return tuple(int(x) for x in d)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def mutate(s: Seed, k) -> Seed:
    """Mutation in direction ``k``: new variable, exchange matrix and commutation matrix."""
    if k not in s.I:
        raise ValueError(f"direction {k!r} is not mutable")
    kc = s.I.index(k)
    kr = s.J.index(k)
    col = [row[kc] for row in s.btilde]
    bplus = [_pos(x) for x in col]
    bminus = [_pos(-x) for x in col]
    c = s.form().c
    # X_k' X_k = v^{Lambda(b+, e_k)} X^{b+} + v^{Lambda(b-, e_k)} X^{b-}
    shift_p = sum(bplus[i] * c[i][kr] for i in range(len(col)))
    shift_m = sum(bminus[i] * c[i][kr] for i in range(len(col)))
    numer = s.monomial(bplus).vshift(shift_p) + s.monomial(bminus).vshift(shift_m)
    new = right_divide(numer, s.cluster[kr]).with_form(s.ambient)
    cluster = list(s.cluster)
    cluster[kr] = new
    return Seed(s.J, s.I, mutate_matrix(s.btilde, kc, kr), mutate_lambda(s.lam, s.btilde, kc, kr),
                s.d, cluster, s.ambient, check=True)


def quasi_commutation(s: Seed) -> tuple:
    """``c`` with ``X_i X_j = v^{c_ij} X_j X_i`` read off from leading monomials."""
    amb = s.ambient
    leads = [x.leading()[0] for x in s.cluster]
    return tuple(tuple((amb.pair(a, b) - amb.pair(b, a)) // 2 for b in leads) for a in leads)


def check_quasi_commuting(s: Seed) -> bool:
    """Exact check ``X_i X_j = v^{2 lambda_ij} X_j X_i`` for all pairs of the current cluster."""
    c = s.form().c
    m = len(s.cluster)
    for i in range(m):
        for j in range(i + 1, m):
            lhs = torus_mul(s.ambient, s.cluster[i], s.cluster[j])
            rhs = torus_mul(s.ambient, s.cluster[j], s.cluster[i]).vshift(2 * c[i][j])
            if lhs != rhs:
                return False
    return True


def laurent_check(s: Seed, sequence: Sequence) -> bool:
    """Mutate along ``sequence`` and confirm every variable is a Laurent polynomial in the
    initial cluster (exact division, no denominators in any coefficient)."""
    cur = s
    for k in sequence:
        try:
            cur = mutate(cur, k)
        except ArithmeticError:
            return False
        if not all(x.is_laurent() for x in cur.cluster):
            return False
    return True


def exhaustive_mutation(s: Seed, depth: int | None = None, limit: int = 10000) -> tuple[list[Seed], set]:
    """Breadth-first mutation; returns the distinct seeds (by cluster set) and all mutable variables."""
    seen = {s.key(): s}
    queue = deque([(s, 0)])
    variables = set(s.variable(i) for i in s.I)
    while queue:
        cur, dep = queue.popleft()
        if depth is not None and dep >= depth:
            continue
        for k in cur.I:
            nxt = mutate(cur, k)
            key = nxt.key()
            variables |= key
            if key not in seen:
                if len(seen) >= limit:
                    raise RuntimeError("mutation class larger than the search limit")
                seen[key] = nxt
                queue.append((nxt, dep + 1))
    return list(seen.values()), variables


# ---------------------------------------------------------------------------
# quantum cluster characters


def _solve_unimodular(M: list[list[int]]) -> list[list[int]]:
    """Integer inverse of a unimodular matrix."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ArithmeticError("lattice map is not unimodular")
    return [[int(x) for x in row] for row in inv]


def _matmul(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _matvec(a, x):
    return tuple(sum(a[i][t] * x[t] for t in range(len(x))) for i in range(len(a)))


class CharacterContext:
    """The compatible pair attached to ``i = (i0, i0)`` with ``i0`` source adapted.

    ``Btilde = [B; -Id]`` by default (mutable block first).  The lattice map ``L`` sends the
    exponent ``-*alpha_j`` to ``t_j`` in the first copy of ``i0`` and
    ``Btilde alpha_k`` to ``t_k - t'_k``; ``Lambda_i`` is the pull-back of the
    commutation form of ``P_i`` along ``L``.
    """

    def __init__(self, quiver: ValuedQuiver, word: Sequence | None = None, btilde=None):
        self.quiver = quiver
        n = quiver.n
        i0 = quiver.source_adapted_word()
        if word is None:
            word = i0 + i0
        word = tuple(word)
        if len(word) != 2 * n or word[:n] != word[n:] or sorted(quiver.index(x) for x in word[:n]) != list(range(n)):
            raise ValueError("word must be twice a complete sequence")
        if word[:n] != i0 and not _is_source_adapted(quiver, word[:n]):
            raise ValueError("word must be twice a source adapted sequence")
        self.word = word
        self.i0 = word[:n]
        self.pos = [self.i0.index(lab) for lab in quiver.labels]  # vertex index -> position in i0
        B = quiver.exchange_matrix()
        if btilde is None:
            btilde = [B[i] for i in range(n)] + [[-int(i == j) for j in range(n)] for i in range(n)]
        self.btilde = tuple(tuple(int(x) for x in row) for row in btilde)
        if len(self.btilde) != 2 * n or any(len(r) != n for r in self.btilde) or self.btilde[:n] != B:
            raise ValueError("Btilde must stack the exchange matrix of the quiver over an n x n frozen block")
        self.J = tuple(range(1, 2 * n + 1))
        self.I = tuple(range(1, n + 1))
        # columns of M: -*alpha_j (j in I) and Btilde alpha_k (k in I); images T
        M_cols, T_cols = [], []
        for j in range(n):
            sa = star(quiver, quiver.simple(quiver.labels[j]))
            M_cols.append([-x for x in sa] + [0] * n)
            T_cols.append(self._t_vector({j: 1}, {}))
        for k in range(n):
            M_cols.append([self.btilde[r][k] for r in range(2 * n)])
            T_cols.append(self._t_vector({k: 1}, {k: -1}))
        M = [[M_cols[c][r] for c in range(2 * n)] for r in range(2 * n)]
        T = [[T_cols[c][r] for c in range(2 * n)] for r in range(2 * n)]
        self.L = _matmul(T, _solve_unimodular(M))
        self.Linv = _solve_unimodular(self.L)
        self.pform = CommutationForm.from_word(quiver.cartan_data, word)
        cP = self.pform.c
        LT = [list(r) for r in zip(*self.L)]
        C = _matmul(_matmul(LT, [list(r) for r in cP]), self.L)
        self.lam = tuple(tuple(Fraction(x, 2) for x in row) for row in C)
        self.form = CommutationForm(C)
        if not compatibility_check(self.btilde, self.lam, quiver.d):
            raise ArithmeticError("derived Lambda is not compatible with Btilde")

    def _t_vector(self, first: dict, second: dict) -> list[int]:
        n = self.quiver.n
        out = [0] * (2 * n)
        for j, x in first.items():
            out[self.pos[j]] += x
        for j, x in second.items():
            out[n + self.pos[j]] += x
        return out

    def seed(self) -> Seed:
        return Seed(self.J, self.I, self.btilde, self.lam, self.quiver.d, ambient=self.form)

    def to_torus(self, x: TorusElt) -> TorusElt:
        """Transport ``P_i -> T_{Lambda_i}``: ``t^a -> X^{L^{-1} a}``."""
        return TorusElt(self.form, {_matvec(self.Linv, a): c for a, c in x.terms.items()})

    def exponent(self, e: Sequence[int], v: Sequence[int]) -> tuple:
        """``-Btilde e - *v`` in ``Z^J``."""
        n = self.quiver.n
        sv = star(self.quiver, v)
        out = []
        for r in range(2 * n):
            val = -sum(self.btilde[r][k] * e[k] for k in range(n))
            if r < n:
                val -= sv[r]
            out.append(val)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "J": list(self.J),
            "I": list(self.I),
            "Btilde": [list(r) for r in self.btilde],
            "Lambda": [[_fr_json(x) for x in r] for r in self.lam],
            "L": self.L,
        }


def _is_source_adapted(quiver: ValuedQuiver, seq: Sequence) -> bool:
    idx = [quiver.index(x) for x in seq]
    place = {v: t for t, v in enumerate(idx)}
    return all(place[i] < place[j] for i, j, _ in quiver.arrow_indices())


def _subdims(dims):
    from itertools import product

    return product(*(range(x + 1) for x in dims))


def cluster_character(ctx: CharacterContext, V: RepClass | QuiverRep) -> TorusElt:
    """``X_V = sum_e |F|^{-<e, v-e>/2} |Gr_e(V)| X^{-Btilde e - *v}`` over a fixed field."""
    rep = V.rep if isinstance(V, RepClass) else V
    q = rep.ctx.q
    v = rep.dims
    terms = {}
    for e in _subdims(v):
        n = subrep_count(rep, e)
        if n:
            f = tuple(a - b for a, b in zip(v, e))
            coef = SqrtQScalar.vpow(q, -2 * euler_form(ctx.quiver, e, f)) * n
            key = ctx.exponent(e, v)
            terms[key] = terms[key] + coef if key in terms else coef
    return TorusElt(ctx.form, terms)


def cluster_character_symbolic(ctx: CharacterContext, rep: SymbolicRep, points=None, holdout=None) -> TorusElt:
    """``X_V`` with Grassmannian counts interpolated as polynomials in ``q``."""
    v = rep.dims()
    terms = {}
    for e in _subdims(v):
        bound = grassmannian_degree_bound(ctx.quiver, v, e)
        kw = {} if points is None else {"points": points, "holdout": holdout}
        poly = interpolate_count(lambda q, e=e: subrep_count(rep.realize(q), e), bound, **kw)
        if poly.coeffs:
            f = tuple(a - b for a, b in zip(v, e))
            coef = poly.to_laurent().vshift(-2 * euler_form(ctx.quiver, e, f))
            key = ctx.exponent(e, v)
            terms[key] = terms[key] + coef if key in terms else coef
    return TorusElt(ctx.form, {k: ScalarFraction(c) for k, c in terms.items()})


def transported_psi_tilde(ctx: CharacterContext, V) -> TorusElt:
    """``Psi~_i([V]*)`` moved into ``T_{Lambda_i}``."""
    if isinstance(V, SymbolicRep):
        return ctx.to_torus(psi_tilde_symbolic(ctx.word, V))
    return ctx.to_torus(psi_tilde(ctx.word, V))


def noninitial_variables_via_characters(ctx: CharacterContext, depth: int | None = None) -> dict:
    """Match every mutation-reachable non-initial variable with some ``X_V``, ``V`` indecomposable rigid.

    Returns ``{"clusters": n, "variables": {variable: rep name or None}}``.
    """
    s0 = ctx.seed()
    if depth == 0:
        return {"clusters": 1, "variables": {}}
    seeds, variables = exhaustive_mutation(s0, depth)
    initial = set(s0.cluster)
    noninit = [x for x in variables if x not in initial]
    chars = {}
    for root in positive_roots(ctx.quiver.cartan_data):
        name = "M(" + ",".join(map(str, root)) + ")"
        chars[name] = cluster_character_symbolic(ctx, SymbolicRep(ctx.quiver, name))
    out = {}
    for x in noninit:
        out[x] = next((name for name, c in chars.items() if c == x), None)
    return {"clusters": len(seeds), "variables": out}


# older spelling kept as an alias
nonintial_variables_via_characters = noninitial_variables_via_characters
