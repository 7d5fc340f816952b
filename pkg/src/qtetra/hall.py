"""The Hall algebra of a valued quiver over ``F_q``, its dual, and the characters
``Omega`` (to the shuffle algebra) and ``Psi~_i`` (to quantum polynomials).

Fixed-field mode uses exact ``SqrtQScalar`` coefficients with ``v = sqrt(q)``.
Symbolic mode applies to flag and Grassmannian counts only: each count is
interpolated in ``q`` over many fields and verified at a held-out one.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .cartan import ValuedQuiver, euler_form, sym_form
from .coeff import SqrtQScalar
from .finrep import (
    QuiverRep,
    RepClass,
    RepContext,
    context,
    flag_counts,
    hall_numbers,
    parse_rep,
    rep_classes,
    repclass_of,
    typed_flag_counts,
)
from .interp import PRIME_POWERS, InterpolationError, interpolate_count
from .qtorus import CommutationForm, TorusElt
from .shuffle import ShuffleElt, ShuffleTensor

BASES = ("iso", "delta", "dual")


def _add(d: dict, k, v):
    if k in d:
        s = d[k] + v
        if s.is_zero():
            del d[k]
        else:
            d[k] = s
    elif not v.is_zero():
        d[k] = v


def _vpow(q: int, half_exp: int) -> SqrtQScalar:
    return SqrtQScalar.vpow(q, half_exp)


def _euler(ctx: RepContext, a, b) -> int:
    return euler_form(ctx.quiver, a, b)


def _add_dims(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub_dims(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def dual_prefactor(quiver: ValuedQuiver, dims: Sequence[int]) -> int:
    """Half-exponent of ``v`` in ``[V]* = v^{-<V,V>/2 + sum d_i v_i / 2} delta_V``."""
    return -euler_form(quiver, dims, dims) + sum(d * x for d, x in zip(quiver.d, dims))


class HallElt:
    """A finite combination of isomorphism classes in one of three bases.

    ``basis`` is ``"iso"`` for ``[V]``, ``"delta"`` for ``delta_[V]`` and
    ``"dual"`` for the rescaled ``[V]*``.  Coefficients are ``SqrtQScalar``.
    """

    __slots__ = ("ctx", "terms", "basis")
    mode = "fixed"

    def __init__(self, ctx: RepContext, terms: dict | None = None, basis: str = "iso"):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.ctx = ctx
        self.basis = basis
        clean: dict = {}
        for k, v in (terms or {}).items():
            if isinstance(k, QuiverRep):
                k = repclass_of(k)
            if isinstance(v, int):
                v = SqrtQScalar.from_int(ctx.q, v)
            if k.ctx is not ctx:
                raise ValueError("classes over a different quiver or field")
            _add(clean, k, v)
        self.terms = clean

    @classmethod
    def of(cls, V: RepClass | QuiverRep, basis: str = "iso") -> "HallElt":
        cls_ = V if isinstance(V, RepClass) else repclass_of(V)
        return cls(cls_.ctx, {cls_: SqrtQScalar.from_int(cls_.ctx.q, 1)}, basis)

    @classmethod
    def unit(cls, ctx: RepContext, basis: str = "iso") -> "HallElt":
        return cls.of(QuiverRep.zero(ctx), basis)

    def _check(self, other: "HallElt", basis: str | None = None):
        if not isinstance(other, HallElt):
            raise TypeError("expected a HallElt")
        if other.ctx is not self.ctx:
            raise ValueError("Hall elements over different quivers or fields")
        if other.basis != self.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")
        if basis is not None and self.basis != basis:
            raise ValueError(f"operation needs the {basis!r} basis, got {self.basis!r}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add(out, k, v)
        return HallElt(self.ctx, out, self.basis)

    def __neg__(self):
        return HallElt(self.ctx, {k: -v for k, v in self.terms.items()}, self.basis)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "HallElt":
        return HallElt(self.ctx, {k: v * s for k, v in self.terms.items()}, self.basis)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, HallElt) and other.ctx is self.ctx and other.basis == self.basis
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.basis, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __repr__(self):
        sym = {"iso": "[{}]", "delta": "d[{}]", "dual": "[{}]*"}[self.basis]
        parts = [f"({c})*" + sym.format(k.name) for k, c in self.sorted_terms()]
        return "HallElt(" + (" + ".join(parts) or "0") + ")"

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "q": self.ctx.q,
            "terms": [
                {"class": k.name, "dims": list(k.dims), "coef": c.to_json()} for k, c in self.sorted_terms()
            ],
        }

    def to_basis(self, basis: str) -> "HallElt":
        """Convert between ``delta`` and ``dual`` (``iso`` has no conversion)."""
        if basis == self.basis:
            return self
        pair = {self.basis, basis}
        if pair != {"delta", "dual"}:
            raise ValueError(f"cannot convert {self.basis!r} to {basis!r}")
        # [V]* = v^{p/2} delta_V
        sign = 1 if basis == "delta" else -1
        out = {}
        for k, c in self.terms.items():
            p = dual_prefactor(self.ctx.quiver, k.dims)
            out[k] = c.vshift(sign * p)
        return HallElt(self.ctx, out, basis)


class HallTensor:
    """Finite sums of ``x (x) y`` over one basis, with the twisted product."""

    __slots__ = ("ctx", "terms", "basis")

    def __init__(self, ctx: RepContext, terms: dict | None = None, basis: str = "iso"):
        self.ctx = ctx
        self.basis = basis
        clean: dict = {}
        for k, v in (terms or {}).items():
            _add(clean, k, v)
        self.terms = clean

    def __add__(self, other: "HallTensor") -> "HallTensor":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add(out, k, v)
        return HallTensor(self.ctx, out, self.basis)

    def __sub__(self, other):
        return self + HallTensor(self.ctx, {k: -v for k, v in other.terms.items()}, self.basis)

    def __mul__(self, other: "HallTensor") -> "HallTensor":
        """``(U (x) W)(U' (x) W') = v^{(|W|,|U'|)} UU' (x) WW'`` (``iso`` basis)."""
        if self.basis != "iso" or other.basis != "iso":
            raise ValueError("twisted tensor product is implemented for the iso basis")
        c = self.ctx.quiver.cartan_data
        out: dict = {}
        for (U, W), x in self.terms.items():
            for (U2, W2), y in other.terms.items():
                tw = 2 * sym_form(c, W.dims, U2.dims)
                left = hall_mul(HallElt.of(U), HallElt.of(U2))
                right = hall_mul(HallElt.of(W), HallElt.of(W2))
                base = (x * y).vshift(tw)
                for A, a in left.terms.items():
                    for B, b in right.terms.items():
                        _add(out, (A, B), base * a * b)
        return HallTensor(self.ctx, out, "iso")

    def __eq__(self, other):
        return isinstance(other, HallTensor) and self.basis == other.basis and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        parts = [f"({v})*{a.name}#{b.name}" for (a, b), v in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))]
        return f"HallTensor[{self.basis}](" + (" + ".join(parts) or "0") + ")"


# ---------------------------------------------------------------------------
# structure constants


def _subdims(dims: Sequence[int]) -> Iterable[tuple]:
    from itertools import product

    return product(*(range(x + 1) for x in dims))


@lru_cache(maxsize=None)
def _hall_table(V: RepClass, e: tuple) -> dict:
    return hall_numbers(V, e)


def hall_number_classes(U: RepClass, W: RepClass, V: RepClass) -> int:
    if _add_dims(U.dims, W.dims) != V.dims:
        return 0
    return _hall_table(V, W.dims).get((U, W), 0)


def hall_mul(x: HallElt, y: HallElt) -> HallElt:
    """``[U][W] = sum_V v^{<U,W>} |F^V_{UW}| [V]``."""
    x._check(y, "iso")
    ctx = x.ctx
    out: dict = {}
    for U, a in x.terms.items():
        for W, b in y.terms.items():
            dims = _add_dims(U.dims, W.dims)
            base = (a * b).vshift(2 * _euler(ctx, U.dims, W.dims))
            for V in rep_classes(ctx, dims):
                n = hall_number_classes(U, W, V)
                if n:
                    _add(out, V, base * n)
    return HallElt(ctx, out, "iso")


def hall_comul(x: HallElt) -> HallTensor:
    """Green's comultiplication ``sum v^{<U,W>} |Aut U||Aut W|/|Aut V| |F^V_{UW}| [U] (x) [W]``."""
    if x.basis != "iso":
        raise ValueError("hall_comul works in the iso basis")
    ctx = x.ctx
    out: dict = {}
    for V, c in x.terms.items():
        for e in _subdims(V.dims):
            for (U, W), n in _hall_table(V, e).items():
                ratio = SqrtQScalar.from_int(ctx.q, U.aut * W.aut) / V.aut
                val = (c * ratio * n).vshift(2 * _euler(ctx, U.dims, W.dims))
                _add(out, (U, W), val)
    return HallTensor(ctx, out, "iso")


def dual_mul(x: HallElt, y: HallElt) -> HallElt:
    """``[U]*[W]* = sum v^{3<U,W>/2 + <W,U>/2} |Aut U||Aut W|/|Aut V| |F^V_{UW}| [V]*``."""
    x._check(y, "dual")
    ctx = x.ctx
    out: dict = {}
    for U, a in x.terms.items():
        for W, b in y.terms.items():
            dims = _add_dims(U.dims, W.dims)
            shift = 3 * _euler(ctx, U.dims, W.dims) + _euler(ctx, W.dims, U.dims)
            for V in rep_classes(ctx, dims):
                n = hall_number_classes(U, W, V)
                if n:
                    ratio = SqrtQScalar.from_int(ctx.q, U.aut * W.aut) / V.aut
                    _add(out, V, (a * b * ratio * n).vshift(shift))
    return HallElt(ctx, out, "dual")


def dual_comul(x: HallElt) -> HallTensor:
    """``Delta [V]* = sum v^{<U,W>/2 - <W,U>/2} |F^V_{UW}| [U]* (x) [W]*``."""
    if x.basis != "dual":
        raise ValueError("dual_comul works in the dual basis")
    ctx = x.ctx
    out: dict = {}
    for V, c in x.terms.items():
        for e in _subdims(V.dims):
            for (U, W), n in _hall_table(V, e).items():
                shift = _euler(ctx, U.dims, W.dims) - _euler(ctx, W.dims, U.dims)
                _add(out, (U, W), (c * n).vshift(shift))
    return HallTensor(ctx, out, "dual")


def delta_mul(x: HallElt, y: HallElt) -> HallElt:
    """``(delta_U delta_W)([V]) = (delta_U (x) delta_W)(Delta [V])``."""
    x._check(y, "delta")
    ctx = x.ctx
    out: dict = {}
    for U, a in x.terms.items():
        for W, b in y.terms.items():
            dims = _add_dims(U.dims, W.dims)
            for V in rep_classes(ctx, dims):
                coef = hall_comul(HallElt.of(V)).terms.get((U, W))
                if coef is not None:
                    _add(out, V, a * b * coef)
    return HallElt(ctx, out, "delta")


def delta_comul(x: HallElt) -> HallTensor:
    """``Delta(delta_V)(U (x) W) = delta_V([U][W])``."""
    if x.basis != "delta":
        raise ValueError("delta_comul works in the delta basis")
    ctx = x.ctx
    out: dict = {}
    for V, c in x.terms.items():
        for e in _subdims(V.dims):
            f = _sub_dims(V.dims, e)
            for U in rep_classes(ctx, f):
                for W in rep_classes(ctx, e):
                    coef = hall_mul(HallElt.of(U), HallElt.of(W)).terms.get(V)
                    if coef is not None:
                        _add(out, (U, W), c * coef)
    return HallTensor(ctx, out, "delta")


def theta_rep(U: RepClass | QuiverRep, x: HallElt) -> HallElt:
    """``theta_U(delta_V) = sum_W v^{<W,U>} |F^V_{WU}| delta_W`` (raw linear map)."""
    return _theta_raw(U, x, star=False)


def theta_rep_star(U: RepClass | QuiverRep, x: HallElt) -> HallElt:
    """``theta*_U(delta_V) = sum_W v^{<U,W>} |F^V_{UW}| delta_W`` (raw linear map)."""
    return _theta_raw(U, x, star=True)


def _theta_raw(U, x: HallElt, star: bool) -> HallElt:
    if x.basis != "delta":
        raise ValueError("theta_U acts on the delta basis")
    U = U if isinstance(U, RepClass) else repclass_of(U)
    ctx = x.ctx
    out: dict = {}
    for V, c in x.terms.items():
        if any(a > b for a, b in zip(U.dims, V.dims)):
            continue
        f = _sub_dims(V.dims, U.dims)
        for W in rep_classes(ctx, f):
            if star:
                n = hall_number_classes(U, W, V)
                shift = 2 * _euler(ctx, U.dims, W.dims)
            else:
                n = hall_number_classes(W, U, V)
                shift = 2 * _euler(ctx, W.dims, U.dims)
            if n:
                _add(out, W, (c * n).vshift(shift))
    return HallElt(ctx, out, "delta")


def theta_simple(i, x: HallElt) -> HallElt:
    """``theta_{S_i}`` on a sum in the dual or delta basis, answered in the same basis."""
    return _theta_simple(i, x, star=False)


def theta_simple_star(i, x: HallElt) -> HallElt:
    return _theta_simple(i, x, star=True)


def _theta_simple(i, x: HallElt, star: bool) -> HallElt:
    ctx = x.ctx
    S = QuiverRep.simple(ctx, ctx.quiver.index(i))
    if x.basis == "delta":
        return _theta_raw(S, x, star)
    if x.basis != "dual":
        raise ValueError("theta_simple acts on the delta or dual basis")
    return _theta_raw(S, x.to_basis("delta"), star).to_basis("dual")


# ---------------------------------------------------------------------------
# characters


def _word_exponent(quiver: ValuedQuiver, word: Sequence) -> int:
    """Half-exponent ``-2 sum_{k<l} <alpha_{j_l}, alpha_{j_k}>``."""
    idx = [quiver.index(x) for x in word]
    E = _euler_table(quiver)
    return -2 * sum(E[idx[l]][idx[k]] for l in range(len(idx)) for k in range(l))


def _typed_exponent(quiver: ValuedQuiver, word: Sequence, a: Sequence[int]) -> int:
    idx = [quiver.index(x) for x in word]
    E = _euler_table(quiver)
    return -2 * sum(a[k] * a[l] * E[idx[l]][idx[k]] for l in range(len(idx)) for k in range(l))


@lru_cache(maxsize=None)
def _euler_table(quiver: ValuedQuiver) -> tuple:
    n = quiver.n
    return tuple(tuple(euler_form(quiver, quiver.simple(quiver.labels[i]), quiver.simple(quiver.labels[j]))
                       for j in range(n)) for i in range(n))


def omega(V: RepClass | QuiverRep | HallElt) -> ShuffleElt:
    """``Omega([V]*) = sum_j v^{-sum_{k<l} <alpha_{j_l}, alpha_{j_k}>} |F_j(V)| j`` (fixed field).

    A ``HallElt`` in the dual basis is mapped linearly.
    """
    if isinstance(V, HallElt):
        x = V.to_basis("dual")
        out = ShuffleElt.zero(x.ctx.quiver.cartan_data)
        for k, c in x.terms.items():
            out = out + omega(k).map_coefficients(lambda t, c=c: t * c)
        return out
    rep = V.rep if isinstance(V, RepClass) else V
    ctx = rep.ctx
    quiver = ctx.quiver
    terms = {}
    for w, n in flag_counts(rep).items():
        terms[w] = SqrtQScalar.vpow(ctx.q, _word_exponent(quiver, w)) * n
    return ShuffleElt(quiver.cartan_data, terms)


def omega_tensor(t: HallTensor) -> ShuffleTensor:
    """``(Omega (x) Omega)`` of a tensor in the dual basis."""
    if t.basis != "dual":
        raise ValueError("omega_tensor needs the dual basis")
    c = t.ctx.quiver.cartan_data
    out: dict = {}
    for (U, W), coef in t.terms.items():
        for a, x in omega(U).terms.items():
            for b, y in omega(W).terms.items():
                _add(out, (a, b), coef * x * y)
    return ShuffleTensor(c, out)


def psi_tilde(word: Sequence, V: RepClass | QuiverRep) -> TorusElt:
    """``X_{V,i} = sum_a v^{-sum_{k<l} a_k a_l <alpha_{i_l}, alpha_{i_k}>} |F_{i,a}(V)| t^a``."""
    rep = V.rep if isinstance(V, RepClass) else V
    ctx = rep.ctx
    quiver = ctx.quiver
    word = tuple(word)
    form = CommutationForm.from_word(quiver.cartan_data, word)
    terms = {}
    for a, n in typed_flag_counts(rep, word).items():
        terms[a] = SqrtQScalar.vpow(ctx.q, _typed_exponent(quiver, word, a)) * n
    return TorusElt(form, terms)


# ---------------------------------------------------------------------------
# symbolic mode


def flag_degree_bound(quiver: ValuedQuiver, dims: Sequence[int]) -> int:
    """Degree in ``q`` of the number of complete flags at every vertex (an upper bound)."""
    return sum(d * v * (v - 1) // 2 for d, v in zip(quiver.d, dims))


def grassmannian_degree_bound(quiver: ValuedQuiver, dims: Sequence[int], e: Sequence[int]) -> int:
    return sum(d * x * (v - x) for d, v, x in zip(quiver.d, dims, e))


class SymbolicRep:
    """A representation defined over every finite field by a name such as
    ``S1``, ``I2``, ``M(2,1)`` or ``S1+M(1,1)`` (see ``finrep.parse_rep``)."""

    def __init__(self, quiver: ValuedQuiver, name: str):
        self.quiver = quiver
        self.name = name

    def realize(self, q: int) -> QuiverRep:
        return parse_rep(context(self.quiver, q), self.name)

    def dims(self) -> tuple:
        return self.realize(2).dims

    def __repr__(self):
        return f"SymbolicRep({self.name})"


def _sample_fields(bound: int, points: Sequence[int] | None) -> list[int]:
    from .interp import SAFETY_MARGIN

    if points is not None:
        return list(points)
    return list(PRIME_POWERS[: bound + SAFETY_MARGIN + 2])


def _symbolic_counts(count_fn: Callable[[QuiverRep], dict], rep: SymbolicRep, bound: int,
                     points: Sequence[int] | None = None, holdout: int | None = None) -> dict:
    """Interpolate every entry of ``count_fn(rep over F_q)`` as a polynomial in ``q``."""
    fields = _sample_fields(bound, points)
    if points is not None and holdout is not None:
        fields = fields + [holdout]
    tables = {}

    def table(q):
        if q not in tables:
            tables[q] = count_fn(rep.realize(q))
        return tables[q]

    keys = set()
    for q in fields:
        keys |= set(table(q))
    out = {}
    for k in sorted(keys, key=repr):
        kw = {}
        if points is not None:
            kw = {"points": points, "holdout": holdout}
        out[k] = interpolate_count(lambda q, k=k: table(q).get(k, 0), bound, **kw)
    return out


def omega_symbolic(rep: SymbolicRep, points: Sequence[int] | None = None,
                   holdout: int | None = None) -> ShuffleElt:
    """``Omega`` with coefficients in ``Z[v, v^-1]`` from interpolated flag counts."""
    quiver = rep.quiver
    dims = rep.dims()
    polys = _symbolic_counts(flag_counts, rep, flag_degree_bound(quiver, dims), points, holdout)
    terms = {}
    for w, poly in polys.items():
        val = poly.to_laurent().vshift(_word_exponent(quiver, w))
        if not val.is_zero():
            terms[w] = val
    return ShuffleElt(quiver.cartan_data, terms)


def psi_tilde_symbolic(word: Sequence, rep: SymbolicRep, points: Sequence[int] | None = None,
                       holdout: int | None = None) -> TorusElt:
    quiver = rep.quiver
    word = tuple(word)
    dims = rep.dims()
    polys = _symbolic_counts(lambda V: typed_flag_counts(V, word), rep,
                             flag_degree_bound(quiver, dims), points, holdout)
    form = CommutationForm.from_word(quiver.cartan_data, word)
    terms = {}
    for a, poly in polys.items():
        val = poly.to_laurent().vshift(_typed_exponent(quiver, word, a))
        if not val.is_zero():
            terms[a] = val
    return TorusElt(form, terms)


__all__ = [
    "HallElt",
    "HallTensor",
    "InterpolationError",
    "SymbolicRep",
    "delta_comul",
    "delta_mul",
    "dual_comul",
    "dual_mul",
    "dual_prefactor",
    "flag_degree_bound",
    "grassmannian_degree_bound",
    "hall_comul",
    "hall_mul",
    "hall_number_classes",
    "omega",
    "omega_symbolic",
    "omega_tensor",
    "psi_tilde",
    "psi_tilde_symbolic",
    "theta_rep",
    "theta_rep_star",
    "theta_simple",
    "theta_simple_star",
]
