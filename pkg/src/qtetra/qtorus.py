"""Quasi-commuting polynomial rings and quantum tori.

Both live in one type.  Variables satisfy ``x_l x_k = v^{c[l][k]} x_k x_l``
for an integer skew matrix ``c`` (exponents of ``v``).  Elements are stored
in the bar-invariant monomial basis, where

    X^a X^b = v^{(a^T c b)/2} X^{a+b},

so a product needs only one integer pairing per pair of terms.  A torus of
commutation matrix ``Lambda`` (``X_i X_j = q^{lambda_ij} X_j X_i``) has
``c = 2 Lambda``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .cartan import CartanData, sym_form
from .coeff import LaurentScalar, ScalarFraction, coef_from_json

Exp = tuple[int, ...]


class CommutationForm:
    """Integer skew matrix ``c`` (v-exponents) plus polynomial/torus mode."""

    __slots__ = ("c", "polynomial", "_hash")

    def __init__(self, c: Sequence[Sequence[int]], polynomial: bool = False):
        m = len(c)
        if any(Fraction(x).denominator != 1 for row in c for x in row):
            raise ValueError("commutation exponents must be integers (half-integral Lambda at most)")
        c = tuple(tuple(int(x) for x in row) for row in c)
        for k in range(m):
            if len(c[k]) != m:
                raise ValueError("commutation matrix must be square")
            for ell in range(m):
                if c[k][ell] != -c[ell][k]:
                    raise ValueError("commutation matrix must be skew-symmetric")
        self.c = c
        self.polynomial = polynomial
        self._hash = None

    @property
    def size(self) -> int:
        return len(self.c)

    @classmethod
    def from_word(cls, cartan: CartanData, word: Sequence) -> "CommutationForm":
        """``P_i``: ``t_l t_k = v^{(alpha_{i_k}, alpha_{i_l})} t_k t_l`` for ``k < l``."""
        m = len(word)
        c = [[0] * m for _ in range(m)]
        for k in range(m):
            for ell in range(k + 1, m):
                val = sym_form(cartan, cartan.simple(word[k]), cartan.simple(word[ell]))
                c[ell][k] = val
                c[k][ell] = -val
        return cls(c, polynomial=True)

    @classmethod
    def from_lambda(cls, lam: Sequence[Sequence[int]]) -> "CommutationForm":
        return cls([[2 * x for x in row] for row in lam], polynomial=False)

    def lambda_matrix(self) -> tuple:
        """``c / 2`` as a matrix of Fractions (entries of ``Lambda``)."""
        return tuple(tuple(Fraction(x, 2) for x in row) for row in self.c)

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        """``a^T c b``: the half-exponent of ``X^a X^b = v^{.} X^{a+b}``."""
        total = 0
        for k, x in enumerate(a):
            if x:
                row = self.c[k]
                for ell, y in enumerate(b):
                    if y:
                        total += x * row[ell] * y
        return total

    def as_torus(self) -> "CommutationForm":
        return CommutationForm(self.c, polynomial=False)

    def __eq__(self, other):
        return isinstance(other, CommutationForm) and self.c == other.c and self.polynomial == other.polynomial

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.c, self.polynomial))
        return self._hash

    def __repr__(self):
        return f"CommutationForm({[list(r) for r in self.c]}, polynomial={self.polynomial})"


def _coerce(c):
    if isinstance(c, int):
        return ScalarFraction.from_int(c)
    if isinstance(c, LaurentScalar):
        return ScalarFraction(c)
    return c


class TorusElt:
    """Finite combination of bar-invariant monomials ``X^a``."""

    __slots__ = ("form", "terms")

    def __init__(self, form: CommutationForm, terms: Mapping[Exp, object] | None = None):
        self.form = form
        clean = {}
        m = form.size
        for a, coef in (terms or {}).items():
            coef = _coerce(coef)
            if coef.is_zero():
                continue
            a = tuple(int(x) for x in a)
            if len(a) != m:
                raise ValueError(f"exponent {a} has the wrong length (expected {m})")
            if form.polynomial and min(a, default=0) < 0:
                raise ValueError("negative exponent in polynomial mode")
            clean[a] = coef
        self.terms = clean

    @classmethod
    def monomial(cls, form: CommutationForm, a: Sequence[int], coef=None) -> "TorusElt":
        return cls(form, {tuple(a): ScalarFraction.from_int(1) if coef is None else coef})

    @classmethod
    def one(cls, form: CommutationForm) -> "TorusElt":
        return cls.monomial(form, (0,) * form.size)

    @classmethod
    def gen(cls, form: CommutationForm, k: int) -> "TorusElt":
        return cls.monomial(form, tuple(1 if t == k else 0 for t in range(form.size)))

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other):
        if not isinstance(other, TorusElt):
            return NotImplemented
        if other.form.c != self.form.c:
            raise ValueError("torus elements over different commutation forms")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return TorusElt(self.form, out)

    def __neg__(self):
        return TorusElt(self.form, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TorusElt":
        s = _coerce(s)
        return TorusElt(self.form, {a: c * s for a, c in self.terms.items()})

    def vshift(self, half_exp: int) -> "TorusElt":
        return TorusElt(self.form, {a: c.vshift(half_exp) for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TorusElt):
            return torus_mul(self.form, self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "TorusElt":
        if n < 0:
            inv = self.monomial_inverse()
            return inv ** (-n)
        out = TorusElt.one(self.form)
        for _ in range(n):
            out = out * self
        return out

    def monomial_inverse(self) -> "TorusElt":
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible in the torus")
        (a, c), = self.terms.items()
        if self.form.polynomial:
            raise ValueError("monomials are not invertible in polynomial mode")
        return TorusElt(self.form, {tuple(-x for x in a): ScalarFraction.from_int(1) / c})

    def bar(self) -> "TorusElt":
        return TorusElt(self.form, {a: c.bar() for a, c in self.terms.items()})

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def map_coefficients(self, fn) -> "TorusElt":
        return TorusElt(self.form, {a: fn(c) for a, c in self.terms.items()})

    def specialize(self, q: int) -> "TorusElt":
        return self.map_coefficients(lambda c: c.specialize(q))

    def is_laurent(self) -> bool:
        """All coefficients are Laurent polynomials (no denominators)."""
        return all(not isinstance(c, ScalarFraction) or c.is_laurent() for c in self.terms.values())

    def with_form(self, form: CommutationForm) -> "TorusElt":
        return TorusElt(form, self.terms)

    def leading(self) -> tuple[Exp, object]:
        a = max(self.terms)
        return a, self.terms[a]

    def ordered_coefficients(self) -> dict[Exp, object]:
        """Coefficients with respect to ordered monomials ``x_1^{a_1}...x_m^{a_m}``.

        ``X^a = v^{(1/2) sum_{k<l} a_k a_l c[l][k]} x^a``.
        """
        out = {}
        for a, coef in self.terms.items():
            s = 0
            for k in range(len(a)):
                for ell in range(k + 1, len(a)):
                    s += a[k] * a[ell] * self.form.c[ell][k]
            out[a] = coef.vshift(s)
        return out

    def __eq__(self, other):
        if not isinstance(other, TorusElt):
            return NotImplemented
        return self.form.c == other.form.c and self.terms == other.terms

    def __hash__(self):
        return hash((self.form.c, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"TorusElt({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*X^{list(a)}" for a, c in self.sorted_terms())

    def to_json(self) -> dict:
        return {"terms": [{"exp": list(a), "coef": c.to_json()} for a, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, form: CommutationForm, data: dict) -> "TorusElt":
        return cls(form, {tuple(t["exp"]): coef_from_json(t["coef"]) for t in data["terms"]})


def bar_monomial(form: CommutationForm, a: Sequence[int]) -> TorusElt:
    if form.polynomial and min(a, default=0) < 0:
        raise ValueError("negative exponent in polynomial mode")
    return TorusElt.monomial(form, a)


def torus_mul(form: CommutationForm, x: TorusElt, y: TorusElt) -> TorusElt:
    if x.form.c != form.c or y.form.c != form.c:
        raise ValueError("dimension or form mismatch in torus_mul")
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            key = tuple(s + t for s, t in zip(a, b))
            val = (ca * cb).vshift(form.pair(a, b))
            out[key] = out[key] + val if key in out else val
    return TorusElt(x.form, out)


def right_divide(p: TorusElt, d: TorusElt, max_steps: int = 100000) -> TorusElt:
    """The unique ``r`` with ``r * d == p``; raises if no such Laurent element exists."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    form = p.form.as_torus()
    p = p.with_form(form)
    d = d.with_form(form)
    lead_d, coef_d = d.leading()
    low_d = min(d.terms)
    if p.is_zero():
        return TorusElt(form)
    floor = tuple(s - t for s, t in zip(min(p.terms), low_d))
    quotient: dict = {}
    rest = p
    steps = 0
    while not rest.is_zero():
        steps += 1
        if steps > max_steps:
            raise ArithmeticError("division did not terminate")
        a, ca = rest.leading()
        e = tuple(s - t for s, t in zip(a, lead_d))
        if e < floor:
            raise ArithmeticError("not right-divisible in the quantum torus")
        # X^e X^{lead_d} = v^{pair(e, lead_d)/2} X^a
        coef = ca / coef_d.vshift(form.pair(e, lead_d))
        quotient[e] = coef
        rest = rest - torus_mul(form, TorusElt(form, {e: coef}), d)
    return TorusElt(form, quotient)


def compatibility_check(btilde: Sequence[Sequence[int]], lam: Sequence[Sequence], d: Sequence[int]) -> bool:
    """``sum_i lambda_ij b_ik == delta_jk d_k`` for every ``j`` in ``J`` and ``k`` in ``I``."""
    m = len(btilde)
    n = len(btilde[0]) if m else 0
    if len(lam) != m or any(len(r) != m for r in lam) or len(d) != n:
        raise ValueError("shape mismatch in compatibility data")
    for j in range(m):
        for k in range(n):
            total = sum(Fraction(lam[i][j]) * btilde[i][k] for i in range(m))
            if total != (d[k] if j == k else 0):
                return False
    return True


def solve_compatible_lambda(btilde: Sequence[Sequence[int]], d: Sequence[int]):
    """One skew solution of the compatibility equations and the solution-space dimension.

    Returns ``(Lambda, dim)``; ``Lambda`` is ``None`` when the system is inconsistent.
    """
    m = len(btilde)
    n = len(btilde[0])
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    idx = {p: t for t, p in enumerate(pairs)}
    rows = []
    for j in range(m):
        for k in range(n):
            row = [Fraction(0)] * (len(pairs) + 1)
            for i in range(m):
                if i == j:
                    continue
                if i < j:
                    row[idx[(i, j)]] += btilde[i][k]
                else:
                    row[idx[(j, i)]] -= btilde[i][k]
            row[-1] = Fraction(d[k] if j == k else 0)
            rows.append(row)
    # Gauss-Jordan over Q
    ncols = len(pairs)
    piv_cols = []
    r = 0
    for col in range(ncols):
        pr = next((t for t in range(r, len(rows)) if rows[t][col]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for t in range(len(rows)):
            if t != r and rows[t][col]:
                f = rows[t][col]
                rows[t] = [x - f * y for x, y in zip(rows[t], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] for row in rows):
        return None, ncols - len(piv_cols)
    sol = [Fraction(0)] * ncols
    for t, col in enumerate(piv_cols):
        sol[col] = rows[t][-1]
    lam = [[Fraction(0)] * m for _ in range(m)]
    for (i, j), t in idx.items():
        lam[i][j] = sol[t]
        lam[j][i] = -sol[t]
    return lam, ncols - len(piv_cols)
