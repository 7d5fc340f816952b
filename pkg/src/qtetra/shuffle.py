"""The quantum shuffle algebra on words over the vertex alphabet.

Coefficients may be any of the exact scalar types from :mod:`qtetra.coeff`;
symbolic work uses ``ScalarFraction`` and fixed-field checks use
``SqrtQScalar``.  Exponents are in ``v^(1/2)`` units throughout, so the
shuffle weight ``v^zeta`` is a shift by ``2*zeta``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .cartan import CartanData, sym_form
from .coeff import LaurentScalar, ScalarFraction, coef_from_json, qfact_bar

Word = tuple


def _one():
    return ScalarFraction.from_int(1)


def _coerce(c):
    if isinstance(c, int):
        return ScalarFraction.from_int(c)
    if isinstance(c, LaurentScalar):
        return ScalarFraction(c)
    return c


def scale_by_laurent(coef, x: LaurentScalar):
    """``coef * x`` for any coefficient type, using only ``vshift`` and integers."""
    out = None
    for e, c in x.items():
        term = coef.vshift(e) * c
        out = term if out is None else out + term
    return out if out is not None else coef * 0


def word_key(c: CartanData, w: Word) -> tuple:
    """Length first, then lexicographic in vertex order."""
    return (len(w), tuple(c.index(x) for x in w))


def render_word(w: Word) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


class ShuffleElt:
    """A finite linear combination of words."""

    __slots__ = ("cartan", "terms")

    def __init__(self, cartan: CartanData, terms: Mapping[Word, object] | None = None):
        self.cartan = cartan
        clean = {}
        for w, coef in (terms or {}).items():
            coef = _coerce(coef)
            if not coef.is_zero():
                w = tuple(w)
                for letter in w:
                    cartan.index(letter)
                clean[w] = coef
        self.terms = clean

    @classmethod
    def word(cls, cartan: CartanData, w: Iterable, coef=None) -> "ShuffleElt":
        return cls(cartan, {tuple(w): _one() if coef is None else coef})

    @classmethod
    def unit(cls, cartan: CartanData, coef=None) -> "ShuffleElt":
        return cls.word(cartan, (), coef)

    @classmethod
    def zero(cls, cartan: CartanData) -> "ShuffleElt":
        return cls(cartan)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """The common degree of all words, or ``None`` if mixed or empty."""
        degs = {self.cartan.word_degree(w) for w in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: word_key(self.cartan, kv[0]))

    def coefficient(self, w: Iterable):
        return self.terms.get(tuple(w))

    def _same(self, other: "ShuffleElt"):
        if not isinstance(other, ShuffleElt):
            return NotImplemented
        if other.cartan != self.cartan:
            raise ValueError("shuffle elements over different Cartan data")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return ShuffleElt(self.cartan, out)

    def __neg__(self):
        return ShuffleElt(self.cartan, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "ShuffleElt":
        s = _coerce(s)
        return ShuffleElt(self.cartan, {w: c * s for w, c in self.terms.items()})

    def vshift(self, half_exp: int) -> "ShuffleElt":
        return ShuffleElt(self.cartan, {w: c.vshift(half_exp) for w, c in self.terms.items()})

    def map_coefficients(self, fn: Callable) -> "ShuffleElt":
        return ShuffleElt(self.cartan, {w: fn(c) for w, c in self.terms.items()})

    def specialize(self, q: int) -> "ShuffleElt":
        return self.map_coefficients(lambda c: c.specialize(q))

    def __mul__(self, other):
        if isinstance(other, ShuffleElt):
            return shuffle_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, ShuffleElt):
            return NotImplemented
        return self.cartan == other.cartan and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"ShuffleElt({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{render_word(w)}" for w, c in self.sorted_terms())

    def to_json(self) -> dict:
        return {"terms": [{"word": list(w), "coef": c.to_json()} for w, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, cartan: CartanData, data: dict) -> "ShuffleElt":
        terms: dict = {}
        for t in data["terms"]:
            coef = coef_from_json(t.get("coef", [[0, "1"]]))
            w = tuple(t["word"])
            terms[w] = terms[w] + coef if w in terms else coef
        return cls(cartan, terms)


# ---------------------------------------------------------------------------
# zeta and the shuffle product

def _pair(c: CartanData, x, y) -> int:
    i, j = c.index(x), c.index(y)
    return c.d[i] * c.cartan[i][j]


def zeta(c: CartanData, j: Sequence, r: int, s: int, sigma: Sequence[int]) -> Fraction:
    """Weight of an ``(r, s)``-shuffle.

    ``sigma`` lists the original (0-based) positions in output order, so the
    shuffled word is ``[j[t] for t in sigma]``.
    """
    if len(j) != r + s or sorted(sigma) != list(range(r + s)):
        raise ValueError("sigma is not a permutation of the right size")
    pos = {t: p for p, t in enumerate(sigma)}
    if any(pos[k] > pos[k + 1] for k in range(r - 1)) or any(pos[k] > pos[k + 1] for k in range(r, r + s - 1)):
        raise ValueError("sigma is not an (r,s)-shuffle")
    total = 0
    for k in range(r):
        for ell in range(r, r + s):
            val = _pair(c, j[k], j[ell])
            total += val if pos[ell] < pos[k] else -val
    return Fraction(total, 2)


def shuffles(r: int, s: int):
    """All ``(r, s)``-shuffles in the ``sigma`` convention of :func:`zeta`."""
    n = r + s
    for left_pos in combinations(range(n), r):
        sigma = [0] * n
        lp = set(left_pos)
        a, b = 0, r
        for p in range(n):
            if p in lp:
                sigma[p] = a
                a += 1
            else:
                sigma[p] = b
                b += 1
        yield tuple(sigma)


@lru_cache(maxsize=200000)
def _word_shuffle(c: CartanData, a: Word, b: Word) -> tuple:
    """``a o b`` as a tuple of ``(word, LaurentScalar)`` pairs."""
    if not a:
        return ((b, LaurentScalar.vpow(0)),)
    if not b:
        return ((a, LaurentScalar.vpow(0)),)
    out: dict[Word, LaurentScalar] = {}
    # first letter from the left word: it precedes every right letter
    shift = -sum(_pair(c, a[0], y) for y in b)
    for w, x in _word_shuffle(c, a[1:], b):
        key = (a[0],) + w
        val = x.vshift(shift)
        out[key] = out[key] + val if key in out else val
    # first letter from the right word: it precedes every left letter
    shift = sum(_pair(c, y, b[0]) for y in a)
    for w, x in _word_shuffle(c, a, b[1:]):
        key = (b[0],) + w
        val = x.vshift(shift)
        out[key] = out[key] + val if key in out else val
    return tuple((w, x) for w, x in out.items() if not x.is_zero())


def shuffle_words(c: CartanData, a: Word, b: Word) -> dict[Word, LaurentScalar]:
    return dict(_word_shuffle(c, tuple(a), tuple(b)))


def shuffle_mul(x: ShuffleElt, y: ShuffleElt) -> ShuffleElt:
    if x.cartan != y.cartan:
        raise ValueError("shuffle elements over different Cartan data")
    c = x.cartan
    out: dict[Word, object] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            prod = ca * cb
            for w, lx in _word_shuffle(c, a, b):
                val = scale_by_laurent(prod, lx)
                out[w] = out[w] + val if w in out else val
    return ShuffleElt(c, out)


def shuffle_power(x: ShuffleElt, r: int) -> ShuffleElt:
    out = ShuffleElt.unit(x.cartan)
    for _ in range(r):
        out = shuffle_mul(out, x)
    return out


def divided_power(c: CartanData, i, r: int) -> ShuffleElt:
    """``(i)^{o[r]}``, which is the single word ``(i^r)``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    c.index(i)
    return ShuffleElt.word(c, (i,) * r)


def divided_power_by_division(c: CartanData, i, r: int) -> ShuffleElt:
    """``(i)^{o r} / [r]_i!`` computed the long way, as a cross-check."""
    power = shuffle_power(ShuffleElt.word(c, (i,)), r)
    denom = ScalarFraction(qfact_bar(r, c.dl(i)))
    return ShuffleElt(c, {w: coef / denom for w, coef in power.terms.items()})


def serre_element(c: CartanData, i, j) -> ShuffleElt:
    if i == j:
        raise ValueError("the Serre relation needs two distinct vertices")
    top = 1 - c.a(i, j)
    out = ShuffleElt.zero(c)
    xj = ShuffleElt.word(c, (j,))
    for r in range(top + 1):
        term = shuffle_mul(shuffle_mul(divided_power(c, i, r), xj), divided_power(c, i, top - r))
        out = out + (term if r % 2 == 0 else -term)
    return out


serre_check = serre_element


# ---------------------------------------------------------------------------
# comultiplication

class ShuffleTensor:
    """Finite sums of ``w1 (x) w2`` with the twisted product of the shuffle bialgebra."""

    __slots__ = ("cartan", "terms")

    def __init__(self, cartan: CartanData, terms: Mapping | None = None):
        self.cartan = cartan
        self.terms = {k: _coerce(v) for k, v in (terms or {}).items() if not _coerce(v).is_zero()}

    def __add__(self, other: "ShuffleTensor") -> "ShuffleTensor":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return ShuffleTensor(self.cartan, out)

    def __sub__(self, other):
        return self + ShuffleTensor(other.cartan, {k: -v for k, v in other.terms.items()})

    def __mul__(self, other: "ShuffleTensor") -> "ShuffleTensor":
        c = self.cartan
        out: dict = {}
        for (a, b), x in self.terms.items():
            db = c.word_degree(b)
            for (cc, dd), y in other.terms.items():
                twist = 2 * sym_form(c, db, c.word_degree(cc))
                left = _word_shuffle(c, a, cc)
                right = _word_shuffle(c, b, dd)
                prod = (x * y).vshift(twist)
                for w1, l1 in left:
                    for w2, l2 in right:
                        val = scale_by_laurent(prod, l1 * l2)
                        key = (w1, w2)
                        out[key] = out[key] + val if key in out else val
        return ShuffleTensor(c, out)

    def __eq__(self, other):
        return isinstance(other, ShuffleTensor) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def map_coefficients(self, fn) -> "ShuffleTensor":
        return ShuffleTensor(self.cartan, {k: fn(v) for k, v in self.terms.items()})

    def __repr__(self):
        parts = [f"({v})*{render_word(a)}#{render_word(b)}" for (a, b), v in sorted(self.terms.items(), key=lambda kv: (word_key(self.cartan, kv[0][0]), word_key(self.cartan, kv[0][1])))]
        return "ShuffleTensor(" + (" + ".join(parts) or "0") + ")"


def comult(x: ShuffleElt) -> ShuffleTensor:
    """Deconcatenation weighted by ``v^{(|j1|,|j2|)/2}``."""
    c = x.cartan
    out: dict = {}
    for w, coef in x.terms.items():
        for cut in range(len(w) + 1):
            a, b = w[:cut], w[cut:]
            val = coef.vshift(sym_form(c, c.word_degree(a), c.word_degree(b)))
            key = (a, b)
            out[key] = out[key] + val if key in out else val
    return ShuffleTensor(c, out)


def tensor_comult_left(t: ShuffleTensor) -> dict:
    """``(Delta (x) id)`` applied to a tensor, as a map on word triples."""
    c = t.cartan
    out: dict = {}
    for (a, b), coef in t.terms.items():
        for (a1, a2), v in comult(ShuffleElt(c, {a: coef})).terms.items():
            key = (a1, a2, b)
            out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def tensor_comult_right(t: ShuffleTensor) -> dict:
    c = t.cartan
    out: dict = {}
    for (a, b), coef in t.terms.items():
        for (b1, b2), v in comult(ShuffleElt(c, {b: coef})).terms.items():
            key = (a, b1, b2)
            out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# derivations

def theta(i, x: ShuffleElt) -> ShuffleElt:
    """Strip a final letter ``i`` with weight ``v^{(|j| - alpha_i, alpha_i)/2}``."""
    c = x.cartan
    ai = c.simple(i)
    out: dict = {}
    for w, coef in x.terms.items():
        if w and w[-1] == i:
            rest = w[:-1]
            val = coef.vshift(sym_form(c, c.word_degree(rest), ai))
            out[rest] = out[rest] + val if rest in out else val
    return ShuffleElt(c, out)


def theta_star(i, x: ShuffleElt) -> ShuffleElt:
    """Strip a leading letter ``i`` with weight ``v^{(alpha_i, |j| - alpha_i)/2}``."""
    c = x.cartan
    ai = c.simple(i)
    out: dict = {}
    for w, coef in x.terms.items():
        if w and w[0] == i:
            rest = w[1:]
            val = coef.vshift(sym_form(c, ai, c.word_degree(rest)))
            out[rest] = out[rest] + val if rest in out else val
    return ShuffleElt(c, out)
