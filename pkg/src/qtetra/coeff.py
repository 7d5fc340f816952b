"""Exact coefficient rings.

All symbolic exponents are stored in units of ``v^(1/2)``: an exponent ``e``
stands for ``v^(e/2)`` and ``q = v^2`` is exponent ``4``.

Three coefficient types live here:

``LaurentScalar``
    Laurent polynomials in ``v^(1/2)`` with big-integer coefficients.
``ScalarFraction``
    Their field of fractions, kept in a canonical reduced form.
``SqrtQScalar``
    Exact values at a fixed prime power ``q`` with ``v = sqrt(q)``.  Since
    half-integer powers of ``v`` occur in the shuffle product, the ring is
    ``Q(q^(1/4))``.

Every coefficient type supports ``+ - *``, equality, hashing, ``vshift(e)``
(multiply by ``v^(e/2)``) and ``is_zero()``; that is all the algebra modules
rely on.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Mapping


def _clean(terms: Mapping[int, int]) -> dict[int, int]:
    return {e: c for e, c in terms.items() if c}


class LaurentScalar:
    """A Laurent polynomial in ``v^(1/2)`` over the integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = _clean(terms or {})
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "LaurentScalar":
        return cls({0: n}) if n else ZERO

    @classmethod
    def monomial(cls, half_exp: int, coef: int = 1) -> "LaurentScalar":
        return cls({half_exp: coef})

    @classmethod
    def vpow(cls, half_exp: int) -> "LaurentScalar":
        return cls({half_exp: 1})

    # -- queries --------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def coefficient(self, half_exp: int) -> int:
        return self._terms.get(half_exp, 0)

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._terms) == 1:
            (f, d), = other._terms.items()
            return LaurentScalar({e + f: c * d for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e, c in self._terms.items():
            for f, d in other._terms.items():
                out[e + f] = out.get(e + f, 0) + c * d
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("only unit monomials have negative powers")
            (e, c), = self._terms.items()
            return LaurentScalar({e * n: c ** abs(n)})
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def vshift(self, half_exp: int) -> "LaurentScalar":
        if not half_exp:
            return self
        return LaurentScalar({e + half_exp: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentScalar":
        return LaurentScalar({-e: c for e, c in self._terms.items()})

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            if isinstance(other, ScalarFraction):
                return other == self
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- evaluation -------------------------------------------------------
    def specialize(self, q: int) -> "SqrtQScalar":
        return specialize(self, q)

    def subs_q(self, q) -> Fraction:
        """Evaluate at an exact rational ``q`` (only integral powers of q allowed)."""
        out = Fraction(0)
        for e, c in self._terms.items():
            if e % 4:
                raise ValueError("not a polynomial in q")
            out += c * Fraction(q) ** (e // 4)
        return out

    # -- rendering ----------------------------------------------------------
    def __repr__(self):
        return f"LaurentScalar({render_laurent(self)})"

    def __str__(self):
        return render_laurent(self)

    def to_json(self) -> list:
        return [[e, str(c)] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentScalar":
        return cls({int(e): int(c) for e, c in data})


def _as_laurent(x):
    if isinstance(x, LaurentScalar):
        return x
    if isinstance(x, int):
        return LaurentScalar.from_int(x)
    return NotImplemented


ZERO = LaurentScalar()
ONE = LaurentScalar({0: 1})
V = LaurentScalar({2: 1})
Q = LaurentScalar({4: 1})


def render_laurent(x: LaurentScalar, q_sugar: bool = False) -> str:
    """Terms by ascending half-exponent, as ``c*v^(e/2)``.

    With ``q_sugar`` even powers of ``v`` print as powers of ``q``.
    """
    if x.is_zero():
        return "0"
    parts = []
    for e, c in x.items():
        if e == 0:
            mono = ""
        elif q_sugar and e % 4 == 0:
            mono = "q" if e == 4 else f"q^{e // 4}"
        elif e % 2 == 0:
            mono = "v" if e == 2 else f"v^{e // 2}"
        else:
            mono = f"v^({e}/2)"
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Univariate integer polynomial helpers (dense, ascending coefficient lists).

def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_content(p: list[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def _poly_divmod_q(a: list, b: list) -> tuple[list, list]:
    """Division over Q with Fraction coefficients."""
    a = [Fraction(c) for c in a]
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = a[-1] / lead
        quot[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        _poly_trim(a)
    return quot, a


def _primitive(p: list) -> list[int]:
    """Scale a rational polynomial to a primitive integer one with positive lead."""
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = _poly_content(ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of two integer polynomials (content ignored)."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not a:
        return _primitive(b) if b else []
    if not b:
        return _primitive(a)
    while b:
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    return _primitive(a)


def _to_dense(x: LaurentScalar) -> tuple[int, list[int]]:
    lo = x.min_exp()
    dense = [0] * (x.max_exp() - lo + 1)
    for e, c in x._terms.items():
        dense[e - lo] = c
    return lo, dense


def _from_dense(lo: int, dense: list) -> LaurentScalar:
    return LaurentScalar({lo + i: int(c) for i, c in enumerate(dense) if c})


class ScalarFraction:
    """A quotient of two ``LaurentScalar`` values in canonical form.

    The denominator has minimal half-exponent 0 and a positive lowest
    coefficient, and shares no polynomial factor (content included) with the
    numerator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = _as_laurent(num) if not isinstance(num, LaurentScalar) else num
        if den is None:
            den = ONE
        elif not isinstance(den, LaurentScalar):
            den = _as_laurent(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("ScalarFraction needs LaurentScalar or int parts")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._hash = None
        if _reduced:
            self.num, self.den = num, den
        else:
            self.num, self.den = _reduce(num, den)

    @classmethod
    def from_int(cls, n: int) -> "ScalarFraction":
        return cls(LaurentScalar.from_int(n), ONE, _reduced=True)

    @classmethod
    def vpow(cls, half_exp: int) -> "ScalarFraction":
        return cls(LaurentScalar.vpow(half_exp), ONE, _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> LaurentScalar:
        if self.den != ONE:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        other = _as_fraction(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            if self.den == ONE:
                return ScalarFraction(self.num + other.num, ONE, _reduced=True)
            return ScalarFraction(self.num + other.num, self.den)
        return ScalarFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ScalarFraction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _as_fraction(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_fraction(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == ONE and other.den == ONE:
            return ScalarFraction(self.num * other.num, ONE, _reduced=True)
        return ScalarFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_fraction(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero ScalarFraction")
        return ScalarFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_fraction(other) / self

    def vshift(self, half_exp: int) -> "ScalarFraction":
        return ScalarFraction(self.num.vshift(half_exp), self.den, _reduced=True)

    def bar(self) -> "ScalarFraction":
        return ScalarFraction(self.num.bar(), self.den.bar())

    def specialize(self, q: int) -> "SqrtQScalar":
        return specialize(self.num, q) / specialize(self.den, q)

    def __eq__(self, other):
        other = _as_fraction(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"ScalarFraction({self})"

    def __str__(self):
        if self.den == ONE:
            return render_laurent(self.num)
        return f"({render_laurent(self.num)})/({render_laurent(self.den)})"

    def to_json(self):
        if self.den == ONE:
            return self.num.to_json()
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "ScalarFraction":
        if isinstance(data, dict):
            return cls(LaurentScalar.from_json(data["num"]), LaurentScalar.from_json(data["den"]))
        return cls(LaurentScalar.from_json(data), ONE, _reduced=True)


def _as_fraction(x):
    if isinstance(x, ScalarFraction):
        return x
    if isinstance(x, LaurentScalar):
        return ScalarFraction(x, ONE, _reduced=True)
    if isinstance(x, int):
        return ScalarFraction(LaurentScalar.from_int(x), ONE, _reduced=True)
    return NotImplemented


def _reduce(num: LaurentScalar, den: LaurentScalar) -> tuple[LaurentScalar, LaurentScalar]:
    if num.is_zero():
        return ZERO, ONE
    if den.is_monomial():
        (e, c), = den._terms.items()
        shifted = num.vshift(-e)
        g = gcd(_poly_content(list(shifted._terms.values())), c)
        if c < 0:
            g = -g
        return LaurentScalar({k: a // g for k, a in shifted._terms.items()}), LaurentScalar({0: c // g})
    nlo, nd = _to_dense(num)
    dlo, dd = _to_dense(den)
    g = poly_gcd(nd, dd)
    if len(g) > 1:
        nd, r1 = _poly_divmod_q(nd, g)
        dd, r2 = _poly_divmod_q(dd, g)
        assert not r1 and not r2
    # content: both are now rational multiples of integer polys; clear jointly
    scale = 1
    for c in list(nd) + list(dd):
        scale = scale * Fraction(c).denominator // gcd(scale, Fraction(c).denominator)
    nd = [int(Fraction(c) * scale) for c in nd]
    dd = [int(Fraction(c) * scale) for c in dd]
    cg = gcd(_poly_content(nd), _poly_content(dd))
    nd = [c // cg for c in nd]
    dd = [c // cg for c in dd]
    low = next(i for i, c in enumerate(dd) if c)
    if dd[low] < 0:
        nd = [-c for c in nd]
        dd = [-c for c in dd]
    return _from_dense(nlo - dlo - low, nd), _from_dense(-low, dd)


def frac_reduce(x: ScalarFraction) -> ScalarFraction:
    """Return ``x`` in canonical form (always already so; kept for the API)."""
    return ScalarFraction(x.num, x.den)


# ---------------------------------------------------------------------------
# Fixed-field specialization: the real field Q(q^(1/4)).

@lru_cache(maxsize=None)
def _quartic_shape(q: int) -> tuple[int, Fraction]:
    """Degree of ``w = q^(1/4)`` over Q and the rational value of ``w^degree``."""
    s = isqrt(q)
    if s * s == q:
        t = isqrt(s)
        if t * t == s:
            return 1, Fraction(t)
        return 2, Fraction(s)
    return 4, Fraction(q)


class SqrtQScalar:
    """An exact element of ``Q(q^(1/4))`` where ``v = sqrt(q)``.

    Stored as rational coordinates in the basis ``1, w, ..., w^(deg-1)`` with
    ``w = q^(1/4) > 0``; the degree drops when ``q`` is a square or fourth
    power so the representation is canonical.
    """

    __slots__ = ("q", "coords", "_hash")

    def __init__(self, q: int, coords: Iterable = (0,)):
        if q < 2:
            raise ValueError("q must be at least 2")
        deg, _ = _quartic_shape(q)
        coords = [Fraction(c) for c in coords]
        if len(coords) > deg:
            raise ValueError("too many coordinates for this q")
        coords += [Fraction(0)] * (deg - len(coords))
        self.q = q
        self.coords = tuple(coords)
        self._hash = None

    @classmethod
    def from_int(cls, q: int, n) -> "SqrtQScalar":
        return cls(q, (n,))

    @classmethod
    def vpow(cls, q: int, half_exp: int) -> "SqrtQScalar":
        return cls(q, (1,)).vshift(half_exp)

    @property
    def q_value(self) -> int:
        return self.q

    def _in_sqrt_field(self) -> None:
        if any(self.coords[1::2]):
            raise ValueError("value involves odd powers of q^(1/4)")

    @property
    def rational_part(self) -> Fraction:
        """Rational part when the value lies in ``Q(sqrt(q))``."""
        self._in_sqrt_field()
        return self.coords[0]

    @property
    def sqrt_part(self) -> Fraction:
        """Coefficient of ``sqrt(q)``; zero when ``sqrt(q)`` is rational."""
        self._in_sqrt_field()
        return self.coords[2] if len(self.coords) == 4 else Fraction(0)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return SqrtQScalar(self.q, (other,))
        if isinstance(other, SqrtQScalar):
            if other.q != self.q:
                raise ValueError(f"field mismatch: q={self.q} vs q={other.q}")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return SqrtQScalar(self.q, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return SqrtQScalar(self.q, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return SqrtQScalar(self.q, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        deg, top = _quartic_shape(self.q)
        out = [Fraction(0)] * deg
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                k = i + j
                if k >= deg:
                    out[k - deg] += a * b * top
                else:
                    out[k] += a * b
        return SqrtQScalar(self.q, out)

    __rmul__ = __mul__

    def inverse(self) -> "SqrtQScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        deg, top = _quartic_shape(self.q)
        if deg == 1:
            return SqrtQScalar(self.q, (1 / self.coords[0],))
        # multiply by conjugates: x * sigma(x) ... lands in Q(w^2) then Q
        if deg == 2:
            a, b = self.coords
            norm = a * a - b * b * top
            return SqrtQScalar(self.q, (a / norm, -b / norm))
        a0, a1, a2, a3 = self.coords
        conj = SqrtQScalar(self.q, (a0, -a1, a2, -a3))  # w -> -w
        prod = self * conj  # lies in Q(w^2)
        c0, _, c2, _ = prod.coords
        # (c0 + c2 w^2)^{-1} = (c0 - c2 w^2)/(c0^2 - c2^2 q)
        norm = c0 * c0 - c2 * c2 * top
        inv2 = SqrtQScalar(self.q, (c0 / norm, 0, -c2 / norm, 0))
        return conj * inv2

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def vshift(self, half_exp: int) -> "SqrtQScalar":
        if not half_exp:
            return self
        deg, top = _quartic_shape(self.q)
        w = SqrtQScalar(self.q, (0, 1) if deg > 1 else (top,))
        if half_exp < 0:
            w = w.inverse()
        out = self
        base = w
        n = abs(half_exp)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SqrtQScalar(self.q, (other,))
        if not isinstance(other, SqrtQScalar):
            return NotImplemented
        return self.q == other.q and self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.q, self.coords))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        w = self.q ** 0.25
        return float(sum(float(c) * w ** k for k, c in enumerate(self.coords)))

    def __repr__(self):
        return f"SqrtQScalar(q={self.q}, {self})"

    def __str__(self):
        deg, top = _quartic_shape(self.q)
        names = ["", f"{self.q}^(1/4)", f"{self.q}^(1/2)", f"{self.q}^(3/4)"]
        if deg == 2:
            names = ["", f"{top}^(1/2)"]
        parts = []
        for k, c in enumerate(self.coords):
            if c:
                parts.append(f"{c}" if k == 0 else f"{c}*{names[k]}")
        return " + ".join(parts) or "0"

    def to_json(self):
        return {"q": self.q, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data) -> "SqrtQScalar":
        return cls(int(data["q"]), [Fraction(c) for c in data["coords"]])


def coef_from_json(data):
    """Decode any coefficient written by a ``to_json`` method."""
    if isinstance(data, int):
        return ScalarFraction.from_int(data)
    if isinstance(data, dict) and "q" in data:
        return SqrtQScalar.from_json(data)
    return ScalarFraction.from_json(data)


def specialize(x: LaurentScalar, q: int) -> SqrtQScalar:
    """Evaluate a Laurent polynomial at ``v = sqrt(q)``."""
    if q < 2:
        raise ValueError("q must be at least 2")
    out = SqrtQScalar(q)
    for e, c in x._terms.items():
        out = out + SqrtQScalar.vpow(q, e) * c
    return out


# ---------------------------------------------------------------------------
# q-combinatorics.  ``d`` always means the base is q^d (resp. v^d).

def qnum(n: int, d: int = 1) -> LaurentScalar:
    """``(n)_{q^d} = 1 + q^d + ... + q^{d(n-1)}``."""
    return LaurentScalar({4 * d * k: 1 for k in range(n)})


def qint_bar(n: int, d: int = 1) -> LaurentScalar:
    """``[n]_{v^d} = v^{d(1-n)} + v^{d(3-n)} + ... + v^{d(n-1)}``."""
    return LaurentScalar({2 * d * (1 - n + 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int, d: int = 1) -> LaurentScalar:
    out = ONE
    for k in range(2, n + 1):
        out = out * qnum(k, d)
    return out


@lru_cache(maxsize=None)
def qfact_bar(n: int, d: int = 1) -> LaurentScalar:
    out = ONE
    for k in range(2, n + 1):
        out = out * qint_bar(k, d)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int, d: int = 1) -> LaurentScalar:
    """Gaussian binomial in ``q^d``, built by the Pascal recursion (no division)."""
    if k < 0 or k > n or n < 0:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return qbinom(n - 1, k - 1, d) + qbinom(n - 1, k, d).vshift(4 * d * k)


def qbinom_bar(n: int, k: int, d: int = 1) -> LaurentScalar:
    if k < 0 or k > n or n < 0:
        return ZERO
    return qbinom(n, k, d).vshift(-2 * d * k * (n - k))


def bar(x):
    """Bar involution ``v -> v^{-1}`` on any symbolic coefficient."""
    return x.bar()
