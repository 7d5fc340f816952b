"""Finite fields as towers ``F_p -> F_q -> F_{q^d}``.

Elements are integers whose base-``|base|`` digits are the power-basis
coordinates over the base field, so restriction of scalars is just digit
extraction.  Every modulus is the smallest monic irreducible polynomial,
ordering candidates by the integer whose digits are their coefficients
(constant term lowest).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence


def factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(t for t in range(2, q + 1) if q % t == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except ValueError:
        return False
    return True


class FiniteField:
    """A finite field, either prime or a simple extension of ``base``."""

    def __init__(self, p: int, base: "FiniteField | None" = None, modulus: Sequence[int] | None = None):
        self.p = p
        self.base = base
        if base is None:
            self.degree = 1
            self.modulus = None
            self.q = p
            self.k = 1
        else:
            if modulus is None or modulus[-1] != 1:
                raise ValueError("extension needs a monic modulus")
            self.modulus = tuple(modulus)
            self.degree = len(modulus) - 1
            self.q = base.q ** self.degree
            self.k = base.k * self.degree
        self._build_tables()
        self._ext_cache: dict[int, FiniteField] = {}

    # -- construction ---------------------------------------------------
    def _build_tables(self):
        q = self.q
        if self.base is None:
            self._exp = None
            self._log = None
            g = next(x for x in range(1, q) if _mult_order_mod(x, q) == q - 1) if q > 2 else 1
            self.primitive = g
            exp = [1] * (q - 1)
            for t in range(1, q - 1):
                exp[t] = exp[t - 1] * g % q
            self._exp = exp
        else:
            self.primitive = None
            for cand in range(1, q):
                exp = self._powers_by_poly(cand)
                if exp is not None:
                    self.primitive = cand
                    self._exp = exp
                    break
            if self.primitive is None:
                raise ValueError("modulus is not irreducible")
        log = [0] * q
        for t, x in enumerate(self._exp):
            log[x] = t
        self._log = log
        if q <= 256:
            self._add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        else:
            self._add = None

    def _powers_by_poly(self, g: int):
        """Powers of ``g`` if it generates the multiplicative group, else ``None``."""
        q = self.q
        exp = [1]
        seen = {1}
        gc = self.to_coords(g)
        cur = self.to_coords(1)
        for _ in range(q - 2):
            cur = self._poly_mulmod(cur, gc)
            val = self.from_coords(cur)
            if val in seen:
                return None
            seen.add(val)
            exp.append(val)
        return exp

    def _poly_mulmod(self, a: list[int], b: list[int]) -> list[int]:
        B = self.base
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        for top in range(len(prod) - 1, d - 1, -1):
            c = prod[top]
            if c:
                for t in range(d):
                    prod[top - d + t] = B.sub(prod[top - d + t], B.mul(c, self.modulus[t]))
                prod[top] = 0
        return prod[:d]

    # -- encoding -------------------------------------------------------
    def to_coords(self, a: int) -> list[int]:
        if self.base is None:
            return [a]
        bq = self.base.q
        out = []
        for _ in range(self.degree):
            out.append(a % bq)
            a //= bq
        return out

    def from_coords(self, coords: Sequence[int]) -> int:
        if self.base is None:
            return coords[0]
        bq = self.base.q
        val = 0
        for c in reversed(coords):
            val = val * bq + c
        return val

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic -------------------------------------------------------
    def _add_slow(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        B = self.base
        return self.from_coords([B.add(x, y) for x, y in zip(self.to_coords(a), self.to_coords(b))])

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        return self.from_coords([self.base.neg(x) for x in self.to_coords(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n > 0 else 1
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def tables(self) -> tuple[list[int], list[int], list[int], list[int]]:
        """Flat ``add``, ``mul`` tables and ``neg``, ``inv`` lists for the kernels."""
        q = self.q
        if q > 256:
            raise ValueError("table kernels are limited to fields of size at most 256")
        add = [self._add[a][b] for a in range(q) for b in range(q)]
        mul = [self.mul(a, b) for a in range(q) for b in range(q)]
        neg = [self.neg(a) for a in range(q)]
        inv = [0] + [self.inv(a) for a in range(1, q)]
        return add, mul, neg, inv

    # -- towers -----------------------------------------------------------
    @staticmethod
    @lru_cache(maxsize=None)
    def of_order(q: int) -> "FiniteField":
        p, k = factor_prime_power(q)
        prime = _prime_field(p)
        if k == 1:
            return prime
        return prime.extension(k)

    def extension(self, d: int) -> "FiniteField":
        """``F_{q^d}`` built over this field (``self`` when ``d == 1``)."""
        if d == 1:
            return self
        if d not in self._ext_cache:
            self._ext_cache[d] = FiniteField(self.p, self, smallest_irreducible(self, d))
        return self._ext_cache[d]

    def companion(self) -> list[list[int]]:
        """Matrix over the base of multiplication by the generator ``x`` (acting on columns)."""
        d = self.degree
        m = [[0] * d for _ in range(d)]
        for s in range(d):
            col = self.to_coords(self.mul(self.gen(), self.from_coords([1 if t == s else 0 for t in range(d)])))
            for r in range(d):
                m[r][s] = col[r]
        return m

    def gen(self) -> int:
        """The class of ``x`` (the element with coordinates ``(0, 1, 0, ...)``)."""
        if self.base is None:
            return 1
        return self.base.q if self.degree > 1 else 0

    def mult_matrix(self, a: int) -> list[list[int]]:
        """Matrix over the base of multiplication by ``a``."""
        d = self.degree
        m = [[0] * d for _ in range(d)]
        for s in range(d):
            col = self.to_coords(self.mul(a, self.from_coords([1 if t == s else 0 for t in range(d)])))
            for r in range(d):
                m[r][s] = col[r]
        return m

    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.q}) over GF({self.base.q}) mod {list(self.modulus)}"


def _mult_order_mod(x: int, p: int) -> int:
    t, cur = 1, x % p
    while cur != 1:
        cur = cur * x % p
        t += 1
    return t


@lru_cache(maxsize=None)
def _prime_field(p: int) -> FiniteField:
    if any(p % t == 0 for t in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return FiniteField(p)


def _poly_rem(F: FiniteField, a: list[int], b: list[int]) -> list[int]:
    """Remainder of ``a`` by monic ``b`` over ``F`` (coefficient lists, low to high)."""
    a = list(a)
    db = len(b) - 1
    for top in range(len(a) - 1, db - 1, -1):
        c = a[top]
        if c:
            for t in range(db + 1):
                a[top - db + t] = F.sub(a[top - db + t], F.mul(c, b[t]))
    return a[:db]


def _monic_polys(F: FiniteField, deg: int):
    q = F.q
    for n in range(q ** deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(n % q)
            n //= q
        yield coeffs + [1]


def is_irreducible(F: FiniteField, f: Sequence[int]) -> bool:
    deg = len(f) - 1
    for e in range(1, deg // 2 + 1):
        for g in _monic_polys(F, e):
            if not any(_poly_rem(F, list(f), g)):
                return False
    return True


def smallest_irreducible(F: FiniteField, d: int) -> tuple[int, ...]:
    for f in _monic_polys(F, d):
        if is_irreducible(F, f):
            return tuple(f)
    raise AssertionError("irreducible polynomials exist in every degree")


def poly_eval(K: FiniteField, coeffs_in_base: Sequence[int], y: int) -> int:
    """Evaluate a polynomial with coefficients in ``K.base`` at ``y`` in ``K``."""
    acc = 0
    for c in reversed(coeffs_in_base):
        acc = K.add(K.mul(acc, y), embed_base(K, c))
    return acc


def embed_base(K: FiniteField, c: int) -> int:
    """The base-field element ``c`` viewed inside ``K``."""
    if K.base is None:
        return c
    return c  # coordinates (c, 0, ..., 0) encode to c itself


def embedding(small: FiniteField, big: FiniteField) -> list[int]:
    """A field embedding ``small -> big`` over their common base, as a lookup table.

    Both fields must be extensions of the same base (or ``small`` the base
    itself).  The generator of ``small`` goes to the smallest root of its
    modulus in ``big``.
    """
    if small is big:
        return list(range(small.q))
    if small is big.base:
        return list(range(small.q))
    if small.base is not big.base:
        raise ValueError("fields do not share a base")
    if big.degree % small.degree:
        raise ValueError(f"GF({small.q}) does not embed in GF({big.q})")
    root = next(y for y in range(big.q) if poly_eval(big, small.modulus, y) == 0)
    table = []
    powers = [1]
    for _ in range(small.degree - 1):
        powers.append(big.mul(powers[-1], root))
    for a in range(small.q):
        acc = 0
        for c, pw in zip(small.to_coords(a), powers):
            acc = big.add(acc, big.mul(embed_base(big, c), pw))
        table.append(acc)
    return table
