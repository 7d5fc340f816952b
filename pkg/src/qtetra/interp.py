"""Counting polynomials in ``q`` recovered by exact Lagrange interpolation."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .coeff import LaurentScalar

PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32)
SAFETY_MARGIN = 2


class InterpolationError(ValueError):
    """A count did not match its interpolated polynomial at a held-out field."""


class CountingPolynomial:
    """A polynomial in ``q`` with integer coefficients (low degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def to_laurent(self) -> LaurentScalar:
        """Substitute ``q = v^2`` (half-exponent ``4k`` for ``q^k``)."""
        return LaurentScalar({4 * k: c for k, c in enumerate(self.coeffs) if c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = CountingPolynomial([other])
        return isinstance(other, CountingPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"CountingPolynomial({list(self.coeffs)})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
                coef = str(c) if (c != 1 or k == 0) else ""
                parts.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        return " + ".join(parts) or "0"


def lagrange(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (low first) of the unique polynomial through ``points``."""
    n = len(points)
    out = [Fraction(0)] * n
    for k, (xk, yk) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, (xm, _) in enumerate(points):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xm * basis[t + 1]
            denom *= xk - xm
        for t in range(n):
            out[t] += yk * basis[t] / denom
    return out


def fit(points: Sequence[tuple[int, int]]) -> CountingPolynomial:
    coeffs = lagrange(points)
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationError(f"non-integral interpolant {coeffs}")
    return CountingPolynomial(int(c) for c in coeffs)


def interpolate_count(counter: Callable[[int], int], degree_bound: int,
                      points: Sequence[int] | None = None, holdout: int | None = None,
                      margin: int = SAFETY_MARGIN) -> CountingPolynomial:
    """Interpolate at ``degree_bound + margin + 1`` prime powers and verify at one more.

    ``points``, when given, fixes the sample fields exactly (the margin is then
    the caller's business); the held-out field defaults to the next unused prime power.
    """
    if points is None:
        need = degree_bound + margin + 1
        if need + 1 > len(PRIME_POWERS):
            raise InterpolationError("degree bound too large for the bundled sample fields")
        points = PRIME_POWERS[:need]
    points = list(points)
    if holdout is None:
        holdout = next(q for q in PRIME_POWERS if q not in points)
    poly = fit([(q, counter(q)) for q in points])
    if poly.degree > degree_bound + margin:
        raise InterpolationError(f"degree {poly.degree} exceeds the bound {degree_bound}")
    observed = counter(holdout)
    if poly(holdout) != observed:
        raise InterpolationError(f"interpolant {poly} gives {poly(holdout)} at q={holdout}, observed {observed}")
    return poly
