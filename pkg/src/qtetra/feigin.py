"""Feigin homomorphisms from the shuffle algebra to quasi-polynomial rings."""
from __future__ import annotations

from typing import Iterable, Sequence

from .cartan import CartanData
from .coeff import ONE, LaurentScalar, ScalarFraction, SqrtQScalar, qfact_bar, specialize
from .qtorus import CommutationForm, TorusElt
from .shuffle import ShuffleElt, divided_power, shuffle_mul


def decompositions(i: Sequence, j: Sequence) -> list[tuple[int, ...]]:
    """All ``a`` with ``i^a == j`` (runs of ``i_k`` of length ``a_k`` concatenated)."""
    m, n = len(i), len(j)
    out: list[tuple[int, ...]] = []
    a = [0] * m

    def walk(k: int, pos: int):
        if k == m:
            if pos == n:
                out.append(tuple(a))
            return
        run = 0
        while True:
            a[k] = run
            walk(k + 1, pos + run)
            if pos + run < n and j[pos + run] == i[k]:
                run += 1
            else:
                break
        a[k] = 0

    walk(0, 0)
    return out


def divide_by_laurent(coef, x: LaurentScalar):
    """``coef / x`` in the coefficient's own ring."""
    if x == ONE:
        return coef
    if isinstance(coef, SqrtQScalar):
        return coef / specialize(x, coef.q)
    return coef / ScalarFraction(x)


def psi_bar(cartan: CartanData, i: Sequence, x: ShuffleElt) -> TorusElt:
    """``j -> sum_{i^a = j} t^a / prod_k [a_k]_{i_k}!`` extended linearly."""
    i = tuple(i)
    form = CommutationForm.from_word(cartan, i)
    out: dict = {}
    for w, coef in x.terms.items():
        for a in decompositions(i, w):
            denom = ONE
            for k, ak in enumerate(a):
                if ak > 1:
                    denom = denom * qfact_bar(ak, cartan.dl(i[k]))
            val = divide_by_laurent(coef, denom)
            out[a] = out[a] + val if a in out else val
    return TorusElt(form, out)


Factor = tuple  # (vertex, r) meaning x_vertex^{[r]}


def kappa(cartan: CartanData, expression) -> ShuffleElt:
    """Image of a product of divided powers ``x_i^{[r]}``, or a sum of such terms.

    ``expression`` is either a list of ``(vertex, r)`` factors or a list of
    ``(coefficient, factors)`` pairs.
    """
    if expression and isinstance(expression[0], tuple) and len(expression[0]) == 2 and isinstance(expression[0][1], list):
        total = ShuffleElt.zero(cartan)
        for coef, factors in expression:
            total = total + kappa(cartan, factors).scale(coef)
        return total
    out = ShuffleElt.unit(cartan)
    for vertex, r in expression:
        out = shuffle_mul(out, divided_power(cartan, vertex, r))
    return out


def psi_generator(cartan: CartanData, i: Sequence, vertex, r: int = 1) -> TorusElt:
    """The classical Feigin image of ``x_vertex^{[r]}``: ``(sum_{i_k = vertex} t_k)^r / [r]!``."""
    form = CommutationForm.from_word(cartan, tuple(i))
    s = TorusElt(form)
    for k, letter in enumerate(i):
        if letter == vertex:
            s = s + TorusElt.gen(form, k)
    out = TorusElt.one(form)
    for _ in range(r):
        out = out * s
    denom = ScalarFraction(qfact_bar(r, cartan.dl(vertex)))
    return out.map_coefficients(lambda c: c / denom)


def psi_classical(cartan: CartanData, i: Sequence, factors: Iterable[Factor]) -> TorusElt:
    """The classical Feigin map on a product of divided powers, computed in ``P_i``."""
    form = CommutationForm.from_word(cartan, tuple(i))
    out = TorusElt.one(form)
    for vertex, r in factors:
        out = out * psi_generator(cartan, i, vertex, r)
    return out
