"""Cartan data, valued quivers and the bilinear forms on the root lattice.

Vertices carry user-facing labels (usually ``1..n``); dimension vectors are
plain integer tuples in vertex order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Hashable, Iterable, Sequence

DimVector = tuple[int, ...]


@dataclass(frozen=True)
class CartanData:
    labels: tuple
    cartan: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.cartan) != n or any(len(r) != n for r in self.cartan) or len(self.d) != n:
            raise ValueError("Cartan matrix and symmetrizers must match the index set")
        if len(set(self.labels)) != n:
            raise ValueError("duplicate vertex labels")
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise ValueError("diagonal Cartan entries must be 2")
            if self.d[i] <= 0:
                raise ValueError("symmetrizers must be positive")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be nonpositive")
                if self.d[i] * self.cartan[i][j] != self.d[j] * self.cartan[j][i]:
                    raise ValueError(f"not symmetrizable at ({self.labels[i]},{self.labels[j]})")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown vertex {label!r}") from None

    def a(self, i, j) -> int:
        """Cartan entry for vertex labels ``i, j``."""
        return self.cartan[self.index(i)][self.index(j)]

    def dl(self, i) -> int:
        return self.d[self.index(i)]

    def simple(self, i) -> DimVector:
        k = self.index(i)
        return tuple(1 if t == k else 0 for t in range(self.n))

    def word_degree(self, word: Iterable) -> DimVector:
        out = [0] * self.n
        for letter in word:
            out[self.index(letter)] += 1
        return tuple(out)

    def sym_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.d[i] * self.cartan[i][j] for j in range(self.n)) for i in range(self.n))


def sym_form(c: CartanData, a: Sequence[int], b: Sequence[int]) -> int:
    """``(a, b)`` with ``(alpha_i, alpha_j) = d_i a_ij``."""
    total = 0
    for i, x in enumerate(a):
        if not x:
            continue
        row = c.cartan[i]
        for j, y in enumerate(b):
            if y:
                total += x * y * c.d[i] * row[j]
    return total


def simple_reflection(c: CartanData, i, a: Sequence[int]) -> DimVector:
    k = c.index(i)
    # (alpha_k^vee, a) = (alpha_k, a) / d_k = sum_j a_kj a_j
    pairing = sum(c.cartan[k][j] * a[j] for j in range(c.n))
    out = list(a)
    out[k] -= pairing
    return tuple(out)


def positive_roots(c: CartanData, limit: int = 200) -> list[DimVector]:
    """Real positive roots reachable from simple roots by reflections.

    Raises if more than ``limit`` turn up, which signals infinite type.
    """
    found = {c.simple(i) for i in c.labels}
    frontier = list(found)
    while frontier:
        nxt = []
        for r in frontier:
            for i in c.labels:
                s = simple_reflection(c, i, r)
                if all(x >= 0 for x in s) and any(s) and s not in found:
                    found.add(s)
                    nxt.append(s)
                    if len(found) > limit:
                        raise ValueError("root system appears to be infinite")
        frontier = nxt
    return sorted(found, key=lambda r: (sum(r), r))


@dataclass(frozen=True)
class ValuedQuiver:
    """An acyclic valued quiver.  ``arrows`` holds ``(i, j, n_ij)`` label triples."""

    labels: tuple
    d: tuple[int, ...]
    arrows: tuple[tuple, ...]
    cartan_data: CartanData = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(self.d) != n:
            raise ValueError("one symmetrizer per vertex is required")
        idx = {lab: k for k, lab in enumerate(self.labels)}
        merged: dict[tuple[int, int], int] = {}
        for arrow in self.arrows:
            i, j, m = arrow
            if i not in idx or j not in idx:
                raise ValueError(f"arrow {arrow} uses an unknown vertex")
            if i == j:
                raise ValueError("loops are not allowed")
            if m <= 0:
                raise ValueError("arrow multiplicities must be positive")
            key = (idx[i], idx[j])
            if (key[1], key[0]) in merged:
                raise ValueError("arrows between two vertices must all point the same way")
            merged[key] = merged.get(key, 0) + m
        object.__setattr__(self, "arrows", tuple((self.labels[a], self.labels[b], m) for (a, b), m in sorted(merged.items())))
        # b_ij = n_ij d_j / gcd(d_i, d_j) for i -> j; a_ij = -|b_ij|
        cart = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for (a, b), m in merged.items():
            g = gcd(self.d[a], self.d[b])
            cart[a][b] = -m * self.d[b] // g
            cart[b][a] = -m * self.d[a] // g
        object.__setattr__(self, "cartan_data", CartanData(tuple(self.labels), tuple(map(tuple, cart)), tuple(self.d)))
        self.topological_order()  # raises on cycles

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self.cartan_data.index(label)

    def arrow_indices(self) -> list[tuple[int, int, int]]:
        return [(self.index(i), self.index(j), m) for i, j, m in self.arrows]

    def exchange_matrix(self) -> tuple[tuple[int, ...], ...]:
        """The skew-symmetrizable ``B`` with ``b_ij = n_ij d_j / gcd`` for ``i -> j``."""
        n = self.n
        b = [[0] * n for _ in range(n)]
        for i, j, m in self.arrow_indices():
            g = gcd(self.d[i], self.d[j])
            b[i][j] = m * self.d[j] // g
            b[j][i] = -m * self.d[i] // g
        return tuple(map(tuple, b))

    def topological_order(self) -> list[int]:
        """Vertex indices with every arrow going from earlier to later."""
        n = self.n
        indeg = [0] * n
        succ: list[list[int]] = [[] for _ in range(n)]
        for i, j, _ in self.arrow_indices():
            indeg[j] += 1
            succ[i].append(j)
        ready = [k for k in range(n) if indeg[k] == 0]
        order = []
        while ready:
            k = ready.pop(0)
            order.append(k)
            for j in succ[k]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
                    ready.sort()
        if len(order) != n:
            raise ValueError("quiver has an oriented cycle")
        return order

    def source_adapted_word(self) -> tuple:
        """A complete source adapted sequence: sources come first."""
        return tuple(self.labels[k] for k in self.topological_order())

    def opposite(self) -> "ValuedQuiver":
        return ValuedQuiver(self.labels, self.d, tuple((j, i, m) for i, j, m in self.arrows))

    def simple(self, i) -> DimVector:
        return self.cartan_data.simple(i)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.labels),
            "d": list(self.d),
            "arrows": [[i, j, m] for i, j, m in self.arrows],
            "cartan": [list(r) for r in self.cartan_data.cartan],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ValuedQuiver":
        arrows = []
        for entry in data.get("arrows", []):
            if len(entry) == 2:
                arrows.append((entry[0], entry[1], 1))
            else:
                arrows.append(tuple(entry))
        return cls(tuple(data["vertices"]), tuple(data["d"]), tuple(arrows))


def euler_form(quiver: ValuedQuiver, a: Sequence[int], b: Sequence[int]) -> int:
    """Euler–Ringel form: ``<alpha_i, alpha_i> = d_i`` and ``-[d_i b_ij]_+`` off the diagonal."""
    bmat = quiver.exchange_matrix()
    total = 0
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            if i == j:
                total += x * y * quiver.d[i]
            else:
                total -= x * y * max(quiver.d[i] * bmat[i][j], 0)
    return total


def star(quiver: ValuedQuiver, v: Sequence[int]) -> DimVector:
    """``*v``: coordinate ``i`` is ``<alpha_i, v> / d_i``."""
    out = []
    for i in range(quiver.n):
        val = euler_form(quiver, quiver.simple(quiver.labels[i]), v)
        if val % quiver.d[i]:
            raise ArithmeticError("Euler form row not divisible by the symmetrizer")
        out.append(val // quiver.d[i])
    return tuple(out)
