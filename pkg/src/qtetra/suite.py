"""Verification suites: every identity check, with a machine-readable report."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Callable, Sequence

from .cartan import CartanData, ValuedQuiver, positive_roots
from .cluster import CharacterContext, Seed, cluster_character, laurent_check, mutate, noninitial_variables_via_characters
from .cluster import cluster_character_symbolic, transported_psi_tilde
from .coeff import LaurentScalar, ScalarFraction, qbinom, qbinom_bar, qfact, qfact_bar
from .feigin import psi_bar
from .finrep import classes_up_to, context, flag_counts, parse_rep, rep_classes
from .hall import (
    HallElt,
    SymbolicRep,
    dual_comul,
    dual_mul,
    flag_degree_bound,
    hall_comul,
    hall_mul,
    omega,
    omega_symbolic,
    omega_tensor,
    psi_tilde,
    psi_tilde_symbolic,
)
from .interp import InterpolationError, interpolate_count
from .serialize import load_example
from .shuffle import ShuffleElt, comult, divided_power, serre_check, shuffle_mul

SUITES = (
    "coeff",
    "serre",
    "shuffle",
    "feigin",
    "hall-assoc",
    "green",
    "omega-hom",
    "tetrahedron",
    "counting",
    "cluster",
    "laurent",
    "klr-example",
)

# suites that do not depend on a quiver run once
_QUIVERLESS = {"coeff"}

DEFAULT_QUIVERS = {
    "coeff": ("a2",),
    "serre": ("a2", "b2", "g2"),
    "shuffle": ("a2", "a3", "b2", "g2", "kronecker"),
    "feigin": ("a2", "b2"),
    "hall-assoc": ("a2", "b2"),
    "green": ("a2", "b2"),
    "omega-hom": ("a2",),
    "tetrahedron": ("a2", "b2"),
    "counting": ("a2", "a3", "b2", "g2", "kronecker"),
    "cluster": ("a2", "b2"),
    "laurent": ("a2", "b2", "g2", "kronecker"),
    "klr-example": ("a2", "b2"),
}

# fields per quiver for the fixed-q Hall suites
HALL_FIELDS = {"a2": (2, 3), "b2": (2,)}


class Outcome:
    """Counts checks and collects failure messages."""

    def __init__(self):
        self.checks = 0
        self.failures: list[str] = []
        self.details: dict = {}

    def check(self, ok: bool, message: str | Callable[[], str]):
        self.checks += 1
        if not ok:
            self.failures.append(message() if callable(message) else message)


# ---------------------------------------------------------------------------
# q-combinatorics


def _binom_by_division(n: int, k: int, d: int) -> ScalarFraction:
    return ScalarFraction(qfact(n, d)) / ScalarFraction(qfact(k, d) * qfact(n - k, d))


def suite_coeff(ex, quiver, rng, out: Outcome, nmax: int = 8, ds: Sequence[int] = (1, 2, 3)):
    """The binomial identities in ``q^d`` and their bar-invariant versions, exactly."""
    for d in ds:
        for n in range(nmax + 1):
            for k in range(n + 1):
                out.check(ScalarFraction(qbinom(n, k, d)) == _binom_by_division(n, k, d),
                          f"definition d={d} n={n} k={k}")
                out.check(qbinom_bar(n, k, d).is_bar_invariant(), f"bar invariance d={d} n={n} k={k}")
                if n == 0:
                    continue
                # Pascal, both forms; q^d = v^{2d} is half-exponent 4d
                lhs = qbinom(n, k, d)
                out.check(lhs == qbinom(n - 1, k - 1, d) + qbinom(n - 1, k, d).vshift(4 * d * k),
                          f"pascal-1 d={d} n={n} k={k}")
                out.check(lhs == qbinom(n - 1, k - 1, d).vshift(4 * d * (n - k)) + qbinom(n - 1, k, d),
                          f"pascal-2 d={d} n={n} k={k}")
                lb = qbinom_bar(n, k, d)
                out.check(lb == qbinom_bar(n - 1, k - 1, d).vshift(2 * d * (n - k)) + qbinom_bar(n - 1, k, d).vshift(-2 * d * k),
                          f"bar pascal-1 d={d} n={n} k={k}")
                out.check(lb == qbinom_bar(n - 1, k - 1, d).vshift(2 * d * (k - n)) + qbinom_bar(n - 1, k, d).vshift(2 * d * k),
                          f"bar pascal-2 d={d} n={n} k={k}")
            if n > 0:
                # q^{-nk + k(k+1)/2} has half-exponent d(-4nk + 2k(k+1))
                row = LaurentScalar()
                row_bar = LaurentScalar()
                for k in range(n + 1):
                    sign = -1 if k % 2 else 1
                    row = row + qbinom(n, k, d).vshift(d * (-4 * n * k + 2 * k * (k + 1))) * sign
                    row_bar = row_bar + qbinom_bar(n, k, d).vshift(2 * d * (k - n * k)) * sign
                out.check(row.is_zero(), f"row identity d={d} n={n}")
                out.check(row_bar.is_zero(), f"bar row identity d={d} n={n}")
        for m in range(nmax + 1):
            for n in range(nmax + 1):
                for k in range(min(m + n, nmax) + 1):
                    rhs = LaurentScalar()
                    rhs_bar = LaurentScalar()
                    for r in range(k + 1):
                        s = k - r
                        rhs = rhs + (qbinom(m, r, d) * qbinom(n, s, d)).vshift(4 * d * r * (n - s))
                        rhs_bar = rhs_bar + (qbinom_bar(m, r, d) * qbinom_bar(n, s, d)).vshift(
                            2 * d * (r * (n - s) - s * (m - r)))
                    out.check(qbinom(m + n, k, d) == rhs, f"subspace d={d} m={m} n={n} k={k}")
                    out.check(qbinom_bar(m + n, k, d) == rhs_bar, f"bar subspace d={d} m={m} n={n} k={k}")


# ---------------------------------------------------------------------------
# shuffle algebra


def suite_serre(ex, quiver, rng, out: Outcome):
    c = quiver.cartan_data
    for i, j in product(c.labels, repeat=2):
        if i != j:
            out.check(serre_check(c, i, j).is_zero(), f"Serre relation ({i},{j}) a_ij={c.a(i, j)}")
    out.details["cartan"] = [list(r) for r in c.cartan]


def _random_word(rng, labels, max_len: int = 4):
    return tuple(rng.choice(labels) for _ in range(rng.randint(0, max_len)))


def suite_shuffle(ex, quiver, rng, out: Outcome, samples: int = 200, rmax: int = 8):
    c = quiver.cartan_data
    labels = list(c.labels)
    start = time.perf_counter()
    for _ in range(samples):
        a, b, d = (ShuffleElt.word(c, _random_word(rng, labels)) for _ in range(3))
        out.check(shuffle_mul(shuffle_mul(a, b), d) == shuffle_mul(a, shuffle_mul(b, d)),
                  lambda: f"associativity {list(a.terms)} {list(b.terms)} {list(d.terms)}")
        out.check(comult(shuffle_mul(a, b)) == comult(a) * comult(b),
                  lambda: f"bialgebra {list(a.terms)} {list(b.terms)}")
    out.details["associativity"] = out.details["bialgebra"] = samples
    out.details["seconds_bialgebra"] = round(time.perf_counter() - start, 3)
    start = time.perf_counter()
    count = 0
    for i in labels:
        di = c.dl(i)
        for r in range(rmax + 1):
            for s in range(rmax + 1 - r):
                lhs = shuffle_mul(divided_power(c, i, r), divided_power(c, i, s))
                rhs = divided_power(c, i, r + s).scale(qbinom_bar(r + s, r, di))
                out.check(lhs == rhs, f"divided powers i={i} r={r} s={s}")
                count += 1
    out.details["divided_powers"] = count
    out.details["seconds_divided_powers"] = round(time.perf_counter() - start, 3)


def _random_shuffle_elt(rng, c: CartanData, labels, max_len: int = 4) -> ShuffleElt:
    terms = {}
    for _ in range(rng.randint(1, 2)):
        w = _random_word(rng, labels, max_len)
        terms[w] = LaurentScalar({rng.randint(-2, 2): rng.choice((-2, -1, 1, 2))})
    return ShuffleElt(c, terms)


def suite_feigin(ex, quiver, rng, out: Outcome, samples: int = 100):
    c = quiver.cartan_data
    labels = list(c.labels)
    for word in ex["words"]:
        word = tuple(word)
        for _ in range(samples):
            x = _random_shuffle_elt(rng, c, labels)
            y = _random_shuffle_elt(rng, c, labels)
            out.check(psi_bar(c, word, x * y) == psi_bar(c, word, x) * psi_bar(c, word, y),
                      lambda: f"Psi-bar homomorphism word={word} x={x} y={y}")


# ---------------------------------------------------------------------------
# Hall algebra


def _classes(ex, quiver, q, max_fq_dim):
    return classes_up_to(context(quiver, q), max_fq_dim)


def _fq(cls) -> int:
    return sum(d * x for d, x in zip(cls.ctx.quiver.d, cls.dims))


def suite_hall_assoc(ex, quiver, rng, out: Outcome, max_fq_dim: int = 4):
    for q in HALL_FIELDS.get(ex["name"], (2,)):
        classes = _classes(ex, quiver, q, max_fq_dim)
        elts = {k: HallElt.of(k) for k in classes}
        for x, y, z in product(classes, repeat=3):
            if _fq(x) + _fq(y) + _fq(z) > max_fq_dim:
                continue
            lhs = hall_mul(hall_mul(elts[x], elts[y]), elts[z])
            rhs = hall_mul(elts[x], hall_mul(elts[y], elts[z]))
            out.check(lhs == rhs, f"associativity q={q} {x.name} {y.name} {z.name}")
        out.details[f"classes_q{q}"] = len(classes)


def suite_green(ex, quiver, rng, out: Outcome, max_fq_dim: int = 4):
    for q in HALL_FIELDS.get(ex["name"], (2,)):
        classes = _classes(ex, quiver, q, max_fq_dim)
        for x, y in product(classes, repeat=2):
            if _fq(x) + _fq(y) > max_fq_dim:
                continue
            X, Y = HallElt.of(x), HallElt.of(y)
            out.check(hall_comul(hall_mul(X, Y)) == hall_comul(X) * hall_comul(Y),
                      f"Green compatibility q={q} {x.name} {y.name}")


def _small_classes(quiver, q, max_dim):
    ctx = context(quiver, q)
    out = []
    for dims in product(*(range(max_dim + 1) for _ in range(quiver.n))):
        if sum(dims) <= max_dim:
            out.extend(rep_classes(ctx, dims))
    return out


def suite_omega_hom(ex, quiver, rng, out: Outcome, max_dim: int = 3):
    for q in HALL_FIELDS.get(ex["name"], (2,)):
        classes = _small_classes(quiver, q, max_dim)
        for x, y in product(classes, repeat=2):
            if sum(x.dims) + sum(y.dims) > max_dim:
                continue
            X, Y = HallElt.of(x, "dual"), HallElt.of(y, "dual")
            lhs = omega(dual_mul(X, Y))
            rhs = shuffle_mul(omega(x), omega(y))
            out.check(lhs == rhs, f"Omega(xy) q={q} {x.name} {y.name}")
        for x in classes:
            lhs = comult(omega(x))
            rhs = omega_tensor(dual_comul(HallElt.of(x, "dual")))
            out.check(lhs == rhs, f"Delta Omega q={q} {x.name}")


def suite_tetrahedron(ex, quiver, rng, out: Outcome, max_dim: int = 3):
    c = quiver.cartan_data
    for word in ex["words"]:
        word = tuple(word)
        for q in (2, 3):
            for x in _small_classes(quiver, q, max_dim):
                out.check(psi_tilde(word, x) == psi_bar(c, word, omega(x)),
                          f"fixed q={q} word={list(word)} {x.name}")
        names = sorted({x.name for x in _small_classes(quiver, 2, max_dim)})
        for name in names:
            rep = SymbolicRep(quiver, name)
            sym = psi_tilde_symbolic(word, rep)
            out.check(sym == psi_bar(c, word, omega_symbolic(rep)), f"symbolic word={list(word)} {name}")
            for q in (2, 3):
                out.check(sym.specialize(q) == psi_tilde(word, rep.realize(q)),
                          f"symbolic specializes q={q} {name}")


# ---------------------------------------------------------------------------
# counting polynomials


def counting_targets(ex, quiver, max_degree: int | None = None) -> list[str]:
    """Bundled rigid representations, optionally only those whose flag counts have degree
    at most ``max_degree``."""
    out = []
    for name in ex["rigid"]:
        dims = parse_rep(context(quiver, 2), name).dims
        if max_degree is None or flag_degree_bound(quiver, dims) <= max_degree:
            out.append(name)
    return out


def suite_counting(ex, quiver, rng, out: Outcome, first=(2, 3, 5), second=(7, 11, 13), holdout: int = 17,
                   max_degree: int | None = None):
    """Interpolate every flag count of every bundled rigid representation from ``first`` and
    from ``second``; both must agree and match the count at ``holdout``.

    Three sample fields determine polynomials of degree at most 2 only, so representations
    with larger flag counts fail here unless ``max_degree`` excludes them.
    """
    names = counting_targets(ex, quiver, max_degree)
    bounds = {}
    for name in names:
        rep = SymbolicRep(quiver, name)
        bounds[name] = flag_degree_bound(quiver, rep.dims())
        tables = {}

        def counts(q):
            if q not in tables:
                tables[q] = flag_counts(rep.realize(q))
            return tables[q]

        words = set()
        for q in first + second:
            words |= set(counts(q))
        for w in sorted(words):
            def counter(q, w=w):
                return counts(q).get(w, 0)

            try:
                p1 = interpolate_count(counter, len(first) - 1, points=first, holdout=holdout, margin=0)
                p2 = interpolate_count(counter, len(second) - 1, points=second, holdout=holdout, margin=0)
            except InterpolationError as exc:
                out.check(False, f"{name} word={list(w)}: {exc}")
                continue
            out.check(p1 == p2, f"{name} word={list(w)}: {p1} vs {p2}")
    out.details["representations"] = names
    out.details["degree_bounds"] = bounds


# ---------------------------------------------------------------------------
# cluster algebras


def character_context(ex, quiver) -> CharacterContext:
    conf = ex.get("character", {})
    return CharacterContext(quiver, conf.get("word"), conf.get("Btilde"))


def suite_cluster(ex, quiver, rng, out: Outcome, depth: int | None = None):
    ctx = character_context(ex, quiver)
    report = noninitial_variables_via_characters(ctx, depth)
    out.details["clusters"] = report["clusters"]
    out.details["variables"] = len(report["variables"])
    out.details["matched"] = sorted(v for v in report["variables"].values() if v is not None)
    out.check(bool(report["variables"]), "no non-initial variables found")
    for x, name in report["variables"].items():
        out.check(name is not None, f"unmatched variable {x}")
    # transport of the tetrahedron through P_i = T_Lambda
    for root in positive_roots(quiver.cartan_data):
        name = "M(" + ",".join(map(str, root)) + ")"
        rep = SymbolicRep(quiver, name)
        out.check(cluster_character_symbolic(ctx, rep) == transported_psi_tilde(ctx, rep), f"transport {name}")
        for q in (2, 3):
            V = rep.realize(q)
            out.check(cluster_character(ctx, V) == transported_psi_tilde(ctx, V), f"transport q={q} {name}")


def suite_laurent(ex, quiver, rng, out: Outcome, length: int = 8):
    seed = Seed.from_json(ex["seed"])
    # depth-first over all sequences, sharing prefixes
    stack = [(seed, ())]
    while stack:
        s, seq = stack.pop()
        out.check(all(x.is_laurent() for x in s.cluster), f"non-Laurent variable after {list(seq)}")
        if len(seq) < length:
            for k in s.I:
                stack.append((mutate(s, k), seq + (k,)))
    for k in seed.I:
        back = mutate(mutate(seed, k), k)
        out.check(back.cluster == seed.cluster and back.btilde == seed.btilde, f"involution k={k}")
    out.check(laurent_check(seed, []), "empty sequence")


def suite_klr(ex, quiver, rng, out: Outcome, q_values=(2, 3)):
    """``Omega([I_j]*) = [-a_ij]_i! (i^{-a_ij}, j)`` and ``Omega([P_j]*) = [-a_ij]_i! (j, i^{-a_ij})``
    for every arrow ``i -> j`` (``P_j`` taken on the opposite quiver)."""
    c = quiver.cartan_data
    opp = quiver.opposite()
    results = {}
    for i, j, _ in quiver.arrows:
        r = -c.a(i, j)
        coef = qfact_bar(r, c.dl(i))
        want_i = ShuffleElt(c, {(i,) * r + (j,): coef})
        want_p = ShuffleElt(c, {(j,) + (i,) * r: coef})
        for q in q_values:
            I = parse_rep(context(quiver, q), f"I{j}")
            P = parse_rep(context(opp, q), f"P{j}")
            out.check(omega(I) == want_i.specialize(q), f"Omega(I{j}) q={q}")
            out.check(omega(P) == want_p.specialize(q), f"Omega(P{j}) on the opposite quiver q={q}")
        sym_i = omega_symbolic(SymbolicRep(quiver, f"I{j}"))
        sym_p = omega_symbolic(SymbolicRep(opp, f"P{j}"))
        out.check(sym_i == want_i, f"symbolic Omega(I{j})")
        out.check(sym_p == want_p, f"symbolic Omega(P{j})")
        results[f"I{j}"] = str(sym_i)
        results[f"P{j}"] = str(sym_p)
    out.details["omega"] = results


_RUNNERS = {
    "coeff": suite_coeff,
    "serre": suite_serre,
    "shuffle": suite_shuffle,
    "feigin": suite_feigin,
    "hall-assoc": suite_hall_assoc,
    "green": suite_green,
    "omega-hom": suite_omega_hom,
    "tetrahedron": suite_tetrahedron,
    "counting": suite_counting,
    "cluster": suite_cluster,
    "laurent": suite_laurent,
    "klr-example": suite_klr,
}


def run_one(suite: str, quiver_name: str | None, seed_data=None, rng_seed: int = 0) -> dict:
    """Run one suite on one bundled example and return its report entry."""
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r} (have {', '.join(SUITES)})")
    ex = load_example(quiver_name or "a2", seed_data)
    quiver = ValuedQuiver.from_json(ex["quiver"])
    out = Outcome()
    start = time.perf_counter()
    error = None
    try:
        _RUNNERS[suite](ex, quiver, random.Random(rng_seed), out)
    except Exception as exc:  # a crash is a failed check, reported with its message
        error = f"{type(exc).__name__}: {exc}"
        out.failures.append(error)
    elapsed = time.perf_counter() - start
    return {
        "suite": suite,
        "quiver": None if suite in _QUIVERLESS else ex["name"],
        "status": "pass" if not out.failures else "fail",
        "checks": out.checks,
        "failures": out.failures[:20],
        "failure_count": len(out.failures),
        "seconds": round(elapsed, 3),
        "details": out.details,
    }


def _run_packed(args):
    return run_one(*args)


def run_suite(suites: Sequence[str] | None = None, quivers: Sequence[str] | None = None,
              seed_data=None, jobs: int = 1, rng_seed: int = 0) -> dict:
    """Run the selected suites (all by default) and return ``{"status", "results"}``.

    ``quivers`` overrides the default examples of every suite.  With ``jobs > 1``
    the (suite, example) tasks run in worker processes; results keep task order.
    """
    suites = list(suites or SUITES)
    for s in suites:
        if s not in _RUNNERS:
            raise ValueError(f"unknown suite {s!r} (have {', '.join(SUITES)})")
    tasks = []
    for s in suites:
        names = [None] if s in _QUIVERLESS else list(quivers or DEFAULT_QUIVERS[s])
        for name in names:
            tasks.append((s, name, seed_data, rng_seed))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_packed, tasks))
    else:
        results = [run_one(*t) for t in tasks]
    status = "pass" if all(r["status"] == "pass" for r in results) else "fail"
    return {"status": status, "results": results}
