"""The twelve acceptance criteria, one test each, each printing a PASS/FAIL line."""
import pytest

from conftest import ACCEPTANCE
from qtetra.suite import run_one

# criterion -> (title, [(suite, example), ...], time budget in seconds)
CRITERIA = {
    1: ("q-binomial identities, n,m,k <= 8, d in 1..3", [("coeff", None)], 1),
    2: ("shuffle Serre relations on A2, B2, G2", [("serre", q) for q in ("a2", "b2", "g2")], 1),
    3: ("shuffle associativity and bialgebra compatibility",
        [("shuffle", q) for q in ("a2", "a3", "b2", "g2", "kronecker")], 10),
    4: ("divided powers multiply by q-binomials, r+s <= 8",
        [("shuffle", q) for q in ("a2", "a3", "b2", "g2", "kronecker")], 10),
    5: ("Feigin map is a homomorphism for i=(1,2,1,2)", [("feigin", q) for q in ("a2", "b2")], 30),
    6: ("Hall associativity and Green compatibility",
        [(s, q) for s in ("hall-assoc", "green") for q in ("a2", "b2")], 300),
    7: ("Omega is a twisted bialgebra map on A2", [("omega-hom", "a2")], 120),
    8: ("tetrahedron Psi~ = Psi-bar o Omega, fixed and symbolic", [("tetrahedron", q) for q in ("a2", "b2")], 120),
    9: ("counting polynomials independent of the sample primes",
        [("counting", q) for q in ("a2", "a3", "b2", "g2", "kronecker")], 60),
    10: ("KLR character example on A2 and B2", [("klr-example", q) for q in ("a2", "b2")], 10),
    11: ("cluster variables are quantum cluster characters", [("cluster", q) for q in ("a2", "b2")], 120),
    12: ("Laurent phenomenon along all sequences of length <= 8",
         [("laurent", q) for q in ("a2", "b2", "g2", "kronecker")], 60),
}

_cache: dict = {}


def _run(suite, example):
    key = (suite, example)
    if key not in _cache:
        _cache[key] = run_one(suite, example)
    return _cache[key]


def _extra(n, results) -> list[str]:
    """Criterion-specific requirements beyond every check passing."""
    problems = []
    if n in (3, 4):
        for r in results:
            assoc = [k for k in ("associativity", "bialgebra") if r["details"].get(k, 0) < 200]
            if n == 3 and assoc:
                problems.append(f"{r['quiver']}: fewer than 200 samples for {assoc}")
            if n == 4 and r["details"].get("divided_powers", 0) == 0:
                problems.append(f"{r['quiver']}: no divided power checks")
    if n == 5:
        problems += [f"{r['quiver']}: {r['checks']} pairs" for r in results if r["checks"] < 100]
    if n == 11:
        for r in results:
            d = r["details"]
            if not d.get("variables") or len(d.get("matched", [])) != d["variables"]:
                problems.append(f"{r['quiver']}: unmatched variables")
    return problems


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    title, tasks, budget = CRITERIA[n]
    results = [_run(s, q) for s, q in tasks]
    # criteria 3 and 4 share the shuffle suite, which times its two parts separately
    field = {3: "seconds_bialgebra", 4: "seconds_divided_powers"}.get(n)
    elapsed = sum(r["details"][field] if field else r["seconds"] for r in results)
    failures = [f"{r['suite']}[{r['quiver']}]: {r['failures'][:3]}" for r in results if r["status"] != "pass"]
    failures += _extra(n, results)
    if elapsed > budget:
        failures.append(f"took {elapsed:.1f}s, budget {budget}s")
    if n == 3:
        checks = sum(r["details"]["associativity"] + r["details"]["bialgebra"] for r in results)
    elif n == 4:
        checks = sum(r["details"]["divided_powers"] for r in results)
    else:
        checks = sum(r["checks"] for r in results)
    line = f"{'PASS' if not failures else 'FAIL'} criterion {n:2d}: {title} ({checks} checks, {elapsed:.2f}s)"
    print(line)
    ACCEPTANCE.append(line)
    assert not failures, failures
