"""Command-line interface.

Exit codes: 0 success, 1 a check failed (or a requested object does not
exist, e.g. no rigid representation), 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cartan import ValuedQuiver
from .cluster import (
    CharacterContext,
    Seed,
    cluster_character,
    cluster_character_symbolic,
    laurent_check,
    mutate,
    noninitial_variables_via_characters,
)
from .feigin import psi_bar
from .finrep import NoRigidError, QuiverRep, context, hom_dim, is_rigid, parse_rep
from .hall import (
    HallElt,
    SymbolicRep,
    delta_comul,
    delta_mul,
    dual_comul,
    dual_mul,
    hall_comul,
    hall_mul,
    omega,
    omega_symbolic,
    psi_tilde,
    psi_tilde_symbolic,
)
from .interp import InterpolationError
from .serialize import dumps, load_example, load_json, load_quiver
from .shuffle import ShuffleElt, shuffle_mul
from .suite import SUITES, run_suite


class InputError(Exception):
    """Malformed or inconsistent command-line input."""


class CheckFailure(Exception):
    """A requested check or construction failed."""


# ---------------------------------------------------------------------------
# argument helpers


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise InputError(f"expected a comma separated list of integers, got {text!r}") from None


def _word(quiver: ValuedQuiver, text: str) -> tuple:
    """A word of vertex labels; integer labels are converted when the quiver uses them."""
    letters = [t for t in text.replace(" ", "").split(",") if t != ""]
    out = []
    for t in letters:
        match = [lab for lab in quiver.labels if str(lab) == t]
        if not match:
            raise InputError(f"unknown vertex {t!r} in word {text!r}")
        out.append(match[0])
    return tuple(out)


def _quiver(args) -> ValuedQuiver:
    try:
        return load_quiver(args.quiver, args.seed_data)
    except (OSError, KeyError, json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"cannot load quiver {args.quiver!r}: {exc}") from None


def _example(args) -> dict | None:
    """The bundled example behind ``--quiver`` (``None`` for a plain file)."""
    if Path(args.quiver).suffix == ".json" or Path(args.quiver).exists():
        data = load_json(args.quiver)
        return data if "quiver" in data else None
    return load_example(args.quiver, args.seed_data)


def _rep_name(args) -> str:
    given = [x for x in (args.rep, args.dim, args.random_rigid, getattr(args, "rep_file", None)) if x]
    if len(given) != 1:
        raise InputError("give exactly one of --rep, --dim, --random-rigid, --rep-file")
    if args.rep:
        return args.rep
    dims = args.dim or args.random_rigid
    return "R(" + ",".join(map(str, _ints(dims))) + ")"


def _fixed_rep(args, quiver: ValuedQuiver) -> QuiverRep:
    ctx = context(quiver, args.q)
    if getattr(args, "rep_file", None):
        return QuiverRep.from_json(ctx, load_json(args.rep_file))
    return parse_rep(ctx, _rep_name(args))


def _shuffle_input(quiver: ValuedQuiver, text: str) -> ShuffleElt:
    c = quiver.cartan_data
    path = Path(text)
    if path.suffix == ".json":
        return ShuffleElt.from_json(c, load_json(path))
    return ShuffleElt.word(c, _word(quiver, text) if text not in ("", "()") else ())


def _emit(obj, args):
    text = dumps(obj)
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    suites = [s.strip() for s in args.suite.split(",")] if args.suite else None
    quivers = [q.strip() for q in args.quiver.split(",")] if args.quiver else None
    try:
        report = run_suite(suites, quivers, args.seed_data, jobs=args.jobs, rng_seed=args.rng_seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for r in report["results"]:
        where = f" [{r['quiver']}]" if r["quiver"] else ""
        line = f"{r['status'].upper():4} {r['suite']}{where}: {r['checks']} checks, {r['seconds']:.2f}s"
        print(line, file=sys.stderr)
        for f in r["failures"]:
            print(f"     {f}", file=sys.stderr)
    _emit(report, args)
    return 0 if report["status"] == "pass" else 1


def cmd_shuffle_mul(args) -> int:
    quiver = _quiver(args)
    x = _shuffle_input(quiver, args.left)
    y = _shuffle_input(quiver, args.right)
    _emit(shuffle_mul(x, y).to_json(), args)
    return 0


def cmd_feigin(args) -> int:
    quiver = _quiver(args)
    word = _word(quiver, args.word)
    x = _shuffle_input(quiver, args.input)
    _emit(psi_bar(quiver.cartan_data, word, x).to_json(), args)
    return 0


def _symbolic_rep(args, quiver) -> SymbolicRep:
    if getattr(args, "rep_file", None):
        raise InputError("--symbolic needs a named representation or a dimension vector")
    rep = SymbolicRep(quiver, _rep_name(args))
    rep.dims()  # surfaces parse errors before any interpolation
    return rep


def cmd_omega(args) -> int:
    quiver = _quiver(args)
    if args.symbolic:
        x = omega_symbolic(_symbolic_rep(args, quiver))
    else:
        x = omega(_fixed_rep(args, quiver))
    _emit(x.to_json(), args)
    return 0


def cmd_psi_tilde(args) -> int:
    quiver = _quiver(args)
    word = _word(quiver, args.word)
    if args.symbolic:
        x = psi_tilde_symbolic(word, _symbolic_rep(args, quiver))
    else:
        x = psi_tilde(word, _fixed_rep(args, quiver))
    _emit(x.to_json(), args)
    return 0


def cmd_rep(args) -> int:
    quiver = _quiver(args)
    V = _fixed_rep(args, quiver)
    out = V.to_json()
    out["rigid"] = is_rigid(V)
    out["end_dim"] = hom_dim(V, V)
    if args.gfield:
        out = dict(V.to_gfield_json(), rigid=out["rigid"], end_dim=out["end_dim"])
    _emit(out, args)
    return 0


def cmd_hall(args) -> int:
    quiver = _quiver(args)
    ctx = context(quiver, args.q)
    left = HallElt.of(parse_rep(ctx, args.left), args.basis)
    if args.op == "mul":
        if not args.right:
            raise InputError("hall mul needs --right")
        right = HallElt.of(parse_rep(ctx, args.right), args.basis)
        fn = {"iso": hall_mul, "dual": dual_mul, "delta": delta_mul}[args.basis]
        _emit(fn(left, right).to_json(), args)
    else:
        fn = {"iso": hall_comul, "dual": dual_comul, "delta": delta_comul}[args.basis]
        t = fn(left)
        terms = [
            {"left": a.name, "right": b.name, "coef": c.to_json()}
            for (a, b), c in sorted(t.terms.items(), key=lambda kv: kv[0])
        ]
        _emit({"basis": args.basis, "q": args.q, "terms": terms}, args)
    return 0


def _character_context(args, quiver) -> CharacterContext:
    word = _word(quiver, args.word) if args.word else None
    btilde = None
    ex = _example(args)
    if ex is not None and "character" in ex and (word is None or list(word) == ex["character"]["word"]):
        btilde = ex["character"].get("Btilde")
    return CharacterContext(quiver, word, btilde)


def cmd_cluster(args) -> int:
    if args.op == "mutate":
        if not args.seed:
            raise InputError("cluster mutate needs --seed")
        try:
            data = load_json(args.seed)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read seed: {exc}") from None
        seed = Seed.from_json(data.get("seed", data))
        seq = [_label(seed, t) for t in (args.seq or "").split(",") if t.strip()]
        if not laurent_check(seed, seq):
            raise CheckFailure("a mutated variable left the quantum torus")
        for k in seq:
            seed = mutate(seed, k)
        _emit(seed.to_json(), args)
        return 0
    quiver = _quiver(args)
    ctx = _character_context(args, quiver)
    if args.op == "context":
        _emit(ctx.to_json(), args)
        return 0
    if args.op == "character":
        if args.symbolic:
            x = cluster_character_symbolic(ctx, _symbolic_rep(args, quiver))
        else:
            x = cluster_character(ctx, _fixed_rep(args, quiver))
        _emit(x.to_json(), args)
        return 0
    # characters: match mutation-reachable variables against X_V
    report = noninitial_variables_via_characters(ctx, args.depth)
    rows = sorted(
        ({"variable": x.to_json(), "rep": name} for x, name in report["variables"].items()),
        key=lambda r: (r["rep"] is None, r["rep"] or "", json.dumps(r["variable"])),
    )
    unmatched = sum(1 for r in rows if r["rep"] is None)
    _emit({"word": list(ctx.word), "clusters": report["clusters"], "variables": rows, "unmatched": unmatched}, args)
    return 0 if unmatched == 0 else 1


def _label(seed: Seed, text: str):
    t = text.strip()
    for lab in seed.I:
        if str(lab) == t:
            return lab
    raise InputError(f"{t!r} is not a mutable direction (mutable: {list(seed.I)})")


# ---------------------------------------------------------------------------
# parser


def _add_rep_args(p, fixed: bool = True, symbolic: bool = True):
    p.add_argument("--rep", help="representation name, e.g. S1, I2, M(1,1), S1+S2")
    p.add_argument("--dim", help="dimension vector of the rigid representation to use, e.g. 2,1")
    p.add_argument("--random-rigid", metavar="NU", help="first rigid representation of dimension NU in scan order")
    if fixed:
        p.add_argument("--rep-file", help="representation JSON (fixed field only)")
        p.add_argument("--q", type=int, default=2, help="field size for fixed-field mode (default 2)")
    if symbolic:
        p.add_argument("--symbolic", action="store_true", help="interpolate counts as polynomials in q")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed-data", metavar="DIR", help="directory overriding the bundled example JSON files")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verification suites (default 1)")
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="qtetra", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", help=f"comma separated suites (default all): {', '.join(SUITES)}")
    p.add_argument("--quiver", help="comma separated bundled examples, overriding each suite's defaults")
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("shuffle-mul", parents=[common], help="shuffle product of two elements")
    p.add_argument("--quiver", default="a2")
    p.add_argument("--left", required=True, help="word such as 1,2 or a ShuffleElt JSON file")
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_shuffle_mul)

    p = sub.add_parser("feigin", parents=[common], help="image of a shuffle element in P_i")
    p.add_argument("--quiver", default="a2")
    p.add_argument("--word", required=True)
    p.add_argument("--input", required=True, help="ShuffleElt JSON file or a single word")
    p.set_defaults(func=cmd_feigin)

    p = sub.add_parser("omega", parents=[common], help="quantum shuffle character of [V]*")
    p.add_argument("--quiver", required=True)
    _add_rep_args(p)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("psi-tilde", parents=[common], help="quantum i-character of [V]*")
    p.add_argument("--quiver", required=True)
    p.add_argument("--word", required=True)
    _add_rep_args(p)
    p.set_defaults(func=cmd_psi_tilde)

    p = sub.add_parser("rep", parents=[common], help="print a representation as JSON")
    p.add_argument("--quiver", required=True)
    p.add_argument("--gfield", action="store_true", help="arrow matrices over F_(q^g) instead of F_q")
    _add_rep_args(p, symbolic=False)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("hall", parents=[common], help="Hall algebra structure constants (fixed field)")
    p.add_argument("op", choices=("mul", "comul"))
    p.add_argument("--quiver", required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--left", required=True)
    p.add_argument("--right")
    p.add_argument("--basis", choices=("iso", "dual", "delta"), default="iso")
    p.set_defaults(func=cmd_hall)

    p = sub.add_parser("cluster", parents=[common], help="quantum seeds and cluster characters")
    p.add_argument("op", choices=("mutate", "characters", "character", "context"))
    p.add_argument("--seed", help="seed JSON file (mutate)")
    p.add_argument("--seq", help="mutation sequence, e.g. 1,2,1")
    p.add_argument("--quiver", default="a2")
    p.add_argument("--word", help="twice a source adapted sequence (default: the quiver's own)")
    p.add_argument("--depth", type=int, default=None, help="mutation search depth (default: until closed)")
    _add_rep_args(p)
    p.set_defaults(func=cmd_cluster)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (CheckFailure, InterpolationError, NoRigidError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
