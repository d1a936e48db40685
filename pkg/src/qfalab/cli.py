"""Command-line front end.

Every subcommand prints one canonical JSON document (sorted keys, rationals
as ``"num/den"`` strings).  Exit codes: 0 pass, 2 collision found, 3
inconsistency, 64 unreadable input, 65 domain error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import harness, kronpoly, polypack
from .exactnum import SchemaError, canonical_json, rat_to_float, rat_to_str
from .mmpcp import MmpcpInstance, brute_search
from .qfa import Qfa, RadicalQfa, validate
from .ratmatrix import RatMatrix
from .reduction import claus_trim, compile_ambiguity, compile_injectivity

EXIT_OK = 0
EXIT_COLLISION = 2
EXIT_INCONSISTENT = 3
EXIT_PARSE = 64
EXIT_DOMAIN = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc


def _emit(obj, out: str | None = None) -> None:
    text = canonical_json(obj) + "\n"
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def load_instance(path: str) -> MmpcpInstance:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise SchemaError("instance must be a JSON object")
    try:
        return MmpcpInstance.from_json(data)
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(f"bad instance: {exc}") from exc


def load_automaton(path: str):
    data = _read_json(path)
    if not isinstance(data, dict):
        raise SchemaError("automaton must be a JSON object")
    if data.get("kind") == "radical":
        return RadicalQfa.from_json(data)
    q = Qfa.from_json(data)
    problems = validate(q)
    if problems:
        raise ValueError("invalid automaton: " + "; ".join(problems))
    return q


def _word(text: str) -> tuple[str, ...]:
    return tuple(text.split())


# ---------------------------------------------------------------------------
# subcommands


def cmd_compile(args) -> int:
    inst = load_instance(args.input)
    _emit(compile_injectivity(inst).to_json(), args.out)
    return EXIT_OK


def cmd_compile_ambiguity(args) -> int:
    inst = load_instance(args.input)
    _emit(compile_ambiguity(inst).to_json(), args.out)
    return EXIT_OK


def cmd_trim(args) -> int:
    inst = load_instance(args.input)
    _emit(claus_trim(inst).to_json(), args.out)
    return EXIT_OK


def cmd_accept(args) -> int:
    q = load_automaton(args.qfa)
    word = _word(args.word)
    value = harness.acceptance_value(q, word, exact=args.exact)
    out = {"word": list(word), "value": harness.value_json(value, args.float)}
    if isinstance(q, RadicalQfa):
        out["value_form"] = "exact" if (args.exact or q.trimmed) else "squared-entry"
        out["normalizer"] = "sum of sqrt(p) over 2,3,5,7,11,13 (omitted)"
    _emit(out, args.out)
    return EXIT_OK


def cmd_collide(args) -> int:
    q = load_automaton(args.qfa)
    report = harness.collision_search(
        q, args.max_len, jobs=args.jobs, exact=args.exact, max_pairs=args.max_pairs
    )
    _emit(report.to_json(args.float), args.out)
    return EXIT_OK if report.injective else EXIT_COLLISION


def cmd_mmpcp_solve(args) -> int:
    inst = load_instance(args.input)
    restrict = False if args.no_claus_restriction else None
    sol = brute_search(inst, args.max_len, restrict_claus=restrict)
    _emit({"max_len": args.max_len, "solution": sol.to_json() if sol else None}, args.out)
    return EXIT_OK


def cmd_end_to_end(args) -> int:
    inst = load_instance(args.input)
    result = harness.end_to_end(inst, args.max_len, jobs=args.jobs)
    _emit(result.to_json(args.float), args.out)
    return EXIT_OK if result.verdict == harness.CONSISTENT else EXIT_INCONSISTENT


def cmd_polycheck(args) -> int:
    evaluator = polypack.cantor_pair if args.cantor else polypack.f2
    bound_ok = [True]

    def check_bound(x, y, v):
        if not args.cantor and not (0 <= v <= 9):
            bound_ok[0] = False

    result = polypack.injectivity_scan(
        evaluator, args.kmax, on_point=check_bound, collect_all=args.all
    )
    out = result.to_json()
    out["function"] = "cantor" if args.cantor else "f2"
    if not args.cantor:
        out["range_bound_ok"] = bound_ok[0]
    _emit(out, args.out)
    if not bound_ok[0]:
        return EXIT_INCONSISTENT
    return EXIT_OK if result.ok else EXIT_COLLISION


def cmd_foursquares(args) -> int:
    rows = []
    for n in args.n:
        split = polypack.four_squares(n)
        rows.append({"n": n, "split": list(split), "complete_square": polypack.complete_square(n)})
    _emit({"results": rows}, args.out)
    return EXIT_OK


def _demo_bases() -> dict[str, RatMatrix]:
    from gmpy2 import mpq

    return {
        "a": RatMatrix([[mpq(3, 5), mpq(-4, 5)], [mpq(4, 5), mpq(3, 5)]]),
        "b": RatMatrix([[mpq(5, 13), mpq(12, 13)], [mpq(12, 13), mpq(-5, 13)]]),
    }


def _demo_plan() -> kronpoly.KronPlan:
    poly = polypack.Polynomial(2, {(1, 0): 2, (1, 1): 3, (0, 2): 1})
    return kronpoly.make_plan(poly, [(1, 1), (2, 1)], 2)


def _rational_digest(x) -> dict:
    text = rat_to_str(x)
    return {
        "sha256": hashlib.sha256(text.encode()).hexdigest(),
        "numerator_bits": int(x.numerator).bit_length(),
        "denominator_bits": int(x.denominator).bit_length(),
    }


def cmd_kron_demo(args) -> int:
    word = _word(args.word)
    if args.f6:
        if not args.input:
            raise SchemaError("--f6 needs --in INSTANCE")
        q = compile_injectivity(load_instance(args.input))
        bases = {name: q.matrix(name) for name in q.letters}
        plan = kronpoly.f6_plan(8)
        value = kronpoly.eval_lazy(bases, plan, word)
        out = {"plan": plan.to_json(), "word": list(word), "dense": None}
        out["value"] = rat_to_str(value) if args.full else _rational_digest(value)
        _emit(out, args.out)
        return EXIT_OK
    bases = _demo_bases()
    if args.bases:
        data = _read_json(args.bases)
        if not isinstance(data, dict):
            raise SchemaError("bases must be a JSON object of matrices")
        bases = {k: RatMatrix.from_json(v) for k, v in data.items()}
        for name, m in bases.items():
            if not m.is_orthogonal():
                raise ValueError(f"base {name!r} is not orthogonal")
    plan = kronpoly.KronPlan.from_json(_read_json(args.plan)) if args.plan else _demo_plan()
    lazy = kronpoly.eval_lazy(bases, plan, word)
    out = {"plan": kronpoly.plan_summary(plan), "word": list(word), "lazy": rat_to_str(lazy)}
    if plan.dense_dimension() <= kronpoly.DENSE_DIMENSION_CAP:
        from .qfa import accept_rational

        dense_q = kronpoly.build_dense(bases, plan)
        dense = accept_rational(dense_q, word)
        out["dense"] = rat_to_str(dense)
        out["agree"] = dense == lazy
        out["valid"] = not validate(dense_q)
    else:
        out["dense"] = None
    if args.float is not None:
        out["float"] = rat_to_float(lazy, args.float)
    _emit(out, args.out)
    if out.get("agree") is False or out.get("valid") is False:
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_verify_lemmas(args) -> int:
    lemma = harness.verify_lemma_identities(args.samples, args.max_syllables, args.seed)
    unique = harness.enumerate_uniqueness(args.n, args.max_len)
    free = harness.freeness_enumeration(args.free_len)
    foil = harness.ab_foil()
    out = {
        "sign_identities": lemma.to_json(),
        "uniqueness": unique.to_json(),
        "freeness": free.to_json(),
        "ab_foil": foil,
    }
    _emit(out, args.out)
    ok = lemma.ok and unique.ok and free.ok and foil["same_abs"] and foil["distinct"]
    return EXIT_OK if ok else EXIT_INCONSISTENT


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--float", type=_nonnegative, metavar="DIGITS",
                        help="add a decimal companion value rounded to DIGITS places")
    common.add_argument("--jobs", type=_positive, default=1, metavar="N",
                        help="partition enumeration over N worker processes")

    p = _Parser(prog="qfalab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, help_ in (
        ("compile", cmd_compile, "compile an MMPCP instance into the 8-state automaton"),
        ("compile-ambiguity", cmd_compile_ambiguity, "compile into the 9-state automaton"),
        ("trim", cmd_trim, "compile a claus instance with one generator folded away"),
    ):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--in", dest="input", required=True, help="instance JSON ('-' for stdin)")
        s.set_defaults(func=fn)

    s = sub.add_parser("accept", parents=[common], help="exact acceptance of one word")
    s.add_argument("--qfa", required=True)
    s.add_argument("--word", default="", help="space-separated letters; empty for the empty word")
    s.add_argument("--exact", action="store_true", help="radical automata: exact value with cross terms")
    s.set_defaults(func=cmd_accept)

    s = sub.add_parser("collide", parents=[common], help="bounded collision search")
    s.add_argument("--qfa", required=True)
    s.add_argument("--max-len", type=_nonnegative, required=True)
    s.add_argument("--exact", action="store_true")
    s.add_argument("--max-pairs", type=_positive, default=harness.DEFAULT_MAX_PAIRS)
    s.set_defaults(func=cmd_collide)

    s = sub.add_parser("mmpcp-solve", parents=[common], help="bounded brute-force MMPCP solver")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--max-len", type=_positive, required=True)
    s.add_argument("--no-claus-restriction", action="store_true")
    s.set_defaults(func=cmd_mmpcp_solve)

    s = sub.add_parser("end-to-end", parents=[common], help="solver vs. collision search")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--max-len", type=_positive, required=True)
    s.set_defaults(func=cmd_end_to_end)

    s = sub.add_parser("polycheck", parents=[common], help="grid injectivity scan")
    s.add_argument("--kmax", type=_nonnegative, required=True)
    s.add_argument("--cantor", action="store_true", help="scan the Cantor pairing instead")
    s.add_argument("--all", action="store_true", help="list every collision class")
    s.set_defaults(func=cmd_polycheck)

    s = sub.add_parser("foursquares", parents=[common], help="four-square splits")
    s.add_argument("n", type=_nonnegative, nargs="+")
    s.set_defaults(func=cmd_foursquares)

    s = sub.add_parser("kron-demo", parents=[common], help="dense vs. lazy polynomial acceptance")
    s.add_argument("--plan", help="plan JSON (default: a built-in two-variable plan)")
    s.add_argument("--bases", help="JSON object of orthogonal base matrices")
    s.add_argument("--word", default="")
    s.add_argument("--f6", action="store_true", help="packing polynomial on compiled generators")
    s.add_argument("--in", dest="input", help="instance JSON for --f6")
    s.add_argument("--full", action="store_true", help="print the full f6 value, not a digest")
    s.set_defaults(func=cmd_kron_demo)

    s = sub.add_parser("verify-lemmas", parents=[common], help="algebraic property suites")
    s.add_argument("--samples", type=_nonnegative, default=1000)
    s.add_argument("--max-syllables", type=_positive, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n", type=_positive, default=3)
    s.add_argument("--max-len", type=_positive, default=4)
    s.add_argument("--free-len", type=_positive, default=10)
    s.set_defaults(func=cmd_verify_lemmas)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"qfalab: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"qfalab: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        print(f"qfalab: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
