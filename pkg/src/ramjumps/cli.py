"""Command-line front end.

    ramjumps normalize FILE | jumps FILE | verify FILE
    ramjumps selftest --p P --n N --count C --seed S [--d D]

Input is a JSON problem file; output is JSON on stdout with sorted keys.
Errors go to stderr as {"error": CODE, "message": ...}. Exit codes: 0 ok,
2 domain error, 3 verification mismatch, 4 parse error.

Series are lists of [exponent, coords] pairs, coords the coordinates of the
coefficient in the basis 1, g, ..., g^{d-1}. The vector b is listed bottom-up:
b[0] is b_1.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .errors import ParseError, RamificationError
from .gfq import FqField
from .jumps import jump_set
from .laurent import DEFAULT_PRECISION, LaurentSeries
from .normalize import DefiningPair, check_conditions, normalize
from .verify import check_pair, selftest

EXIT_OK, EXIT_DOMAIN, EXIT_MISMATCH, EXIT_PARSE = 0, 2, 3, 4
MIN_EXPONENT = -10 ** 6
KNOWN_KEYS = {"p", "d", "modulus", "n", "a", "b", "precision", "seed", "conditions"}


class Problem:
    def __init__(self, field: FqField, pair: DefiningPair, precision: int, seed: int | None):
        self.field = field
        self.pair = pair
        self.precision = precision
        self.seed = seed

    def to_json(self, pair: DefiningPair | None = None) -> dict:
        pair = pair or self.pair
        out = dict(self.field.to_json())
        out.update(n=pair.n, a=pair.a.to_pairs(), b=[x.to_pairs() for x in pair.b],
                   precision=self.precision)
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _int(obj: dict, key: str, default: Any = ...) -> int:
    if key not in obj:
        if default is ...:
            raise ParseError(f"missing field '{key}'", field=key)
        return default
    value = obj[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"field '{key}' must be an integer", field=key)
    return value


def parse_series(obj: Any, field: FqField, where: str) -> LaurentSeries:
    if not isinstance(obj, list):
        raise ParseError(f"{where} must be a list of [exponent, coords] pairs", field=where)
    pairs = []
    for k, item in enumerate(obj):
        loc = f"{where}[{k}]"
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError(f"{loc} must be [exponent, coords]", field=loc)
        e, coords = item
        if not isinstance(e, int) or isinstance(e, bool):
            raise ParseError(f"{loc}: exponent must be an integer", field=loc)
        if e < MIN_EXPONENT:
            raise ParseError(f"{loc}: exponent {e} below {MIN_EXPONENT}", field=loc)
        if isinstance(coords, int) and not isinstance(coords, bool) and field.d == 1:
            coords = [coords]
        if not (isinstance(coords, list) and len(coords) == field.d
                and all(isinstance(c, int) and not isinstance(c, bool) for c in coords)):
            raise ParseError(f"{loc}: coords must be {field.d} integers", field=loc)
        pairs.append((e, [c % field.p for c in coords]))
    return LaurentSeries.from_pairs(field, pairs)


def parse_problem(obj: Any) -> Problem:
    if not isinstance(obj, dict):
        raise ParseError("problem file must be a JSON object")
    unknown = sorted(set(obj) - KNOWN_KEYS)
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(unknown)}", field=unknown[0])
    p = _int(obj, "p")
    d = _int(obj, "d", 1)
    modulus = obj.get("modulus")
    if modulus is not None and not (isinstance(modulus, list)
                                    and all(isinstance(c, int) for c in modulus)):
        raise ParseError("modulus must be a list of integers", field="modulus")
    try:
        field = FqField(p, d, modulus)
    except ValueError as e:
        raise ParseError(str(e), field="modulus") from None
    n = _int(obj, "n")
    if not 2 <= n <= p:
        raise ParseError(f"n={n} must satisfy 2 <= n <= p={p}", field="n")
    if "a" not in obj:
        raise ParseError("missing field 'a'", field="a")
    a = parse_series(obj["a"], field, "a")
    b_raw = obj.get("b")
    if not isinstance(b_raw, list) or len(b_raw) != n:
        raise ParseError(f"b must be a list of n={n} series (b_1 first)", field="b")
    b = tuple(parse_series(x, field, f"b[{k}]") for k, x in enumerate(b_raw))
    precision = _int(obj, "precision", DEFAULT_PRECISION)
    if precision <= 0:
        raise ParseError("precision must be positive", field="precision")
    seed = _int(obj, "seed", None)
    return Problem(field, DefiningPair(a, b), precision, seed)


def load_problem(path: str) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", file=path) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from None
    return parse_problem(obj)


def _conditions_json(pair: DefiningPair) -> dict:
    rep = check_conditions(pair)

    def opt(x):
        return None if x == float("-inf") else int(x)

    return {"i": rep.cond_i, "ii": rep.cond_ii, "iii": rep.cond_iii,
            "m_a": opt(rep.m_a), "m": [opt(x) for x in rep.m]}


def cmd_normalize(problem: Problem) -> tuple[dict, int]:
    pair = normalize(problem.pair)
    out = problem.to_json(pair)
    out["conditions"] = _conditions_json(pair)
    return out, EXIT_OK


def cmd_jumps(problem: Problem) -> tuple[dict, int]:
    pair = normalize(problem.pair)
    out = jump_set(pair).to_json()
    out["normalized"] = problem.to_json(pair)
    return out, EXIT_OK


def cmd_verify(problem: Problem) -> tuple[dict, int]:
    pair = normalize(problem.pair)
    check = check_pair(pair, problem.precision)
    out = {
        "n": pair.n,
        "results": check.rows(),
        "all_match": check.ok,
        "problems": check.problems,
        "normalized": problem.to_json(pair),
    }
    return out, EXIT_OK if check.ok else EXIT_MISMATCH


def cmd_selftest(args) -> tuple[dict, int]:
    if args.p not in (2, 3, 5):
        raise ParseError("selftest supports p in {2, 3, 5}", field="p")
    if not 2 <= args.n <= args.p:
        raise ParseError(f"n={args.n} must satisfy 2 <= n <= p={args.p}", field="n")
    if args.count < 0:
        raise ParseError("count must be non-negative", field="count")
    out = selftest(args.p, args.n, args.count, args.seed, args.d, args.precision)
    return out, EXIT_OK if out["fail"] == 0 else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    # SUPPRESS lets the flags appear before or after the subcommand
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS,
                        help="series truncation exponent (overrides the file)")
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="indent the JSON output")
    parser = argparse.ArgumentParser(prog="ramjumps", parents=[common], allow_abbrev=False,
                                     description="Upper ramification jumps of unipotent towers.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("normalize", "jumps", "verify"):
        sp = sub.add_parser(name, parents=[common], allow_abbrev=False)
        sp.add_argument("file")
    st = sub.add_parser("selftest", parents=[common], allow_abbrev=False)
    st.add_argument("--p", type=int, required=True)
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--count", type=int, default=100)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--d", type=int, default=2, help="degree of the residue field")
    return parser


def _emit(obj: dict, pretty: bool, stream) -> None:
    stream.write(json.dumps(obj, sort_keys=True, indent=2 if pretty else None,
                            ensure_ascii=False))
    stream.write("\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty = getattr(args, "pretty", False)
    args.precision = getattr(args, "precision", None)
    try:
        if args.command == "selftest":
            out, code = cmd_selftest(args)
        else:
            problem = load_problem(args.file)
            if args.precision is not None:
                problem.precision = args.precision
            handler = {"normalize": cmd_normalize, "jumps": cmd_jumps,
                       "verify": cmd_verify}[args.command]
            out, code = handler(problem)
    except ParseError as e:
        _emit({"error": e.code, "message": str(e), **e.details}, pretty, sys.stderr)
        return EXIT_PARSE
    except RamificationError as e:
        _emit({"error": e.code, "message": str(e)}, pretty, sys.stderr)
        return EXIT_DOMAIN
    _emit(out, pretty, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
