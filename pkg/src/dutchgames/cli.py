"""Command-line front end.

Exit codes: 0 success, 1 Dutch book found (``coherence``/``classify``),
2 parse or input error, 3 analysis error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import List, Optional, Union

from . import __version__
from .game_bets import (
    CLASSIFICATION_POLICY,
    DutchBookCertificate,
    GameMatrix,
    MultiplierBudgetExceeded,
    classify,
    verify_certificate,
)
from .games import (
    NonDyadicNumber,
    canonical,
    compare,
    format_game,
    game_to_number,
    is_infinitesimal,
    is_number,
    left_stop,
    parse_game,
    right_stop,
    status,
)
from .matrix_games import (
    Bet,
    DutchBook,
    IncoherentBets,
    PayoffMatrix,
    SchemaError,
    analyze_coherence,
    lower_prevision,
    minimax_gap,
    solve_zero_sum,
    verify_coherence,
    verify_solution,
)
from .surreal import ParseError, SurrealRF, rf, rf_format
from .thermography import thermograph

EXIT_OK, EXIT_DUTCH_BOOK, EXIT_INPUT, EXIT_ANALYSIS = 0, 1, 2, 3


def _digest(data: Union[str, bytes]) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _load_json(raw: bytes):
    try:
        return json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError("<root>", f"invalid JSON: {exc}") from exc


def load_matrix(path: str, games: bool = False) -> Union[PayoffMatrix, GameMatrix]:
    """Read a payoff matrix (field literals) or, with ``games``, a game matrix."""
    doc = _load_json(_read(path))
    return GameMatrix.from_dict(doc) if games else PayoffMatrix.from_dict(doc)


def load_bets(path: str):
    """Read a bets file: ``(bets, target, outcomes)``; outcomes may be None."""
    return _bets_from_dict(_load_json(_read(path)))


def _bets_from_dict(doc):
    if not isinstance(doc, dict):
        raise SchemaError("<root>", "expected a JSON object")
    if not isinstance(doc.get("bets"), list):
        raise SchemaError("bets", "missing or not a list")
    if not isinstance(doc.get("target"), list):
        raise SchemaError("target", "missing or not a list")
    bets = []
    for i, item in enumerate(doc["bets"]):
        if not isinstance(item, dict):
            raise SchemaError(f"bets[{i}]", "expected an object")
        for key in ("event", "g1", "g2"):
            if key not in item:
                raise SchemaError(f"bets[{i}].{key}", "missing")
        if not isinstance(item["event"], list):
            raise SchemaError(f"bets[{i}].event", "expected a list of outcome labels")
        try:
            bets.append(Bet(tuple(item["event"]), rf(str(item["g1"])), rf(str(item["g2"]))))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise SchemaError(f"bets[{i}]", str(exc)) from exc
    outcomes = doc.get("outcomes")
    if outcomes is not None and not isinstance(outcomes, list):
        raise SchemaError("outcomes", "expected a list")
    return bets, list(doc["target"]), outcomes


def _num(x, std: bool):
    """Field element or rational as canonical text, optionally with its standard part."""
    if isinstance(x, SurrealRF):
        text = rf_format(x)
        if std and x.is_finite():
            return {"exact": text, "standard_part": str(x.standard_part())}
        return text
    return str(x)


def _strategy(s, std):
    return {k: _num(v, std) for k, v in zip(s.labels, s.weights)}


# -- subcommands --------------------------------------------------------------


def cmd_eval(args) -> tuple:
    g = parse_game(args.expr)
    th = thermograph(g)
    result = {
        "canonical": format_game(canonical(g)),
        "status": str(status(g)),
        "number": str(game_to_number(g)) if is_number(g) else None,
        "left_stop": str(left_stop(g)),
        "right_stop": str(right_stop(g)),
        "mean": str(th.mast),
        "temperature": str(th.temperature),
        "infinitesimal": is_infinitesimal(g),
        "thermograph": [[str(t), str(lv), str(rv)] for t, lv, rv in th.table()],
    }
    return result, _digest(args.expr), EXIT_OK


def cmd_cmp(args) -> tuple:
    g, h = parse_game(args.left), parse_game(args.right)
    return {"relation": compare(g, h)}, _digest(args.left + "\0" + args.right), EXIT_OK


def cmd_solve(args) -> tuple:
    raw = _read(args.file)
    M = PayoffMatrix.from_dict(_load_json(raw))
    S = solve_zero_sum(M)
    lo, hi = minimax_gap(M)
    result = {
        "value": _num(S.value, args.std),
        "row_strategy": _strategy(S.row_strategy, args.std),
        "column_strategy": _strategy(S.column_strategy, args.std),
        "pure_maximin": _num(lo, args.std),
        "pure_minimax": _num(hi, args.std),
        "verified": verify_solution(M, S),
    }
    return result, _digest(raw), EXIT_OK


def cmd_coherence(args) -> tuple:
    raw = _read(args.file)
    M = PayoffMatrix.from_dict(_load_json(raw))
    if args.bank:
        M = M.with_bank()
    S = solve_zero_sum(M)
    R = analyze_coherence(M, S)
    result = {"verdict": R.kind, "value": _num(S.value, args.std)}
    if isinstance(R, DutchBook):
        result["portfolio"] = _strategy(R.portfolio, args.std)
    else:
        result["witness"] = _strategy(R.witness, args.std)
    result["verified"] = verify_coherence(M, R)
    code = EXIT_DUTCH_BOOK if isinstance(R, DutchBook) else EXIT_OK
    return result, _digest(raw), code


def cmd_classify(args) -> tuple:
    raw = _read(args.file)
    GM = GameMatrix.from_dict(_load_json(raw))
    cert = classify(GM, budget=args.budget)
    result = cert.to_dict()
    result["verified"] = verify_certificate(GM, cert)
    code = EXIT_DUTCH_BOOK if isinstance(cert, DutchBookCertificate) else EXIT_OK
    return result, _digest(raw), code


def cmd_lower_prevision(args) -> tuple:
    raw = _read(args.file)
    bets, target, outcomes = _bets_from_dict(_load_json(raw))
    value = lower_prevision(bets, target, outcomes)
    return {"target": target, "lower_prevision": _num(value, args.std)}, _digest(raw), EXIT_OK


# -- output -------------------------------------------------------------------


def _render(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  " + "  ".join(row) for row in value)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: " + ", ".join(str(v) for v in value))
        elif value is None:
            lines.append(f"{pad}{key}: -")
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dutchgames", description="Conway games, surreal zero-sum games and Dutch books."
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--std", action="store_true", help="also print standard parts")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--std", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="analyse one game expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cmp", parents=[common], help="compare two game expressions")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_cmp)

    p = sub.add_parser("solve", parents=[common], help="solve a zero-sum payoff matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("coherence", parents=[common], help="Dutch book or coherence witness")
    p.add_argument("file")
    p.add_argument("--bank", action="store_true", help="add a bookmaker paying 0 on every outcome")
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("classify", parents=[common], help="trichotomy for a matrix of games")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=2**20, help="largest multiplier tried")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lower-prevision", parents=[common], help="lower prevision from one-sided bets")
    p.add_argument("file")
    p.set_defaults(func=cmd_lower_prevision)
    return parser


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        result, digest, code = args.func(args)
    except (ParseError, NonDyadicNumber, SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (IncoherentBets, MultiplierBudgetExceeded) as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    report = {
        "command": args.command,
        "result": result,
        "provenance": {
            "input_sha256": digest,
            "version": __version__,
            "classification_policy": CLASSIFICATION_POLICY,
        },
    }
    if args.json:
        json.dump(report, out, indent=2)
        out.write("\n")
    else:
        out.write("\n".join(_render(report)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
