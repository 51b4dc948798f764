"""Dutch books for matrices of short games.

Each bookmaker ``b`` offers Alice (playing Left) the game ``G(a, b)`` when
outcome ``a`` happens.  :func:`classify` solves the zero-sum game on the
mean values and turns its sign into one of three certificates:

* ``DutchBook``: naturals ``n_b`` with ``sum_b n_b G(a,b) < 0`` for every a;
* ``PositiveMean``: counts ``c_a`` with ``sum_a c_a G(a,b) > 0`` for every b;
* ``ZeroMeanUndecided``: the optimal mean payoff is exactly 0.

The cases can overlap; the sign of the mean game's value decides which one
is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .games import Game, Status, add, canonical, format_game, nmul, parse_game, status, ZERO
from .matrix_games import PayoffMatrix, SchemaError, _check_labels, solve_zero_sum
from .surreal import SurrealRF
from .thermography import mean, temperature

__all__ = [
    "GameMatrix",
    "TrichotomyCertificate",
    "DutchBookCertificate",
    "PositiveMeanCertificate",
    "ZeroMeanUndecided",
    "MultiplierBudgetExceeded",
    "CLASSIFICATION_POLICY",
    "mean_matrix",
    "classify",
    "find_dutch_coefficients",
    "find_positive_multiplier",
    "verify_certificate",
]

CLASSIFICATION_POLICY = "mean-LP sign"
DEFAULT_BUDGET = 2**20


class MultiplierBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GameMatrix:
    outcomes: Tuple[str, ...]
    bookmakers: Tuple[str, ...]
    entries: Tuple[Tuple[Game, ...], ...]  # entries[b][a] = G(a, b)

    def __post_init__(self):
        object.__setattr__(self, "outcomes", _check_labels(self.outcomes, "outcomes"))
        object.__setattr__(self, "bookmakers", _check_labels(self.bookmakers, "bookmakers"))
        if len(self.entries) != len(self.bookmakers):
            raise SchemaError("entries", f"expected {len(self.bookmakers)} rows, got {len(self.entries)}")
        rows = []
        for i, row in enumerate(self.entries):
            if isinstance(row, (str, bytes)) or len(row) != len(self.outcomes):
                raise SchemaError(f"entries[{i}]", f"expected {len(self.outcomes)} entries")
            row = tuple(parse_game(x) if isinstance(x, str) else x for x in row)
            if not all(isinstance(x, Game) for x in row):
                raise SchemaError(f"entries[{i}]", "entries must be games")
            rows.append(row)
        object.__setattr__(self, "entries", tuple(rows))

    @classmethod
    def from_rows(cls, rows, outcomes=None, bookmakers=None) -> "GameMatrix":
        rows = [list(r) for r in rows]
        if outcomes is None:
            outcomes = [f"a{i + 1}" for i in range(len(rows[0]) if rows else 0)]
        if bookmakers is None:
            bookmakers = [f"b{i + 1}" for i in range(len(rows))]
        return cls(tuple(outcomes), tuple(bookmakers), tuple(tuple(r) for r in rows))

    @classmethod
    def from_dict(cls, doc) -> "GameMatrix":
        if not isinstance(doc, dict):
            raise SchemaError("<root>", "expected a JSON object")
        for key in ("outcomes", "bookmakers", "entries"):
            if key not in doc or not isinstance(doc[key], list):
                raise SchemaError(key, "missing or not a list")
        for i, row in enumerate(doc["entries"]):
            if not isinstance(row, list):
                raise SchemaError(f"entries[{i}]", "expected a list")
            for j, x in enumerate(row):
                if not isinstance(x, str):
                    raise SchemaError(f"entries[{i}][{j}]", "expected a game expression string")
        return cls(
            tuple(doc["outcomes"]), tuple(doc["bookmakers"]), tuple(tuple(r) for r in doc["entries"])
        )

    def to_dict(self) -> dict:
        return {
            "outcomes": list(self.outcomes),
            "bookmakers": list(self.bookmakers),
            "entries": [[format_game(g) for g in row] for row in self.entries],
        }


class TrichotomyCertificate:
    kind: str

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class DutchBookCertificate(TrichotomyCertificate):
    coefficients: Tuple[int, ...]  # n_b per bookmaker
    verification: Tuple[Status, ...]  # status of sum_b n_b G(a,b) per outcome
    doublings: int = 0
    kind = "DutchBook"

    def to_dict(self):
        return {
            "kind": self.kind,
            "coefficients": [str(n) for n in self.coefficients],
            "verification": [str(s) for s in self.verification],
            "policy": CLASSIFICATION_POLICY,
        }


@dataclass(frozen=True)
class PositiveMeanCertificate(TrichotomyCertificate):
    n: int
    counts: Tuple[int, ...]  # n * p_a per outcome
    verification: Tuple[Status, ...]  # status of sum_a counts_a G(a,b) per bookmaker
    doublings: int = 0
    kind = "PositiveMean"

    def to_dict(self):
        return {
            "kind": self.kind,
            "n": str(self.n),
            "counts": [str(c) for c in self.counts],
            "verification": [str(s) for s in self.verification],
            "policy": CLASSIFICATION_POLICY,
        }


@dataclass(frozen=True)
class ZeroMeanUndecided(TrichotomyCertificate):
    probabilities: Tuple[Fraction, ...]
    note: str = field(
        default="optimal mean payoff is exactly 0; the mean values cannot decide these games"
    )
    kind = "ZeroMeanUndecided"

    def to_dict(self):
        return {
            "kind": self.kind,
            "probabilities": [str(p) for p in self.probabilities],
            "note": self.note,
            "policy": CLASSIFICATION_POLICY,
        }


def mean_matrix(GM: GameMatrix) -> List[List[Fraction]]:
    return [[mean(g) for g in row] for row in GM.entries]


def _combination(games: Sequence[Game], coeffs: Sequence[int]) -> Game:
    """sum_i coeffs_i * games_i, kept canonical along the way."""
    out = ZERO
    for g, n in zip(games, coeffs):
        if n:
            out = canonical(add(out, nmul(n, g)))
    return out


def _lcm_of_denominators(weights: Sequence[Fraction]) -> int:
    out = 1
    for w in weights:
        out = math.lcm(out, Fraction(w).denominator)
    return out


def _search(blocks: List[Game], want: Status, slack: Fraction, t_max: Fraction, budget: int):
    """Smallest power-of-two multiple (from the analytic start) of every block with status ``want``."""
    k = max(1, math.ceil(t_max / slack))
    doublings = 0
    while k <= budget:
        statuses = tuple(status(nmul(k, h)) for h in blocks)
        if all(s is want for s in statuses):
            return k, doublings
        k *= 2
        doublings += 1
    raise MultiplierBudgetExceeded(f"no multiplier up to {budget} works")


def find_dutch_coefficients(
    GM: GameMatrix, Q: Sequence, budget: int = DEFAULT_BUDGET
) -> DutchBookCertificate:
    """Natural coefficients n_b, proportional to Q, making every outcome's sum negative."""
    Q = [Fraction(q) for q in Q]
    if len(Q) != len(GM.bookmakers):
        raise ValueError("one weight per bookmaker required")
    scale = _lcm_of_denominators(Q)
    m = [int(q * scale) for q in Q]
    n_b, n_a = len(GM.bookmakers), len(GM.outcomes)
    means = [sum(m[b] * mean(GM.entries[b][a]) for b in range(n_b)) for a in range(n_a)]
    if not all(x < 0 for x in means):
        raise ValueError("Q does not give every outcome a negative mean")
    blocks = [_combination([GM.entries[b][a] for b in range(n_b)], m) for a in range(n_a)]
    t_max = max(temperature(h) for h in blocks)
    k, doublings = _search(blocks, Status.NEGATIVE, min(-x for x in means), t_max, budget)
    coeffs = tuple(k * x for x in m)
    return DutchBookCertificate(coeffs, _dutch_statuses(GM, coeffs), doublings)


def find_positive_multiplier(
    GM: GameMatrix, P: Sequence, budget: int = DEFAULT_BUDGET
) -> PositiveMeanCertificate:
    """n and counts n*p_a making every bookmaker's sum positive for Left."""
    P = [Fraction(p) for p in P]
    if len(P) != len(GM.outcomes):
        raise ValueError("one weight per outcome required")
    if sum(P) != 1 or any(p < 0 for p in P):
        raise ValueError("P must be a probability vector")
    scale = _lcm_of_denominators(P)
    m = [int(p * scale) for p in P]
    means = [sum(m[a] * mean(g) for a, g in enumerate(row)) for row in GM.entries]
    if not all(x > 0 for x in means):
        raise ValueError("P does not give every bookmaker a positive mean")
    blocks = [_combination(row, m) for row in GM.entries]
    t_max = max(temperature(h) for h in blocks)
    k, doublings = _search(blocks, Status.POSITIVE, min(means), t_max, budget)
    counts = tuple(k * x for x in m)
    return PositiveMeanCertificate(k * scale, counts, _positive_statuses(GM, counts), doublings)


def _dutch_statuses(GM: GameMatrix, coeffs: Sequence[int]) -> Tuple[Status, ...]:
    return tuple(
        status(_combination([row[a] for row in GM.entries], coeffs)) for a in range(len(GM.outcomes))
    )


def _positive_statuses(GM: GameMatrix, counts: Sequence[int]) -> Tuple[Status, ...]:
    return tuple(status(_combination(row, counts)) for row in GM.entries)


def verify_certificate(GM: GameMatrix, cert: TrichotomyCertificate) -> bool:
    """Replay the defining status checks (or the mean-zero equation) of a certificate."""
    if isinstance(cert, DutchBookCertificate):
        c = cert.coefficients
        if len(c) != len(GM.bookmakers) or any(n < 0 for n in c) or not any(c):
            return False
        return all(s is Status.NEGATIVE for s in _dutch_statuses(GM, c))
    if isinstance(cert, PositiveMeanCertificate):
        c = cert.counts
        if len(c) != len(GM.outcomes) or any(x < 0 for x in c) or sum(c) != cert.n or cert.n <= 0:
            return False
        return all(s is Status.POSITIVE for s in _positive_statuses(GM, c))
    if isinstance(cert, ZeroMeanUndecided):
        p = cert.probabilities
        if len(p) != len(GM.outcomes) or any(x < 0 for x in p) or sum(p) != 1:
            return False
        means = mean_matrix(GM)
        return min(sum(pa * x for pa, x in zip(p, row)) for row in means) == 0
    return False


def classify(GM: GameMatrix, budget: int = DEFAULT_BUDGET) -> TrichotomyCertificate:
    """Dutch book, positive-mean multiple or zero-mean verdict, by the sign of the mean game."""
    means = PayoffMatrix(
        GM.outcomes,
        GM.bookmakers,
        tuple(tuple(SurrealRF(x) for x in row) for row in mean_matrix(GM)),
    )
    sol = solve_zero_sum(means)
    value = sol.value.as_fraction()
    if value < 0:
        q = [w.as_fraction() for w in sol.column_strategy.weights]
        cert: TrichotomyCertificate = find_dutch_coefficients(GM, q, budget)
    elif value > 0:
        p = [w.as_fraction() for w in sol.row_strategy.weights]
        cert = find_positive_multiplier(GM, p, budget)
    else:
        cert = ZeroMeanUndecided(tuple(w.as_fraction() for w in sol.row_strategy.weights))
    if not verify_certificate(GM, cert):
        raise ArithmeticError(f"{cert.kind} certificate failed verification")
    return cert
