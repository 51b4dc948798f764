"""Zero-sum games and Dutch-book analysis with payoffs in Q(w).

Matrices are stored with one row per bookmaker (Bob's pure strategy ``b``)
and one column per outcome (Alice's pure strategy ``a``), so
``entries[b][a] = g(a, b)`` is Alice's payoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .simplex import Constraint, LPStatus, solve_lp
from .surreal import SurrealRF, rf, rf_format

__all__ = [
    "SchemaError",
    "IncoherentBets",
    "PayoffMatrix",
    "MixedStrategy",
    "Solution",
    "CoherenceResult",
    "Coherent",
    "DutchBook",
    "Bet",
    "solve_zero_sum",
    "analyze_coherence",
    "minimax_gap",
    "lower_prevision",
    "verify_solution",
    "verify_coherence",
]

ZERO = SurrealRF(0)


class SchemaError(ValueError):
    """Input document does not match the expected layout; ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class IncoherentBets(ValueError):
    pass


def _check_labels(labels: Sequence[str], name: str) -> Tuple[str, ...]:
    labels = tuple(labels)
    if not labels:
        raise SchemaError(name, "must be a nonempty list")
    if not all(isinstance(x, str) for x in labels):
        raise SchemaError(name, "labels must be strings")
    if len(set(labels)) != len(labels):
        raise SchemaError(name, "labels must be unique")
    return labels


@dataclass(frozen=True)
class PayoffMatrix:
    outcomes: Tuple[str, ...]
    bookmakers: Tuple[str, ...]
    entries: Tuple[Tuple[SurrealRF, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "outcomes", _check_labels(self.outcomes, "outcomes"))
        object.__setattr__(self, "bookmakers", _check_labels(self.bookmakers, "bookmakers"))
        if len(self.entries) != len(self.bookmakers):
            raise SchemaError("entries", f"expected {len(self.bookmakers)} rows, got {len(self.entries)}")
        rows = []
        for i, row in enumerate(self.entries):
            if isinstance(row, (str, bytes)) or len(row) != len(self.outcomes):
                raise SchemaError(f"entries[{i}]", f"expected {len(self.outcomes)} entries")
            rows.append(tuple(rf(x) for x in row))
        object.__setattr__(self, "entries", tuple(rows))

    @classmethod
    def from_rows(cls, rows, outcomes=None, bookmakers=None) -> "PayoffMatrix":
        """Convenience constructor with default labels ``a1..`` and ``b1..``."""
        rows = [list(r) for r in rows]
        if outcomes is None:
            outcomes = [f"a{i + 1}" for i in range(len(rows[0]) if rows else 0)]
        if bookmakers is None:
            bookmakers = [f"b{i + 1}" for i in range(len(rows))]
        return cls(tuple(outcomes), tuple(bookmakers), tuple(tuple(r) for r in rows))

    @classmethod
    def from_dict(cls, doc) -> "PayoffMatrix":
        if not isinstance(doc, dict):
            raise SchemaError("<root>", "expected a JSON object")
        for key in ("outcomes", "bookmakers", "entries"):
            if key not in doc or not isinstance(doc[key], list):
                raise SchemaError(key, "missing or not a list")
        rows = []
        for i, row in enumerate(doc["entries"]):
            if not isinstance(row, list):
                raise SchemaError(f"entries[{i}]", "expected a list")
            for j, x in enumerate(row):
                if not isinstance(x, (str, int)) or isinstance(x, bool):
                    raise SchemaError(f"entries[{i}][{j}]", "expected a field literal string")
            rows.append([rf(str(x)) for x in row])
        return cls(tuple(doc["outcomes"]), tuple(doc["bookmakers"]), tuple(tuple(r) for r in rows))

    def to_dict(self) -> dict:
        return {
            "outcomes": list(self.outcomes),
            "bookmakers": list(self.bookmakers),
            "entries": [[rf_format(x) for x in row] for row in self.entries],
        }

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.bookmakers), len(self.outcomes)

    def payoff(self, a: int, b: int) -> SurrealRF:
        return self.entries[b][a]

    def map(self, fn) -> "PayoffMatrix":
        return PayoffMatrix(
            self.outcomes, self.bookmakers, tuple(tuple(fn(x) for x in row) for row in self.entries)
        )

    def shifted(self, c) -> "PayoffMatrix":
        c = rf(c)
        return self.map(lambda x: x + c)

    def scaled(self, s) -> "PayoffMatrix":
        s = rf(s)
        return self.map(lambda x: x * s)

    def with_bank(self, label: str = "bank") -> "PayoffMatrix":
        """Add a bookmaker that pays 0 whatever the outcome."""
        while label in self.bookmakers:
            label += "_"
        return PayoffMatrix(
            self.outcomes,
            self.bookmakers + (label,),
            self.entries + (tuple(ZERO for _ in self.outcomes),),
        )

    def min_entry(self) -> SurrealRF:
        return min(x for row in self.entries for x in row)


@dataclass(frozen=True)
class MixedStrategy:
    labels: Tuple[str, ...]
    weights: Tuple[SurrealRF, ...]

    def __post_init__(self):
        weights = tuple(rf(w) for w in self.weights)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "weights", weights)
        if len(weights) != len(self.labels):
            raise ValueError("one weight per label required")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if sum(weights, ZERO) != 1:
            raise ValueError("weights must sum to 1")

    @classmethod
    def pure(cls, labels: Sequence[str], index: int) -> "MixedStrategy":
        return cls(tuple(labels), tuple(SurrealRF(int(i == index)) for i in range(len(labels))))

    def __getitem__(self, label: str) -> SurrealRF:
        return self.weights[self.labels.index(label)]

    def as_dict(self) -> Dict[str, str]:
        return {k: rf_format(v) for k, v in zip(self.labels, self.weights)}


def _row_payoffs(M: PayoffMatrix, p: Sequence[SurrealRF]) -> List[SurrealRF]:
    """sum_a p_a g(a, b) for each bookmaker b."""
    return [sum((pa * x for pa, x in zip(p, row)), ZERO) for row in M.entries]


def _column_payoffs(M: PayoffMatrix, q: Sequence[SurrealRF]) -> List[SurrealRF]:
    """sum_b q_b g(a, b) for each outcome a."""
    return [
        sum((qb * M.entries[b][a] for b, qb in enumerate(q)), ZERO) for a in range(len(M.outcomes))
    ]


@dataclass(frozen=True)
class Solution:
    value: SurrealRF
    row_strategy: MixedStrategy  # Alice, over outcomes
    column_strategy: MixedStrategy  # Bob, over bookmakers

    def to_dict(self) -> dict:
        return {
            "value": rf_format(self.value),
            "row_strategy": self.row_strategy.as_dict(),
            "column_strategy": self.column_strategy.as_dict(),
        }


def verify_solution(M: PayoffMatrix, S: Solution) -> bool:
    """Replay min_b sum_a p_a g(a,b) = value = max_a sum_b q_b g(a,b)."""
    if S.row_strategy.labels != M.outcomes or S.column_strategy.labels != M.bookmakers:
        return False
    lower = min(_row_payoffs(M, S.row_strategy.weights))
    upper = max(_column_payoffs(M, S.column_strategy.weights))
    return lower == S.value == upper


def solve_zero_sum(M: PayoffMatrix, max_pivots: int = 10**5) -> Solution:
    """Exact value and optimal mixed strategies.

    All entries are shifted by ``1 - min`` to make them positive; Alice then
    minimizes ``sum x`` subject to ``sum_a x_a g(a,b) >= 1`` and Bob maximizes
    ``sum y`` subject to ``sum_b y_b g(a,b) <= 1``.
    """
    shift = 1 - M.min_entry()
    P = M.shifted(shift)
    n_a, n_b = len(M.outcomes), len(M.bookmakers)

    alice = solve_lp(
        [1] * n_a,
        [Constraint(row, ">=", 1) for row in P.entries],
        zero=ZERO,
        max_pivots=max_pivots,
    )
    bob = solve_lp(
        [-1] * n_b,
        [Constraint([P.entries[b][a] for b in range(n_b)], "<=", 1) for a in range(n_a)],
        zero=ZERO,
        max_pivots=max_pivots,
    )
    assert alice.status is LPStatus.OPTIMAL and bob.status is LPStatus.OPTIMAL
    total = sum(alice.x, ZERO)
    if total != sum(bob.x, ZERO):
        raise ArithmeticError("primal and dual optima differ")
    solution = Solution(
        value=1 / total - shift,
        row_strategy=MixedStrategy(M.outcomes, tuple(x / total for x in alice.x)),
        column_strategy=MixedStrategy(M.bookmakers, tuple(y / total for y in bob.x)),
    )
    if not verify_solution(M, solution):
        raise ArithmeticError("solution failed verification")
    return solution


class CoherenceResult:
    kind: str

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Coherent(CoherenceResult):
    """Probability vector over outcomes giving every bookmaker's payoff a non-negative mean."""

    witness: MixedStrategy
    kind = "Coherent"

    def to_dict(self):
        return {"kind": self.kind, "witness": self.witness.as_dict()}


@dataclass(frozen=True)
class DutchBook(CoherenceResult):
    """Portfolio over bookmakers whose combined payoff is negative for every outcome."""

    portfolio: MixedStrategy
    kind = "DutchBook"

    def to_dict(self):
        return {"kind": self.kind, "portfolio": self.portfolio.as_dict()}


def verify_coherence(M: PayoffMatrix, R: CoherenceResult) -> bool:
    if isinstance(R, Coherent):
        if R.witness.labels != M.outcomes:
            return False
        return all(v >= 0 for v in _row_payoffs(M, R.witness.weights))
    if isinstance(R, DutchBook):
        if R.portfolio.labels != M.bookmakers:
            return False
        return all(v < 0 for v in _column_payoffs(M, R.portfolio.weights))
    return False


def analyze_coherence(M: PayoffMatrix, solution: Optional[Solution] = None) -> CoherenceResult:
    """Coherent witness when the game value is >= 0, otherwise a Dutch book."""
    S = solution or solve_zero_sum(M)
    if S.value >= 0:
        result: CoherenceResult = Coherent(S.row_strategy)
    else:
        result = DutchBook(S.column_strategy)
    if not verify_coherence(M, result):
        raise ArithmeticError("certificate failed verification")
    return result


def minimax_gap(M: PayoffMatrix) -> Tuple[SurrealRF, SurrealRF]:
    """(max_a min_b g(a,b), min_b max_a g(a,b)) over pure strategies."""
    n_a = len(M.outcomes)
    maximin = max(min(row[a] for row in M.entries) for a in range(n_a))
    minimax = min(max(row) for row in M.entries)
    return maximin, minimax


# -- one-sided two-valued bets ------------------------------------------------


@dataclass(frozen=True)
class Bet:
    """Pays ``g1`` if the outcome lies in ``event``, ``g2`` otherwise."""

    event: Tuple[str, ...]
    g1: SurrealRF
    g2: SurrealRF

    def __post_init__(self):
        object.__setattr__(self, "event", tuple(self.event))
        object.__setattr__(self, "g1", rf(self.g1))
        object.__setattr__(self, "g2", rf(self.g2))
        if not (self.g1 >= 0 > self.g2):
            raise ValueError(f"bet payoffs must satisfy g1 >= 0 > g2, got {self.g1}, {self.g2}")

    @property
    def threshold(self) -> SurrealRF:
        """Least P(event) at which the bet has non-negative mean."""
        return -self.g2 / (self.g1 - self.g2)


def lower_prevision(
    bets: Iterable[Bet], target: Iterable[str], outcomes: Optional[Sequence[str]] = None
) -> SurrealRF:
    """Minimum of P(target) over distributions accepting every bet.

    ``outcomes`` defaults to every label mentioned by the bets or the target.
    """
    bets = list(bets)
    target = list(target)
    if outcomes is None:
        outcomes = list(dict.fromkeys([a for bet in bets for a in bet.event] + target))
    outcomes = list(outcomes)
    index = {a: i for i, a in enumerate(outcomes)}
    for label in target + [a for bet in bets for a in bet.event]:
        if label not in index:
            raise SchemaError("event", f"unknown outcome {label!r}")
    if not outcomes:
        raise SchemaError("outcomes", "no outcomes")
    n = len(outcomes)
    tset = set(target)
    cost = [1 if a in tset else 0 for a in outcomes]
    constraints = [Constraint([1] * n, "=", 1)]
    for bet in bets:
        ev = set(bet.event)
        constraints.append(Constraint([1 if a in ev else 0 for a in outcomes], ">=", bet.threshold))
    res = solve_lp(cost, constraints, zero=ZERO)
    if res.status is LPStatus.INFEASIBLE:
        raise IncoherentBets("no probability vector accepts every bet")
    return res.objective
