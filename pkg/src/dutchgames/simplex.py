"""Two-phase tableau simplex over any exact ordered field.

Entries only need ``+ - * /`` and comparison with 0, so ``Fraction`` and
:class:`~dutchgames.surreal.SurrealRF` both work.  Bland's rule picks the
entering and leaving variables, which guarantees termination.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

__all__ = ["LPStatus", "LPResult", "Constraint", "solve_lp", "PivotBudgetExceeded"]


class PivotBudgetExceeded(RuntimeError):
    pass


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: Sequence
    sense: str  # "<=", ">=" or "="
    rhs: object

    def __post_init__(self):
        if self.sense not in ("<=", ">=", "="):
            raise ValueError(f"bad constraint sense {self.sense!r}")


@dataclass
class LPResult:
    status: LPStatus
    x: Optional[List] = None
    objective: object = None
    pivots: int = 0


@dataclass
class _Tableau:
    rows: List[List]  # each row: coefficients..., rhs
    basis: List[int]
    zero: object
    max_pivots: int
    pivots: int = field(default=0)

    def reduced_costs(self, cost: Sequence, ncols: int) -> List:
        out = []
        for j in range(ncols):
            r = cost[j]
            for i, b in enumerate(self.basis):
                if self.rows[i][j]:
                    r = r - cost[b] * self.rows[i][j]
            out.append(r)
        return out

    def pivot(self, i: int, j: int):
        if self.pivots >= self.max_pivots:
            raise PivotBudgetExceeded(f"more than {self.max_pivots} pivots")
        self.pivots += 1
        prow = self.rows[i]
        p = prow[j]
        prow = [v / p for v in prow]
        self.rows[i] = prow
        for k, row in enumerate(self.rows):
            if k != i and row[j]:
                f = row[j]
                self.rows[k] = [a - f * b for a, b in zip(row, prow)]
        self.basis[i] = j

    def optimize(self, cost: Sequence, allowed: Sequence[int]) -> bool:
        """Minimize cost over the current basis; False if unbounded."""
        ncols = len(cost)
        while True:
            rc = self.reduced_costs(cost, ncols)
            entering = next((j for j in allowed if rc[j] < 0), None)
            if entering is None:
                return True
            leaving, best = None, None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leaving])
                    ):
                        leaving, best = i, ratio
            if leaving is None:
                return False
            self.pivot(leaving, entering)


def solve_lp(
    cost: Sequence,
    constraints: Sequence[Constraint],
    zero=0,
    max_pivots: int = 10**5,
) -> LPResult:
    """Minimize ``cost . x`` subject to ``constraints`` and ``x >= 0``."""
    n = len(cost)
    norm = []
    for con in constraints:
        coeffs = list(con.coefficients)
        if len(coeffs) != n:
            raise ValueError("constraint width does not match cost vector")
        rhs, sense = con.rhs, con.sense
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        norm.append((coeffs, sense, rhs))

    m = len(norm)
    n_slack = sum(1 for _, s, _ in norm if s != "=")
    n_art = sum(1 for _, s, _ in norm if s != "<=")
    width = n + n_slack + n_art
    rows, basis = [], []
    slack_col, art_col = n, n + n_slack
    artificials = []
    for coeffs, sense, rhs in norm:
        row = [zero] * width
        row[:n] = [zero + c for c in coeffs]
        if sense == "<=":
            row[slack_col] = zero + 1
            basis.append(slack_col)
            slack_col += 1
        else:
            if sense == ">=":
                row[slack_col] = zero - 1
                slack_col += 1
            row[art_col] = zero + 1
            basis.append(art_col)
            artificials.append(art_col)
            art_col += 1
        rows.append(row + [zero + rhs])

    tab = _Tableau(rows, basis, zero, max_pivots)
    real_cols = list(range(n + n_slack))

    if artificials:
        phase1 = [zero] * width
        for j in artificials:
            phase1[j] = zero + 1
        tab.optimize(phase1, list(range(width)))
        infeas = sum((tab.rows[i][-1] for i, b in enumerate(tab.basis) if b in artificials), zero)
        if infeas > 0:
            return LPResult(LPStatus.INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] in artificials:
                j = next((j for j in real_cols if tab.rows[i][j]), None)
                if j is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1
        for row in tab.rows:
            for j in artificials:
                row[j] = zero

    phase2 = [zero + c for c in cost] + [zero] * (width - n)
    if not tab.optimize(phase2, real_cols):
        return LPResult(LPStatus.UNBOUNDED, pivots=tab.pivots)
    x = [zero] * n
    for i, b in enumerate(tab.basis):
        if b < n:
            x[b] = tab.rows[i][-1]
    objective = sum((c * v for c, v in zip(phase2, x)), zero)
    return LPResult(LPStatus.OPTIMAL, x, objective, tab.pivots)
