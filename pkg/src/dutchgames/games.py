"""Short Conway games as hash-consed immutable nodes.

Every game ``{L | R}`` is interned: building the same option sets twice
returns the same :class:`Game` object, so Python identity is structural
equality.  Game *equality* in the Conway sense (``G - H`` is a second
player win) is :func:`eq`; the comparison operators ``<=``, ``<``, ``>=``,
``>`` follow the game order, while ``==`` stays structural.
"""

from __future__ import annotations

import enum
import itertools
import random
import sys
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

__all__ = [
    "Game",
    "Status",
    "make_game",
    "ZERO",
    "ONE",
    "STAR",
    "UP",
    "DOWN",
    "neg",
    "add",
    "sub",
    "nmul",
    "le",
    "lt",
    "ge",
    "gt",
    "eq",
    "confused",
    "compare",
    "status",
    "status_bruteforce",
    "canonical",
    "is_number",
    "game_to_number",
    "number_to_game",
    "is_dyadic",
    "left_stop",
    "right_stop",
    "is_infinitesimal",
    "random_game",
    "NotANumber",
    "NonDyadicNumber",
    "SearchBudgetExceeded",
]

# Order recursions descend one move per frame pair; sums of a few dozen
# canonical copies stay well inside this.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


class NotANumber(ValueError):
    pass


class NonDyadicNumber(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


class Status(enum.Enum):
    """Outcome class of a game under optimal play."""

    ZERO = "Zero"  # second player wins
    POSITIVE = "Positive"  # Left wins whoever starts
    NEGATIVE = "Negative"  # Right wins whoever starts
    FUZZY = "Fuzzy"  # first player wins

    def __str__(self):
        return self.value


class Game:
    __slots__ = ("left", "right", "uid")

    left: Tuple["Game", ...]
    right: Tuple["Game", ...]
    uid: int

    def __new__(cls, *args, **kwargs):
        raise TypeError("use make_game() to build games")

    def __repr__(self):
        return f"Game({format_game(self)!r})"

    def __str__(self):
        return format_game(self)

    def __reduce__(self):
        return (make_game, (self.left, self.right))

    def __neg__(self):
        return neg(self)

    def __add__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return add(self, neg(other))

    def __le__(self, other):
        return le(self, other)

    def __ge__(self, other):
        return le(other, self)

    def __lt__(self, other):
        return lt(self, other)

    def __gt__(self, other):
        return lt(other, self)


_arena: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Game] = {}
_uids = itertools.count()


def make_game(left: Iterable[Game] = (), right: Iterable[Game] = ()) -> Game:
    """Return the unique stored node with these option sets."""
    lset = sorted(set(left), key=lambda g: g.uid)
    rset = sorted(set(right), key=lambda g: g.uid)
    key = (tuple(g.uid for g in lset), tuple(g.uid for g in rset))
    node = _arena.get(key)
    if node is None:
        node = object.__new__(Game)
        node.left = tuple(lset)
        node.right = tuple(rset)
        node.uid = next(_uids)
        _arena[key] = node
    return node


ZERO = make_game()
ONE = make_game([ZERO])
STAR = make_game([ZERO], [ZERO])
UP = make_game([ZERO], [STAR])


# -- arithmetic -------------------------------------------------------------

_neg_memo: Dict[Game, Game] = {}
_add_memo: Dict[Tuple[Game, Game], Game] = {}


def neg(g: Game) -> Game:
    r = _neg_memo.get(g)
    if r is None:
        r = make_game([neg(x) for x in g.right], [neg(x) for x in g.left])
        _neg_memo[g] = r
        _neg_memo[r] = g
    return r


DOWN = neg(UP)


def add(g: Game, h: Game) -> Game:
    """Disjunctive sum, built option by option (no simplification)."""
    if g is ZERO:
        return h
    if h is ZERO:
        return g
    if h.uid < g.uid:
        g, h = h, g
    key = (g, h)
    r = _add_memo.get(key)
    if r is None:
        left = [add(x, h) for x in g.left] + [add(g, x) for x in h.left]
        right = [add(x, h) for x in g.right] + [add(g, x) for x in h.right]
        r = make_game(left, right)
        _add_memo[key] = r
    return r


def sub(g: Game, h: Game) -> Game:
    return add(g, neg(h))


def nmul(n: int, g: Game) -> Game:
    """``n`` copies of ``g`` (``|n|`` copies of ``-g`` for negative ``n``).

    Partial sums are reduced to canonical form while doubling, so the
    result is equal to the literal iterated sum but stays small.
    """
    if n < 0:
        return nmul(-n, neg(g))
    g = canonical(g)
    out = ZERO
    while n:
        if n & 1:
            out = canonical(add(out, g))
        n >>= 1
        if n:
            g = canonical(add(g, g))
    return out


# -- order ------------------------------------------------------------------

_le_memo: Dict[Tuple[Game, Game], bool] = {}
_number_memo: Dict[Game, Optional[Fraction]] = {}  # canonical node -> value or None


def le(g: Game, h: Game) -> bool:
    """``g <= h``: no left option of g is ``>= h`` and no right option of h is ``<= g``."""
    key = (g, h)
    r = _le_memo.get(key)
    if r is None:
        gv, hv = _number_memo.get(g), _number_memo.get(h)
        if gv is not None and hv is not None:
            # both are canonical number forms with known values
            r = gv <= hv
            _le_memo[key] = r
            return r
        r = g is h or (
            not any(le(h, gl) for gl in g.left) and not any(le(hr, g) for hr in h.right)
        )
        _le_memo[key] = r
    return r


def ge(g: Game, h: Game) -> bool:
    return le(h, g)


def eq(g: Game, h: Game) -> bool:
    return le(g, h) and le(h, g)


def lt(g: Game, h: Game) -> bool:
    return le(g, h) and not le(h, g)


def gt(g: Game, h: Game) -> bool:
    return lt(h, g)


def confused(g: Game, h: Game) -> bool:
    return not le(g, h) and not le(h, g)


def compare(g: Game, h: Game) -> str:
    """One of ``'<'``, ``'>'``, ``'='`` or ``'‖'`` (confused)."""
    a, b = le(g, h), le(h, g)
    if a and b:
        return "="
    if a:
        return "<"
    if b:
        return ">"
    return "‖"


def status(g: Game) -> Status:
    a, b = le(g, ZERO), le(ZERO, g)
    if a and b:
        return Status.ZERO
    if b:
        return Status.POSITIVE
    if a:
        return Status.NEGATIVE
    return Status.FUZZY


def status_bruteforce(g: Game, budget: int = 1_000_000) -> Status:
    """Status by exhaustive alternating play, independent of :func:`le`.

    A player who is to move and has no options loses.
    """
    memo: Dict[Tuple[Game, bool], bool] = {}

    def mover_wins(pos: Game, left_to_move: bool) -> bool:
        key = (pos, left_to_move)
        r = memo.get(key)
        if r is None:
            if len(memo) >= budget:
                raise SearchBudgetExceeded(f"more than {budget} positions")
            opts = pos.left if left_to_move else pos.right
            r = any(not mover_wins(o, not left_to_move) for o in opts)
            memo[key] = r
        return r

    left_first = mover_wins(g, True)
    right_first = mover_wins(g, False)
    if left_first and right_first:
        return Status.FUZZY
    if left_first:
        return Status.POSITIVE
    if right_first:
        return Status.NEGATIVE
    return Status.ZERO


# -- canonical form -----------------------------------------------------------

_canon_memo: Dict[Game, Game] = {}


def _undominated(opts: List[Game], left: bool) -> List[Game]:
    opts = list(dict.fromkeys(opts))
    keep = []
    for i, x in enumerate(opts):
        dominated = False
        for j, y in enumerate(opts):
            if i == j:
                continue
            # Left prefers larger options, Right smaller ones; ties keep the earlier
            worse = le(x, y) if left else le(y, x)
            if worse and (not eq(x, y) or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(x)
    return keep


def canonical(g: Game) -> Game:
    """Simplest form equal to g: dominated options deleted, reversible ones bypassed."""
    r = _canon_memo.get(g)
    if r is not None:
        return r
    left = [canonical(x) for x in g.left]
    right = [canonical(x) for x in g.right]
    while True:
        left = _undominated(left, True)
        right = _undominated(right, False)
        current = make_game(left, right)
        changed = False
        new_left: List[Game] = []
        for gl in left:
            rev = next((glr for glr in gl.right if le(glr, current)), None)
            if rev is None:
                new_left.append(gl)
            else:
                new_left.extend(rev.left)
                changed = True
        new_right: List[Game] = []
        for gr in right:
            rev = next((grl for grl in gr.left if le(current, grl)), None)
            if rev is None:
                new_right.append(gr)
            else:
                new_right.extend(rev.right)
                changed = True
        if not changed:
            break
        left, right = new_left, new_right
    _canon_memo[g] = current
    _canon_memo[current] = current
    return current


# -- numbers ------------------------------------------------------------------


def is_dyadic(x) -> bool:
    d = Fraction(x).denominator
    return d & (d - 1) == 0


def simplest_between(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    """Simplest dyadic strictly between lo and hi (None means unbounded)."""
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError("empty interval")
    if (lo is None or lo < 0) and (hi is None or hi > 0):
        return Fraction(0)
    if lo is not None and lo >= 0:
        n = int(lo) + 1  # floor(lo) + 1 for lo >= 0
        if hi is None or n < hi:
            return Fraction(n)
    else:
        n = -(int(-hi) + 1)  # hi <= 0
        if lo is None or n > lo:
            return Fraction(n)
    # no integer fits: the dyadic with least denominator is unique
    k = 1
    while True:
        scale = 2**k
        m = (lo * scale).__floor__() + 1
        cand = Fraction(m, scale)
        if cand < hi:
            return cand
        k += 1


def _number_value(c: Game) -> Optional[Fraction]:
    """Value of a canonical game if it is a number, else None."""
    if c in _number_memo:
        return _number_memo[c]
    lvals = [_number_value(x) for x in c.left]
    rvals = [_number_value(x) for x in c.right]
    value = None
    if None not in lvals and None not in rvals:
        lo = max(lvals) if lvals else None
        hi = min(rvals) if rvals else None
        if lo is None or hi is None or lo < hi:
            value = simplest_between(lo, hi)
    _number_memo[c] = value
    return value


def is_number(g: Game) -> bool:
    return _number_value(canonical(g)) is not None


def game_to_number(g: Game) -> Fraction:
    """The dyadic rational a number-valued game equals."""
    v = _number_value(canonical(g))
    if v is None:
        raise NotANumber(f"{format_game(g)} is not a number")
    return v


_from_number: Dict[Fraction, Game] = {}


def number_to_game(x) -> Game:
    """Canonical game of a dyadic rational: ``n = {n-1|}``, ``m/2^k = {(m-1)/2^k | (m+1)/2^k}``."""
    x = Fraction(x)
    if not is_dyadic(x):
        raise NonDyadicNumber(f"{x} is not a dyadic rational")
    g = _from_number.get(x)
    if g is None:
        if x.denominator > 1:
            step = Fraction(1, x.denominator)
            g = make_game([number_to_game(x - step)], [number_to_game(x + step)])
        elif x > 0:
            g = make_game([number_to_game(x - 1)])
        elif x < 0:
            g = make_game([], [number_to_game(x + 1)])
        else:
            g = ZERO
        _from_number[x] = g
        _number_memo[g] = x
    return g


# -- stops and infinitesimals -------------------------------------------------

_stop_memo: Dict[Tuple[Game, bool], Fraction] = {}


def _stop(c: Game, left: bool) -> Fraction:
    key = (c, left)
    r = _stop_memo.get(key)
    if r is None:
        r = _number_value(c)
        if r is None:
            if left:
                r = max(_stop(x, False) for x in c.left)
            else:
                r = min(_stop(x, True) for x in c.right)
        _stop_memo[key] = r
    return r


def left_stop(g: Game) -> Fraction:
    return _stop(canonical(g), True)


def right_stop(g: Game) -> Fraction:
    return _stop(canonical(g), False)


def is_infinitesimal(g: Game) -> bool:
    """True iff both stops are 0, i.e. ``-2^-m <= g <= 2^-m`` for every m.

    For short games this also means ``-s <= g <= s`` for every positive
    surreal ``s`` (strongly infinitesimal).
    """
    return left_stop(g) == 0 and right_stop(g) == 0


# -- random games -------------------------------------------------------------


def random_game(rng: random.Random, depth: int = 3, branching: int = 3) -> Game:
    """Random game tree of nesting depth <= depth and at most ``branching`` options per side."""
    if depth <= 0 or rng.random() < 0.2:
        return ZERO
    left = [random_game(rng, depth - 1, branching) for _ in range(rng.randint(0, branching))]
    right = [random_game(rng, depth - 1, branching) for _ in range(rng.randint(0, branching))]
    return make_game(left, right)


# -- text ---------------------------------------------------------------------

from .gameparse import format_game, parse_game  # noqa: E402

__all__ += ["format_game", "parse_game", "simplest_between"]
