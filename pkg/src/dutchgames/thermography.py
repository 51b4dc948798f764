"""Thermographs, mean values and temperatures of short games."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .games import Game, _number_value, canonical, is_dyadic, le, nmul, number_to_game

__all__ = [
    "PiecewiseLinear",
    "Thermograph",
    "thermograph",
    "mean",
    "temperature",
    "mean_bound_check",
    "mean_value_bound",
    "ceil_dyadic",
    "NonDyadicBound",
]


class NonDyadicBound(ValueError):
    pass


Point = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function on ``t >= 0``.

    ``points`` are ``(t, value)`` breakpoints starting at ``t = 0``; past the
    last breakpoint the function continues with slope ``tail_slope``.
    """

    points: Tuple[Point, ...]
    tail_slope: Fraction

    @classmethod
    def constant(cls, value) -> "PiecewiseLinear":
        return cls(((Fraction(0), Fraction(value)),), Fraction(0))

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        pts = self.points
        if t >= pts[-1][0]:
            t0, v0 = pts[-1]
            return v0 + self.tail_slope * (t - t0)
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t0 <= t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        raise ValueError(f"t={t} is negative")

    def slopes(self) -> List[Fraction]:
        out = [(v1 - v0) / (t1 - t0) for (t0, v0), (t1, v1) in zip(self.points, self.points[1:])]
        return out + [self.tail_slope]

    def tilted(self, slope) -> "PiecewiseLinear":
        """``f(t) + slope * t``."""
        slope = Fraction(slope)
        return PiecewiseLinear(
            tuple((t, v + slope * t) for t, v in self.points), self.tail_slope + slope
        )

    def frozen_at(self, t_stop: Fraction) -> "PiecewiseLinear":
        """Follow f up to ``t_stop`` and stay constant afterwards."""
        pts = [p for p in self.points if p[0] < t_stop]
        pts.append((t_stop, self(t_stop)))
        return PiecewiseLinear(tuple(pts), Fraction(0))._simplified()

    def _simplified(self) -> "PiecewiseLinear":
        pts = list(self.points)
        out = [pts[0]]
        for i in range(1, len(pts)):
            nxt_slope = (
                (pts[i + 1][1] - pts[i][1]) / (pts[i + 1][0] - pts[i][0])
                if i + 1 < len(pts)
                else self.tail_slope
            )
            prev = out[-1]
            slope_in = (pts[i][1] - prev[1]) / (pts[i][0] - prev[0])
            if slope_in != nxt_slope:
                out.append(pts[i])
        return PiecewiseLinear(tuple(out), self.tail_slope)


def _combine(f: PiecewiseLinear, g: PiecewiseLinear, pick: Callable) -> PiecewiseLinear:
    ts = sorted({t for t, _ in f.points} | {t for t, _ in g.points})
    extra = []
    for a, b in zip(ts, ts[1:]):
        da, db = f(a) - g(a), f(b) - g(b)
        if (da < 0 < db) or (db < 0 < da):
            extra.append(a + (b - a) * da / (da - db))
    last = ts[-1]
    d_last = f(last) - g(last)
    d_slope = f.tail_slope - g.tail_slope
    if d_slope and d_last and (-d_last / d_slope) > 0:
        extra.append(last - d_last / d_slope)
    ts = sorted(set(ts) | set(extra))
    pts = tuple((t, pick(f(t), g(t))) for t in ts)
    end = ts[-1]
    fe, ge_ = f(end), g(end)
    if fe == ge_:
        tail = pick(f.tail_slope, g.tail_slope)
    else:
        tail = f.tail_slope if pick(fe, ge_) == fe else g.tail_slope
    return PiecewiseLinear(pts, tail)._simplified()


def pl_max(fs: Sequence[PiecewiseLinear]) -> PiecewiseLinear:
    out = fs[0]
    for f in fs[1:]:
        out = _combine(out, f, max)
    return out


def pl_min(fs: Sequence[PiecewiseLinear]) -> PiecewiseLinear:
    out = fs[0]
    for f in fs[1:]:
        out = _combine(out, f, min)
    return out


def _first_meeting(left: PiecewiseLinear, right: PiecewiseLinear) -> Fraction:
    """Smallest t >= 0 with left(t) <= right(t); left - right is non-increasing."""
    ts = sorted({t for t, _ in left.points} | {t for t, _ in right.points})
    prev_t, prev_d = None, None
    for t in ts:
        d = left(t) - right(t)
        if d <= 0:
            if prev_t is None:
                return t
            return prev_t + (t - prev_t) * prev_d / (prev_d - d)
        prev_t, prev_d = t, d
    d_slope = left.tail_slope - right.tail_slope
    if d_slope >= 0:
        raise ArithmeticError("scaffolds never meet")
    return prev_t - prev_d / d_slope


@dataclass(frozen=True)
class Thermograph:
    left_boundary: PiecewiseLinear
    right_boundary: PiecewiseLinear
    mast: Fraction
    temperature: Fraction

    def table(self) -> List[Tuple[Fraction, Fraction, Fraction]]:
        """``(t, left(t), right(t))`` at every breakpoint of either boundary."""
        ts = sorted({t for t, _ in self.left_boundary.points} | {t for t, _ in self.right_boundary.points})
        return [(t, self.left_boundary(t), self.right_boundary(t)) for t in ts]


_thermo_memo: Dict[Game, Thermograph] = {}


def thermograph(g: Game) -> Thermograph:
    """Thermograph of the canonical form of g.

    Numbers are bare masts of temperature 0.  Otherwise the left scaffold
    is the max over left options of their right boundary minus t, the right
    scaffold the min over right options of their left boundary plus t, and
    both freeze into the mast where they first meet.
    """
    c = canonical(g)
    th = _thermo_memo.get(c)
    if th is not None:
        return th
    v = _number_value(c)
    if v is not None:
        wall = PiecewiseLinear.constant(v)
        th = Thermograph(wall, wall, v, Fraction(0))
    else:
        # canonical games with an empty side are numbers, so both sides are populated
        lsc = pl_max([thermograph(x).right_boundary.tilted(-1) for x in c.left])
        rsc = pl_min([thermograph(x).left_boundary.tilted(1) for x in c.right])
        if lsc(0) < rsc(0):
            raise ArithmeticError(f"cold scaffolds for non-number {c}")
        tau = _first_meeting(lsc, rsc)
        mast = lsc(tau)
        th = Thermograph(lsc.frozen_at(tau), rsc.frozen_at(tau), mast, tau)
    _thermo_memo[c] = th
    return th


def mean(g: Game) -> Fraction:
    return thermograph(g).mast


def temperature(g: Game) -> Fraction:
    return thermograph(g).temperature


def ceil_dyadic(x) -> Fraction:
    """x itself if dyadic, otherwise its integer ceiling."""
    x = Fraction(x)
    return x if is_dyadic(x) else Fraction(math.ceil(x))


def mean_value_bound(g: Game) -> Fraction:
    """A constant m with ``n*mean(g) - m <= n*g <= n*mean(g) + m`` for every n."""
    return ceil_dyadic(temperature(g)) + 1


def mean_bound_check(g: Game, n: int, m) -> bool:
    """Check ``n*mean(g) - m <= n*g <= n*mean(g) + m`` by exact game comparison."""
    m = Fraction(m)
    centre = n * mean(g)
    lo, hi = centre - m, centre + m
    if not (is_dyadic(lo) and is_dyadic(hi)):
        raise NonDyadicBound(f"bounds {lo}, {hi} are not dyadic; round m outward")
    ng = nmul(n, g)
    return le(number_to_game(lo), ng) and le(ng, number_to_game(hi))
