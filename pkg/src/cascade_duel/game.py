"""Hotelling-style positions, best responses, Nash search, margin verdicts.

The population is normalized to [0, 1]. Firm 1 occupies the interval
[0, frac1] and sits at its midpoint; firm 2 occupies [1 - frac2, 1] and
sits at its midpoint. Best responses are set-valued; the games here have
the mean position 0.5 as their unique mutual best response.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

EPS = 1e-9

INFORMED = "informed"
SUPPORTER = "supporter"


class GameVerdict(Enum):
    FIRM1_WINS = "FIRM1_WINS"
    FIRM2_WINS = "FIRM2_WINS"
    EQUILIBRIUM = "EQUILIBRIUM"


class NashConsistencyError(RuntimeError):
    """The best-response scan disagreed with the uniqueness argument."""


@dataclass(frozen=True)
class ResponseSet:
    """Interval with open/closed endpoints, a singleton, or undefined.

    `undefined` marks opponent positions for which the best-response
    correspondence has no defined case (firm 1 against x2 < 0.5 and the
    mirror image); such sets are empty.
    """

    lo: float | None = None
    hi: float | None = None
    lo_open: bool = False
    hi_open: bool = False
    undefined: bool = False

    @classmethod
    def singleton(cls, x: float) -> "ResponseSet":
        return cls(lo=x, hi=x)

    @classmethod
    def empty_undefined(cls) -> "ResponseSet":
        return cls(undefined=True)

    def is_empty(self) -> bool:
        return self.lo is None

    def contains(self, x: float) -> bool:
        if self.is_empty():
            return False
        above = x > self.lo + EPS if self.lo_open else x >= self.lo - EPS
        below = x < self.hi - EPS if self.hi_open else x <= self.hi + EPS
        return above and below


@dataclass(frozen=True)
class BestResponse:
    responder: int
    opponent_position: float
    response_set: ResponseSet


@dataclass(frozen=True)
class PositionModel:
    basis: str
    frac1: float
    frac2: float
    position1: float
    position2: float
    interval1: tuple[float, float]
    interval2: tuple[float, float]
    overlap: tuple[float, float] | None


@dataclass(frozen=True)
class MarginVerdict:
    rho1: float
    rho2: float
    margin: float
    verdict: GameVerdict


def positions(frac1: float, frac2: float, basis: str = INFORMED) -> PositionModel:
    """Midpoint positions from the two firms' reached fractions."""
    for f in (frac1, frac2):
        if not (0.0 <= f <= 1.0):
            raise ValueError(f"fraction {f} outside [0, 1]")
    if basis not in (INFORMED, SUPPORTER):
        raise ValueError(f"basis must be '{INFORMED}' or '{SUPPORTER}'")
    lo2 = 1.0 - frac2
    overlap = (lo2, frac1) if lo2 <= frac1 else None
    return PositionModel(basis=basis, frac1=frac1, frac2=frac2,
                         position1=frac1 / 2.0, position2=1.0 - frac2 / 2.0,
                         interval1=(0.0, frac1), interval2=(lo2, 1.0),
                         overlap=overlap)


def best_response(responder: int, opponent_pos: float) -> BestResponse:
    """Set-valued best response of one firm to the other's position.

    Firm 1 against x2 > 0.5 wins anywhere in ((1-x2), 0.5]; against
    x2 = 0.5 only 0.5 ties. The correspondence is undefined for
    x2 < 0.5 (and mirrored for firm 2), which is reported explicitly
    rather than extended.
    """
    if responder not in (1, 2):
        raise ValueError("responder must be firm 1 or 2")
    if not (0.0 <= opponent_pos <= 1.0):
        raise ValueError(f"opponent position {opponent_pos} outside [0, 1]")
    if responder == 1:
        if opponent_pos > 0.5 + EPS:
            rs = ResponseSet(lo=1.0 - opponent_pos, hi=0.5, lo_open=True)
        elif abs(opponent_pos - 0.5) <= EPS:
            rs = ResponseSet.singleton(0.5)
        else:
            rs = ResponseSet.empty_undefined()
    else:
        if opponent_pos < 0.5 - EPS:
            rs = ResponseSet(lo=0.5, hi=1.0 - opponent_pos, hi_open=True)
        elif abs(opponent_pos - 0.5) <= EPS:
            rs = ResponseSet.singleton(0.5)
        else:
            rs = ResponseSet.empty_undefined()
    return BestResponse(responder=responder, opponent_position=opponent_pos,
                        response_set=rs)


def nash(step: float = 0.01) -> tuple[float, float]:
    """Scan a position lattice for mutual best responses.

    The correspondences admit exactly one fixed point, (0.5, 0.5); any
    other outcome raises NashConsistencyError.
    """
    if step <= 0 or step > 0.5:
        raise ValueError("step must be in (0, 0.5]")
    k = int(round(1.0 / step))
    grid = [i / k for i in range(k + 1)]
    fixed_points = []
    for x1 in grid:
        for x2 in grid:
            if best_response(1, x2).response_set.contains(x1) and \
               best_response(2, x1).response_set.contains(x2):
                fixed_points.append((x1, x2))
    if fixed_points != [(0.5, 0.5)]:
        raise NashConsistencyError(
            f"expected the single fixed point (0.5, 0.5), found {fixed_points}")
    return (0.5, 0.5)


def margin_verdict(rho1: float, rho2: float, margin: float = 0.05) -> MarginVerdict:
    """Declare equilibrium when supporter fractions differ by less than
    the margin, otherwise the larger fraction wins."""
    if not (0.0 < margin < 1.0):
        raise ValueError(f"margin {margin} outside (0, 1)")
    for r in (rho1, rho2):
        if not (0.0 <= r <= 1.0):
            raise ValueError(f"supporter fraction {r} outside [0, 1]")
    if abs(rho1 - rho2) < margin:
        v = GameVerdict.EQUILIBRIUM
    elif rho1 > rho2:
        v = GameVerdict.FIRM1_WINS
    else:
        v = GameVerdict.FIRM2_WINS
    return MarginVerdict(rho1=rho1, rho2=rho2, margin=margin, verdict=v)
