"""Degree-sequence conditions for Hamiltonicity, evaluated on sorted sequences.

Indices are 1-based. When an index computed from i, j and t falls beyond n, the term it names
does not exist: an antecedent mentioning it cannot fire and a consequent mentioning it fails.
"""

__all__ = [
    "ConditionName",
    "ConditionVerdict",
    "bauer_bound",
    "chvatal_condition",
    "evaluate_condition",
    "hoang_condition",
    "strengthened_condition",
]

import logging
from enum import Enum
from fractions import Fraction

from pydantic import Field

from hamilton_toughness.errors import InputError
from hamilton_toughness.graph import DegreeSequence
from hamilton_toughness.utils import BaseModel, parse_rational

LOGGER = logging.getLogger(__name__)


class ConditionName(str, Enum):
    CHVATAL = "chvatal"
    HOANG = "hoang"
    STRENGTHENED = "strong"


class ConditionVerdict(BaseModel, frozen=True):
    condition: ConditionName
    t: int
    n: int
    holds: bool
    # Whether some antecedent was satisfied, i.e. the condition had something to check.
    fired: bool
    violating_i: int | None = None
    violating_j: int | None = None
    detail: dict[str, int | None] = Field(default_factory=dict)


def _require_order(seq: DegreeSequence) -> None:
    if seq.n < 3:
        raise InputError(f"Degree conditions need n >= 3, got n = {seq.n}")


def _require_t(t: int, minimum: int) -> None:
    if t < minimum:
        raise InputError(f"t must be at least {minimum}, got {t}")


def _hoang(seq: DegreeSequence, t: int, name: ConditionName) -> ConditionVerdict:
    n = seq.n
    fired = False
    for i in range(1, (n + 1) // 2):
        d_i = seq.d(i)
        if d_i > i:
            continue
        fired = True
        m = n - i + t
        d_m = seq.get(m)
        if d_m is None or d_m < n - i:
            return ConditionVerdict(
                condition=name,
                t=t,
                n=n,
                holds=False,
                fired=True,
                violating_i=i,
                detail={"d_i": d_i, "m": m, "d_m": d_m, "required": n - i},
            )
    return ConditionVerdict(condition=name, t=t, n=n, holds=True, fired=fired)


def chvatal_condition(seq: DegreeSequence) -> ConditionVerdict:
    """For every i < n/2: d_i <= i implies d_{n-i} >= n - i."""
    _require_order(seq)
    return _hoang(seq, 0, ConditionName.CHVATAL)


def hoang_condition(seq: DegreeSequence, t: int) -> ConditionVerdict:
    """For every i < n/2: d_i <= i implies d_{n-i+t} >= n - i. t = 0 is Chvatal's condition."""
    _require_order(seq)
    _require_t(t, 0)
    return _hoang(seq, t, ConditionName.HOANG)


def strengthened_condition(seq: DegreeSequence, t: int) -> ConditionVerdict:
    """For every i <= (n-1)/2 with d_i <= i and d_{n-i+t} < n - i, every j in (i, (n-1)/2]
    has d_j + d_{n-j+t} >= n. Reports the first failing (i, j).
    """
    _require_order(seq)
    _require_t(t, 1)
    n = seq.n
    half = (n - 1) // 2
    fired = False
    for i in range(1, half + 1):
        d_i = seq.d(i)
        m = n - i + t
        d_m = seq.get(m)
        if d_i > i or d_m is None or d_m >= n - i:
            continue
        fired = True
        for j in range(i + 1, half + 1):
            d_j = seq.d(j)
            mj = n - j + t
            d_mj = seq.get(mj)
            if d_mj is None or d_j + d_mj < n:
                LOGGER.debug("Strengthened condition fails at i=%d, j=%d (t=%d)", i, j, t)
                return ConditionVerdict(
                    condition=ConditionName.STRENGTHENED,
                    t=t,
                    n=n,
                    holds=False,
                    fired=True,
                    violating_i=i,
                    violating_j=j,
                    detail={
                        "d_i": d_i,
                        "m": m,
                        "d_m": d_m,
                        "d_j": d_j,
                        "mj": mj,
                        "d_mj": d_mj,
                    },
                )
    return ConditionVerdict(
        condition=ConditionName.STRENGTHENED, t=t, n=n, holds=True, fired=fired
    )


def evaluate_condition(name: ConditionName, seq: DegreeSequence, t: int = 0) -> ConditionVerdict:
    if name is ConditionName.CHVATAL:
        return chvatal_condition(seq)
    if name is ConditionName.HOANG:
        return hoang_condition(seq, t)
    return strengthened_condition(seq, t)


def bauer_bound(n: int, t: str | int | Fraction, min_degree: int) -> bool:
    """delta > n / (t + 1) - 1, compared exactly."""
    t = parse_rational(t)
    if t < 0:
        raise InputError("t must be non-negative")
    return min_degree > Fraction(n) / (t + 1) - 1
