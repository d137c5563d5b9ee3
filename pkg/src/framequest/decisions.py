"""Pure decision-theory math: prospects, expected value/utility, the
reference-point-relative value function, and Allais-pattern consistency checks.

All prospect arithmetic is exact. Probabilities and outcome values are held as
rationals; floats given as inputs are interpreted through their decimal literal
(so 0.6 means 3/5, not the nearest binary double). Conversion to float happens
only at the very end of a computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence, Union

Numberish = Union[int, float, str, Fraction]


class ValidationError(ValueError):
    """A value violates a structural invariant (bad probabilities, bad params)."""


class UtilityDomainError(ValueError):
    """The supplied utility map is undefined at one of the prospect's outcomes."""


class WeightingContractError(ValueError):
    """A probability weighting function does not satisfy w(0)=0 and w(1)=1."""


def to_fraction(x: Numberish) -> Fraction:
    """Convert to an exact rational.

    Floats go through their shortest decimal repr, so literals like 0.875 and
    0.6 mean the decimal they were written as. Pass a Fraction or a string
    such as "1/3" for non-decimal rationals.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValidationError(f"expected a number, got bool {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValidationError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse {x!r} as a rational") from exc
    raise ValidationError(f"cannot convert {type(x).__name__} to a rational")


class Domain(str, Enum):
    """What an outcome value counts: health points, gold coins, lives, or money."""

    HEALTH = "health"
    GOLD = "gold"
    LIVES = "lives"
    MONEY = "abstract-money"


@dataclass(frozen=True)
class Prospect:
    """A set of (outcome value, probability) pairs in one domain.

    Certain if a single outcome carries probability 1, risky otherwise.
    Probabilities must be non-negative and sum to exactly 1 (rational
    arithmetic, no tolerance).
    """

    outcomes: tuple[tuple[Fraction, Fraction], ...]
    domain: Domain

    def __init__(self, outcomes: Sequence[tuple[Numberish, Numberish]], domain: Domain | str) -> None:
        pairs = tuple((to_fraction(v), to_fraction(p)) for v, p in outcomes)
        if not pairs:
            raise ValidationError("a prospect needs at least one outcome")
        for _, p in pairs:
            if p < 0:
                raise ValidationError(f"negative probability {p}")
        total = sum((p for _, p in pairs), Fraction(0))
        if total != 1:
            raise ValidationError(f"probabilities sum to {total}, expected exactly 1")
        object.__setattr__(self, "outcomes", pairs)
        object.__setattr__(self, "domain", Domain(domain))

    @property
    def is_certain(self) -> bool:
        return len(self.outcomes) == 1 and self.outcomes[0][1] == 1


@dataclass(frozen=True)
class ValueFnParams:
    """Power-form value function parameters.

    alpha curves gains, beta curves losses (both in (0, 1]); loss_aversion
    scales losses and must be >= 1. Defaults are the standard literature
    values; they are configuration, not ground truth.
    """

    alpha: float = 0.88
    beta: float = 0.88
    loss_aversion: float = 2.25

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "loss_aversion"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValidationError(f"{name} must be finite, got {v!r}")
        if not 0 < self.alpha <= 1:
            raise ValidationError(f"alpha must be in (0, 1], got {self.alpha}")
        if not 0 < self.beta <= 1:
            raise ValidationError(f"beta must be in (0, 1], got {self.beta}")
        if self.loss_aversion < 1:
            raise ValidationError(f"loss_aversion must be >= 1, got {self.loss_aversion}")


DEFAULT_VALUE_PARAMS = ValueFnParams()


class Lottery(str, Enum):
    """The four named lotteries of the two-gamble certainty demonstration."""

    ONE_A = "1A"
    ONE_B = "1B"
    TWO_A = "2A"
    TWO_B = "2B"


# Payoffs in millions of dollars, exactly as the four-lottery demo states them.
ALLAIS_GAMBLES: dict[Lottery, Prospect] = {
    Lottery.ONE_A: Prospect([(100, 1)], Domain.MONEY),
    Lottery.ONE_B: Prospect([(100, "0.89"), (500, "0.10"), (0, "0.01")], Domain.MONEY),
    Lottery.TWO_A: Prospect([(0, "0.89"), (100, "0.11")], Domain.MONEY),
    Lottery.TWO_B: Prospect([(0, "0.90"), (500, "0.10")], Domain.MONEY),
}


@dataclass(frozen=True)
class AllaisChoice:
    """One respondent's pick in each of the two gambles."""

    gamble_a: Lottery
    gamble_b: Lottery

    def __post_init__(self) -> None:
        if self.gamble_a not in (Lottery.ONE_A, Lottery.ONE_B):
            raise ValidationError(f"gamble_a must be 1A or 1B, got {self.gamble_a}")
        if self.gamble_b not in (Lottery.TWO_A, Lottery.TWO_B):
            raise ValidationError(f"gamble_b must be 2A or 2B, got {self.gamble_b}")


def expected_value_exact(p: Prospect) -> Fraction:
    """Probability-weighted sum of outcome values, as an exact rational."""
    return sum((v * pr for v, pr in p.outcomes), Fraction(0))


def expected_value(p: Prospect) -> float:
    """Probability-weighted sum of outcome values, converted to float at the end."""
    return float(expected_value_exact(p))


UtilityFn = Union[Callable[[Fraction], float], Mapping[Fraction, float]]


def expected_utility(p: Prospect, u: UtilityFn) -> float:
    """Probability-weighted sum of outcome utilities.

    ``u`` may be a callable or a mapping keyed by outcome value; a mapping
    missing one of the prospect's outcomes raises UtilityDomainError. Exact
    utilities (ints, Fractions) are accumulated exactly and converted to
    float only at the end, so the identity utility reproduces expected_value
    without rounding.
    """
    if callable(u):
        lookup = u
    else:
        mapping = u

        def lookup(x: Fraction) -> float:
            try:
                return mapping[x]
            except KeyError:
                raise UtilityDomainError(f"utility undefined at outcome {x}") from None

    total: Any = 0
    for v, pr in p.outcomes:
        total = total + lookup(v) * pr
    return float(total)


def pt_value(x: float, params: ValueFnParams = DEFAULT_VALUE_PARAMS) -> float:
    """S-shaped value of a deviation from the reference point (housed at 0).

    Gains follow x**alpha; losses follow -loss_aversion * (-x)**beta.
    """
    x = float(x)
    if x >= 0:
        return x ** params.alpha
    return -params.loss_aversion * (-x) ** params.beta


def _check_weighting(w: Callable[[float], float]) -> None:
    w0, w1 = w(0.0), w(1.0)
    if not (math.isclose(w0, 0.0, abs_tol=1e-9) and math.isclose(w1, 1.0, abs_tol=1e-9)):
        raise WeightingContractError(f"weighting must fix the endpoints, got w(0)={w0!r}, w(1)={w1!r}")


def pt_prospect_value(
    p: Prospect,
    params: ValueFnParams = DEFAULT_VALUE_PARAMS,
    weighting: Callable[[float], float] | None = None,
) -> float:
    """Decision-weighted sum of value-transformed outcomes.

    The weighting must map [0,1] into [0,1] with w(0)=0 and w(1)=1; omitted,
    it defaults to the identity (objective probabilities).
    """
    if weighting is None:
        weighting = lambda q: q  # noqa: E731
    else:
        _check_weighting(weighting)
    return sum(weighting(float(pr)) * pt_value(float(v), params) for v, pr in p.outcomes)


def allais_violates_eut(c: AllaisChoice) -> bool:
    """True iff the choice pattern is inconsistent with expected utility.

    With u(0)=0, preferring 1A reduces to 0.11*u(100M) > 0.10*u(500M) and
    preferring 2A reduces to the same inequality, so the mixed patterns
    (1A, 2B) and (1B, 2A) demand the inequality and its negation at once.
    """
    certain_first = c.gamble_a is Lottery.ONE_A
    certain_second = c.gamble_b is Lottery.TWO_A
    return certain_first != certain_second


def prospects_equal_ev(a: Prospect, b: Prospect) -> bool:
    """Exact rational equality of expected values; domains must match."""
    if a.domain is not b.domain:
        raise ValidationError(f"domain mismatch: {a.domain.value} vs {b.domain.value}")
    return expected_value_exact(a) == expected_value_exact(b)
