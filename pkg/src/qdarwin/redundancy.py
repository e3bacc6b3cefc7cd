"""Redundancy: how many disjoint fragments almost-know the system.

A fragment qualifies at level delta when its mutual information with the
system reaches (1 - delta)/2 of the total I available to the whole
environment.  d_r is the fragment decoherence factor where that threshold
is crossed; d_E / d_r - 1 is the idealized (infinitely divisible) count,
and a greedy partition gives an integer witness that is never optimistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .branch import DecoherenceProfile, entropy_h, subset_mutual_information

# Slack granted when checking a part against the MI threshold; the witness
# invariant promises parts within this of the exact target, and it absorbs
# the one-ulp pessimism of bisection landing on the upper bracket end.
_MI_SLACK = 1e-12


@dataclass(frozen=True)
class RedundancyReport:
    """Outcome of a partition hunt at tolerance delta.

    d_r is None only for a profile with no information at all (d_S = 0).
    parts lists the witness fragments by 0-based environment position;
    r_partition = len(parts) and r_infdiv is the idealized parts-minus-one
    count, fractional for finite profiles.
    """

    delta: float
    d_r: float | None
    r_infdiv: float
    r_partition: int
    parts: tuple

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "parts", tuple(tuple(int(i) for i in p) for p in self.parts)
        )


def _check_delta(delta: float) -> None:
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie strictly inside (0, 1), got {delta}")


def critical_d(p0: float, d_S: float, delta: float) -> float:
    """Fragment d at which I(fragment) reaches (1-delta)/2 of the total.

    For finite d_S this solves, by bisection on [0, d_S],

        H(p0, d_S) + H(p0, d) - H(p0, d_S - d) = (1 - delta) * H(p0, d_S);

    for d_S = +inf the overlap term vanishes and it solves
    H(p0, d) = (1 - delta) * H(p0, +inf).  Bisection runs to adjacent
    floats and returns the upper end, so the threshold is met at the
    returned value, never just under it.
    """
    _check_delta(delta)
    if math.isnan(d_S) or d_S <= 0.0:
        raise ValueError(f"d_S must be positive, got {d_S}")
    h_s = entropy_h(p0, d_S)
    if h_s == 0.0:
        raise ValueError("no information to localize: H(p0, d_S) = 0")
    target = (1.0 - delta) * h_s

    if math.isinf(d_S):
        def gain(d: float) -> float:
            return entropy_h(p0, d)

        hi = 1.0
        while gain(hi) < target:
            hi *= 2.0
        lo = 0.0
    else:
        def gain(d: float) -> float:
            return h_s + entropy_h(p0, d) - entropy_h(p0, d_S - d)

        lo, hi = 0.0, d_S

    # invariant: gain(lo) < target <= gain(hi)
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            return hi
        if gain(mid) >= target:
            hi = mid
        else:
            lo = mid


def _split_profile(profile: DecoherenceProfile) -> tuple[int, float]:
    """(count of infinite d_i, sum of the finite ones)."""
    n_inf = sum(1 for x in profile.d if math.isinf(x))
    fin_sum = math.fsum(x for x in profile.d if math.isfinite(x))
    return n_inf, fin_sum


def _infdiv(profile: DecoherenceProfile, d_r: float) -> float:
    n_inf, fin_sum = _split_profile(profile)
    if n_inf == 0:
        return fin_sum / d_r - 1.0
    # An infinite environment fills exactly one part on its own; only the
    # finite leftovers are treated as infinitely divisible.
    return (n_inf + math.floor(fin_sum / d_r)) - 1.0


def redundancy_infdiv(profile: DecoherenceProfile, delta: float) -> float:
    """Idealized redundancy d_E/d_r - 1, allowing fractional parts.

    A profile with no information (all d_i = 0) reports 0.  Infinite d_i
    each anchor one part, counted whole.
    """
    _check_delta(delta)
    d_s = sum(profile.d)
    if d_s == 0.0:
        return 0.0
    return _infdiv(profile, critical_d(profile.p0, d_s, delta))


def redundancy_partition(profile: DecoherenceProfile, delta: float) -> RedundancyReport:
    """Greedy integer witness: disjoint parts each meeting the MI threshold.

    Environments are taken largest-d first; a part closes as soon as its
    mutual information reaches the target, and whatever is left when no
    further part can close is appended to the last complete part (which
    can only raise its information).  The parts count is a lower bound on
    the best possible partition.
    """
    _check_delta(delta)
    d_s = sum(profile.d)
    if d_s == 0.0:
        return RedundancyReport(delta, None, 0.0, 0, ())
    d_r = critical_d(profile.p0, d_s, delta)
    target = (1.0 - delta) * entropy_h(profile.p0, d_s)

    order = np.argsort(-np.array(profile.d), kind="stable")
    parts: list[tuple[int, ...]] = []
    current: list[int] = []
    for i in order:
        current.append(int(i))
        if subset_mutual_information(profile, current) >= target - _MI_SLACK:
            parts.append(tuple(sorted(current)))
            current = []
    if current and parts:
        parts[-1] = tuple(sorted(parts[-1] + tuple(current)))
    return RedundancyReport(
        delta, d_r, _infdiv(profile, d_r), len(parts), tuple(parts)
    )
