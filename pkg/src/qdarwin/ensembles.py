"""Averaged partial information plots for ensembles of decoherence factors.

Fragments of m environments drawn from a profile carry a random total
d; averaging the fragment information over that randomness gives the
ensemble PIP.  Four distribution families are covered:

* Unimodal: every environment has the same d0 (no averaging needed).
* Bimodal: n_useful environments at d0, the rest at 0; fragment content
  is hypergeometric in the number of useful members captured.
* Empirical: an explicit d list, averaged by subset enumeration or
  Monte Carlo.
* Exponential: d_i ~ Exp(1), so a fragment's total d is Erlang(m); the
  mean entropies have a closed form in Riemann zeta values.

All curve values are in bits; scalar entropy helpers return nats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import xlogy, zeta

from .branch import DecoherenceProfile, entropy_h, subset_mutual_information
from .curves import PIPCurve
from .qkernel import LN2, nats_to_bits
from .rng import stream_generator

# Exhaustive subset enumeration refuses beyond this many subsets per point.
HARD_ENUMERATION_CAP = 10**6

_LOG_2_3 = math.log(2.0 / 3.0)


@dataclass(frozen=True)
class Unimodal:
    d0: float

    def __post_init__(self) -> None:
        if math.isnan(self.d0) or self.d0 < 0:
            raise ValueError("d0 must be >= 0 (or +inf)")


@dataclass(frozen=True)
class Bimodal:
    n_useful: int
    d0: float
    n_total: int

    def __post_init__(self) -> None:
        if not 0 <= self.n_useful <= self.n_total:
            raise ValueError("need 0 <= n_useful <= n_total")
        if math.isnan(self.d0) or self.d0 < 0:
            raise ValueError("d0 must be >= 0 (or +inf)")


@dataclass(frozen=True)
class Empirical:
    d: tuple

    def __post_init__(self) -> None:
        vals = tuple(float(x) for x in self.d)
        if any(math.isnan(x) or x < 0 for x in vals):
            raise ValueError("d values must be >= 0 (or +inf)")
        object.__setattr__(self, "d", vals)


@dataclass(frozen=True)
class Exponential:
    """Unit-rate exponential d_i; the rate is part of the convention."""


DDistribution = Unimodal | Bimodal | Empirical | Exponential


def _count_times_d(k: int, d0: float) -> float:
    # k*d0 with the 0*inf corner pinned to 0 (no environments, no record)
    return 0.0 if k == 0 else k * d0


def _unimodal_point_nats(n_env: int, m: int, d0: float, p0: float) -> float:
    return (
        entropy_h(p0, _count_times_d(n_env, d0))
        + entropy_h(p0, _count_times_d(m, d0))
        - entropy_h(p0, _count_times_d(n_env - m, d0))
    )


def unimodal_pip(n_env: int, d0: float, p0: float = 0.5) -> PIPCurve:
    """Exact PIP when every environment carries the same factor d0."""
    if n_env < 1:
        raise ValueError("need at least one environment")
    if math.isnan(d0) or d0 < 0:
        raise ValueError("d0 must be >= 0 (or +inf)")
    mi = np.array(
        [_unimodal_point_nats(n_env, m, d0, p0) for m in range(n_env + 1)]
    )
    return PIPCurve(n_env, nats_to_bits(mi), None, "analytic")


def hypergeometric_weight(n_total: int, n_useful: int, m: int, m_u: int) -> float:
    """P(fragment of m holds m_u useful environments); 0 off support."""
    if not 0 <= n_useful <= n_total:
        raise ValueError("need 0 <= n_useful <= n_total")
    if not 0 <= m <= n_total:
        raise ValueError("need 0 <= m <= n_total")
    if m_u < max(0, m + n_useful - n_total) or m_u > min(m, n_useful):
        return 0.0
    return (
        math.comb(n_useful, m_u)
        * math.comb(n_total - n_useful, m - m_u)
        / math.comb(n_total, m)
    )


def _bimodal_point_nats(
    n_total: int, n_useful: int, m: int, d0: float, p0: float
) -> float:
    d_s = _count_times_d(n_useful, d0)
    h_s = entropy_h(p0, d_s)
    terms = []
    for k in range(max(0, m + n_useful - n_total), min(m, n_useful) + 1):
        w = hypergeometric_weight(n_total, n_useful, m, k)
        i_k = (
            h_s
            + entropy_h(p0, _count_times_d(k, d0))
            - entropy_h(p0, _count_times_d(n_useful - k, d0))
        )
        terms.append(w * i_k)
    return math.fsum(terms)


def bimodal_average_pip(
    n_total: int, n_useful: int, d0: float, p0: float = 0.5
) -> PIPCurve:
    """Exact PIP for n_useful environments at d0 diluted among n_total.

    The only randomness is how many useful environments a fragment of m
    captures, which is hypergeometric, so the average is a short exact sum.
    """
    if n_total < 1:
        raise ValueError("need at least one environment")
    mi = np.array(
        [
            _bimodal_point_nats(n_total, n_useful, m, d0, p0)
            for m in range(n_total + 1)
        ]
    )
    return PIPCurve(n_total, nats_to_bits(mi), None, "analytic")


def _empirical_point_nats(profile: DecoherenceProfile, m: int) -> float:
    n = profile.n_env
    n_sub = math.comb(n, m)
    if n_sub > HARD_ENUMERATION_CAP:
        raise ValueError(
            f"enumeration too large: C({n},{m}) = {n_sub} subsets "
            f"(cap {HARD_ENUMERATION_CAP})"
        )
    vals = [
        subset_mutual_information(profile, mask)
        for mask in itertools.combinations(range(n), m)
    ]
    return math.fsum(vals) / n_sub


def empirical_average_pip(
    profile: DecoherenceProfile,
    mode: str = "exact",
    samples: int = 10_000,
    seed: int = 0,
) -> PIPCurve:
    """PIP of an explicit d list, averaged over same-size fragments.

    Exact mode enumerates every C(N, m) fragment (refusing past the hard
    cap).  Monte Carlo mode still enumerates sizes where the count fits
    within `samples` and draws `samples` uniform fragments elsewhere,
    reporting a standard error per point (zero for the enumerated ones).
    """
    if mode not in ("exact", "montecarlo"):
        raise ValueError(f"mode must be 'exact' or 'montecarlo', got {mode!r}")
    n = profile.n_env
    mi = np.zeros(n + 1)
    se = np.zeros(n + 1)
    for m in range(1, n + 1):
        if mode == "exact" or math.comb(n, m) <= samples:
            mi[m] = _empirical_point_nats(profile, m)
        else:
            gen = stream_generator(seed, m)
            vals = np.empty(samples)
            for s in range(samples):
                mask = gen.choice(n, size=m, replace=False)
                vals[s] = subset_mutual_information(profile, mask)
            mi[m] = vals.mean()
            se[m] = vals.std(ddof=1) / math.sqrt(samples)
    if mode == "exact":
        return PIPCurve(n, nats_to_bits(mi), None, "enumeration")
    return PIPCurve(n, nats_to_bits(mi), nats_to_bits(se), "montecarlo")


def clt_moments(profile: DecoherenceProfile, m: int) -> tuple[float, float]:
    """Mean and width of a size-m fragment's total d under uniform draws.

    Sampling m of N environments without replacement gives
    mean = m * dbar and width = sqrt(m (1 - (m-1)/(N-1))) * sigma, with
    dbar, sigma the population mean and standard deviation of the d list.
    The width vanishes identically at m = N (the whole environment).
    """
    d = np.array(profile.d)
    if not np.isfinite(d).all():
        raise ValueError("moments undefined: profile contains infinite d")
    n = d.size
    if not 1 <= m <= n:
        raise ValueError(f"m={m} outside 1..{n}")
    mean = m * d.mean()
    if m == n:
        return float(mean), 0.0
    width = math.sqrt(m * (1.0 - (m - 1) / (n - 1))) * d.std(ddof=0)
    return float(mean), float(width)


def erlang_pdf(m: int, d):
    """Density of a sum of m unit-rate exponentials: d^(m-1) e^(-d)/(m-1)!."""
    if m < 1:
        raise ValueError(
            "m must be >= 1: a fragment of zero environments has no density, "
            "its d is a point mass at 0"
        )
    arr = np.asarray(d, dtype=np.float64)
    if np.isnan(arr).any() or (arr < 0).any():
        raise ValueError("d must be >= 0")
    out = np.exp(xlogy(m - 1, arr) - arr - math.lgamma(m))
    return float(out) if np.ndim(d) == 0 else out


@lru_cache(maxsize=None)
def poisson_mean_entropy(m: int) -> float:
    """Mean entropy (nats) of a fragment whose total d is Erlang(m).

    Closed form: with c_k = 1 - (2/3)^k,

        c_m (ln2 - 1) + m/2 - (1/2) sum_{j=2}^m c_(m+1-j) zeta(j).

    The sum's terms nearly cancel the m/2 piece for large m, hence fsum.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 0.0

    def c(k: int) -> float:
        return -math.expm1(k * _LOG_2_3)

    head = c(m) * (LN2 - 1.0) + m / 2.0
    tail = math.fsum(c(m + 1 - j) * float(zeta(j)) for j in range(2, m + 1))
    return head - 0.5 * tail


def erlang_mean_entropy_quadrature(
    m: int, p0: float = 0.5, tol: float = 1e-8
) -> float:
    """Quadrature route to the Erlang-averaged entropy (nats).

    Integrates erlang_pdf(m, d) * H(p0, d) over [0, inf), split at
    max(40, 2m) so the mass around the mean m is always inside the finite
    panel.  Errors out if the estimated absolute error exceeds `tol`.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 0.0

    def f(x: float) -> float:
        return erlang_pdf(m, x) * entropy_h(p0, x)

    cut = max(40.0, 2.0 * m)
    v_lo, e_lo = quad(f, 0.0, cut, epsabs=tol / 10.0, limit=200)
    v_hi, e_hi = quad(f, cut, np.inf, epsabs=tol / 10.0, limit=200)
    if e_lo + e_hi > tol:
        raise ValueError(
            f"nonconvergent quadrature: achieved tolerance {e_lo + e_hi:.3e} "
            f"exceeds {tol:.1e}"
        )
    return v_lo + v_hi


def poisson_average_pip(n_env: int) -> PIPCurve:
    """Exact PIP for unit-rate exponential d_i over n_env environments."""
    if n_env < 1:
        raise ValueError("need at least one environment")
    q = [poisson_mean_entropy(k) for k in range(n_env + 1)]
    mi = np.array([q[n_env] + q[m] - q[n_env - m] for m in range(n_env + 1)])
    return PIPCurve(n_env, nats_to_bits(mi), None, "analytic")


def _require_d_s(expected: float, d_S: float, what: str) -> None:
    if math.isinf(expected) and math.isinf(d_S):
        return
    if abs(expected - d_S) > 1e-9:
        raise ValueError(
            f"d_S={d_S} inconsistent with {what} (expects d_S={expected})"
        )


def pip_integral(dist: DDistribution, m: int, d_S: float, p0: float = 0.5) -> float:
    """Average fragment information (nats) at one point, by distribution.

    Discrete distributions reduce to the exact sums of their dedicated
    producers; the Exponential family is assembled from three Erlang
    quadratures with the same split/tolerance policy as
    erlang_mean_entropy_quadrature.  d_S is redundant given the
    distribution and is validated against it.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if math.isnan(d_S) or d_S < 0:
        raise ValueError("d_S must be >= 0")
    if isinstance(dist, Unimodal):
        if math.isinf(dist.d0):
            raise ValueError(
                "environment count is not recoverable from d_S when d0=+inf; "
                "use unimodal_pip(n_env, d0) directly"
            )
        if dist.d0 == 0.0:
            _require_d_s(0.0, d_S, "Unimodal(0)")
            return 0.0
        n_float = d_S / dist.d0
        n_env = round(n_float) if math.isfinite(n_float) else 0
        if n_env < 1 or abs(n_float - n_env) > 1e-9:
            raise ValueError(f"d_S={d_S} is not a whole multiple of d0={dist.d0}")
        if m > n_env:
            raise ValueError(f"m={m} exceeds the {n_env} environments")
        return _unimodal_point_nats(n_env, m, dist.d0, p0)
    if isinstance(dist, Bimodal):
        _require_d_s(_count_times_d(dist.n_useful, dist.d0), d_S, "Bimodal")
        if m > dist.n_total:
            raise ValueError(f"m={m} exceeds the {dist.n_total} environments")
        return _bimodal_point_nats(dist.n_total, dist.n_useful, m, dist.d0, p0)
    if isinstance(dist, Empirical):
        _require_d_s(sum(dist.d), d_S, "Empirical")
        profile = DecoherenceProfile(p0, dist.d)
        if m > profile.n_env:
            raise ValueError(f"m={m} exceeds the {profile.n_env} environments")
        return _empirical_point_nats(profile, m)
    if isinstance(dist, Exponential):
        n_env = round(d_S) if math.isfinite(d_S) else 0
        if n_env < 1 or abs(d_S - n_env) > 1e-9:
            raise ValueError(
                "Exponential ensemble needs integer d_S = n_env "
                f"(unit-rate mean), got {d_S}"
            )
        if m > n_env:
            raise ValueError(f"m={m} exceeds the {n_env} environments")
        q = erlang_mean_entropy_quadrature
        return q(n_env, p0) + q(m, p0) - q(n_env - m, p0)
    raise TypeError(f"not a DDistribution: {dist!r}")
