"""Uniform (Haar) ensemble averages and their Monte Carlo counterparts.

The exact pipeline rests on the mean subsystem entropy of a random pure
state,

    Hbar(m, n) = sum_{k=n+1}^{mn} 1/k - (m - 1) / (2 n)    (m <= n),

evaluated through harmonic numbers.  A one-qubit system plus N environment
qubits is a universe of N+1 qubits, and the average information in an
m-qubit fragment is assembled from three such entropies.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from . import qkernel
from .curves import PIPCurve
from .qkernel import LN2, PureState, nats_to_bits
from .rng import SUBSET_STREAM_BASE, stream_generator

_EULER_GAMMA = float(np.euler_gamma)

# Exact summation up to a mebi-term harmonic number (~60 ms, cached); the
# asymptotic tail below is good to ~1e-16 relative well before this point.
_EXACT_HARMONIC_LIMIT = 2**20


@lru_cache(maxsize=None)
def _harmonic(n: int) -> float:
    """n-th harmonic number, exact below _EXACT_HARMONIC_LIMIT."""
    if n < 0:
        raise ValueError("harmonic number needs n >= 0")
    if n <= _EXACT_HARMONIC_LIMIT:
        return math.fsum(1.0 / k for k in range(1, n + 1))
    logn = math.log(n)
    if n >= 2**1020:
        # 1/(2n) is below the resolution of logn + gamma here
        return logn + _EULER_GAMMA
    inv = 1.0 / float(n)
    inv2 = inv * inv
    return (
        logn
        + _EULER_GAMMA
        + inv / 2.0
        - inv2 / 12.0
        + inv2 * inv2 / 120.0
        - inv2 * inv2 * inv2 / 252.0
    )


def page_mean_entropy(m_dim: int, n_dim: int) -> float:
    """Mean entropy (nats) of an m_dim subsystem of a random pure state.

    The complement has dimension n_dim >= m_dim; callers must orient the
    arguments themselves.
    """
    if m_dim < 1 or n_dim < 1:
        raise ValueError("dimensions must be positive")
    if m_dim > n_dim:
        raise ValueError("subsystem larger than complement")
    return _harmonic(m_dim * n_dim) - _harmonic(n_dim) - (m_dim - 1) / (2.0 * n_dim)


def mean_qubit_entropy(k: int, n_total: int) -> float:
    """Mean entropy (nats) of k qubits out of an n_total-qubit pure state.

    For k <= n_total/2 this is the digamma form

        Psi(2^n + 1) - Psi(2^(n-k) + 1) - 2^(k-n-1) (2^k - 1)

    written with harmonic numbers.  Larger k falls back on the complement:
    the global state is pure, so H(k) = H(n_total - k).  The raw expression
    is wrong there (it goes negative), hence the hard switch.
    """
    if not 0 <= k <= n_total:
        raise ValueError(f"k={k} outside 0..{n_total}")
    if 2 * k > n_total:
        k = n_total - k
    if k == 0:
        return 0.0
    correction = 2.0 ** (2 * k - n_total - 1) - 2.0 ** (k - n_total - 1)
    return _harmonic(2**n_total) - _harmonic(2 ** (n_total - k)) - correction


def haar_average_pip(n_env: int) -> PIPCurve:
    """Exact average PIP for a 1-qubit system and n_env environment qubits."""
    if n_env < 1:
        raise ValueError("need at least one environment")
    n_total = n_env + 1
    h = [mean_qubit_entropy(k, n_total) for k in range(n_total + 1)]
    mi = np.array([h[1] + h[m] - h[m + 1] for m in range(n_env + 1)])
    return PIPCurve(n_env, nats_to_bits(mi), None, "analytic")


def haar_random_pure_state(n_qubits: int, seed: int, stream: int) -> PureState:
    """State drawn from the unitarily invariant measure, reproducibly.

    Amplitudes are i.i.d. standard complex Gaussians, normalized.  Identical
    (seed, stream) gives bitwise-identical amplitudes.
    """
    gen = stream_generator(seed, stream)
    dim = 2**n_qubits
    vec = gen.standard_normal(dim) + 1j * gen.standard_normal(dim)
    vec /= np.linalg.norm(vec)
    return PureState(n_qubits, vec)


def _fragment_masks(n_env: int, m: int, budget: int, gen) -> list[tuple[int, ...]]:
    """Environment-register masks of size m: all of them, or `budget` draws."""
    if math.comb(n_env, m) <= budget:
        return list(itertools.combinations(range(1, n_env + 1), m))
    draws = []
    for _ in range(budget):
        pick = gen.choice(n_env, size=m, replace=False)
        draws.append(tuple(sorted(int(q) + 1 for q in pick)))
    return draws


def _sample_curve(
    state: PureState, n_env: int, budget: int, gen
) -> np.ndarray:
    """Mean fragment information (nats) for one universe, all m."""
    out = np.zeros(n_env + 1)
    h_sys = qkernel._pure_marginal_entropy(state, (0,))
    for m in range(1, n_env + 1):
        masks = _fragment_masks(n_env, m, budget, gen)
        acc = 0.0
        for mask in masks:
            h_env = qkernel._pure_marginal_entropy(state, mask)
            h_both = qkernel._pure_marginal_entropy(state, (0,) + mask)
            acc += h_sys + h_env - h_both
        out[m] = acc / len(masks)
    return out


def sampled_average_pip(
    n_env: int,
    samples: int,
    seed: int,
    subset_budget: int = 10_000,
    threads: int = 1,
) -> PIPCurve:
    """Monte Carlo estimate of haar_average_pip with standard errors.

    Each sample draws a fresh (n_env + 1)-qubit universe from its own RNG
    stream and averages the fragment information over all C(N, m) fragments
    when that count fits the subset budget, else over `subset_budget`
    uniformly drawn fragments.  Per-sample results land in preassigned slots,
    so the outcome is independent of thread count and scheduling.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    n_total = n_env + 1
    if n_total > qkernel.SOFT_QUBIT_LIMIT:
        raise ValueError(
            f"register of {n_total} qubits exceeds soft limit "
            f"{qkernel.SOFT_QUBIT_LIMIT}"
        )

    per_sample = np.zeros((samples, n_env + 1))

    def run(s: int) -> None:
        state = haar_random_pure_state(n_total, seed, s)
        subset_gen = stream_generator(seed, SUBSET_STREAM_BASE + s)
        per_sample[s] = _sample_curve(state, n_env, subset_budget, subset_gen)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, range(samples)))
    else:
        for s in range(samples):
            run(s)

    mi = per_sample.mean(axis=0)
    if samples > 1:
        stderr = per_sample.std(axis=0, ddof=1) / math.sqrt(samples)
    else:
        stderr = np.zeros(n_env + 1)
    return PIPCurve(n_env, nats_to_bits(mi), nats_to_bits(stderr), "montecarlo")
