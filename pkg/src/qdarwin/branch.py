"""Branching (record-forming) states of one qubit in a product environment.

A branch state is

    alpha |0> (x)_i |psi_i>  +  beta |1> (x)_i |psi'_i>,

system qubit at register 0, environment qubit i at register i+1.  Everything
observable about fragments of such a state reduces to two numbers: the base
purity P0 = x^2 + (1-x)^2 with x = |alpha|^2, and per-environment overlap
factors gamma_i = <psi_i|psi'_i> carried as additive decoherence factors
d_i = -ln|gamma_i|^2.  A fragment's d is the sum of its members' d_i, and
every reduced state of interest is rank <= 2.

Two index conventions live side by side and are easy to confuse:
register masks (used by reduced_density_matrix and the qkernel oracle)
count the system as 0 and environment i as i+1; profile masks (used by
subset_mutual_information) index the d list directly, 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.special import xlogy

from .qkernel import LN2, SOFT_QUBIT_LIMIT, PureState


def _unit_vector(v, what: str) -> np.ndarray:
    vec = np.array(v, dtype=np.complex128, copy=True).reshape(-1)
    if vec.size != 2:
        raise ValueError(f"{what} must be a single-qubit 2-vector")
    if abs(float(np.vdot(vec, vec).real) - 1.0) > 1e-12:
        raise ValueError(f"{what} not normalized")
    vec.setflags(write=False)
    return vec


@dataclass(frozen=True)
class BranchSpec:
    """Amplitudes and per-environment state pairs defining a branch state."""

    alpha: complex
    beta: complex
    env_pairs: tuple

    def __post_init__(self) -> None:
        if abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0) > 1e-12:
            raise ValueError("|alpha|^2 + |beta|^2 must be 1")
        pairs = tuple(
            (
                _unit_vector(psi, f"psi[{i}]"),
                _unit_vector(psi_prime, f"psi'[{i}]"),
            )
            for i, (psi, psi_prime) in enumerate(self.env_pairs)
        )
        if not pairs:
            raise ValueError("need at least one environment pair")
        object.__setattr__(self, "env_pairs", pairs)

    @property
    def n_env(self) -> int:
        return len(self.env_pairs)

    def gammas(self) -> np.ndarray:
        """Overlaps <psi_i|psi'_i>, one per environment."""
        return np.array([np.vdot(p, q) for p, q in self.env_pairs])


@dataclass(frozen=True)
class DecoherenceProfile:
    """Base purity plus the additive decoherence factor of each environment.

    d is in natural-log units: |gamma_i|^2 = e^(-d_i), so d_i = 0 means no
    record and d_i = +inf a perfect one.  Position i of d belongs to the
    environment at register i+1 of the corresponding branch state.
    """

    p0: float
    d: tuple

    def __post_init__(self) -> None:
        if not 0.5 - 1e-12 <= self.p0 <= 1.0 + 1e-12:
            raise ValueError(f"p0 must lie in [1/2, 1], got {self.p0}")
        object.__setattr__(self, "p0", float(min(max(self.p0, 0.5), 1.0)))
        vals = tuple(float(x) for x in self.d)
        for x in vals:
            if math.isnan(x) or x < 0.0:
                raise ValueError(f"d values must be >= 0 (or +inf), got {x}")
        object.__setattr__(self, "d", vals)

    @property
    def n_env(self) -> int:
        return len(self.d)

    @property
    def d_total(self) -> float:
        return sum(self.d)


@dataclass(frozen=True)
class VirtualQubit:
    """Rank-2 template for the reduced states of a branch state.

    The induced matrix is [[x, sqrt(x(1-x)) g], [sqrt(x(1-x)) g*, 1-x]].
    Its eigenvalue spectrum matches the true reduced density matrix; the
    written basis need not be orthonormal, so entries themselves are only
    meaningful through |g|.
    """

    x: float
    gamma: complex

    def __post_init__(self) -> None:
        if not -1e-12 <= self.x <= 1.0 + 1e-12:
            raise ValueError("x must lie in [0, 1]")
        if abs(self.gamma) > 1.0 + 1e-12:
            raise ValueError("|gamma| must be <= 1")
        object.__setattr__(self, "x", float(min(max(self.x, 0.0), 1.0)))
        object.__setattr__(self, "gamma", complex(self.gamma))

    def matrix(self) -> np.ndarray:
        off = math.sqrt(self.x * (1.0 - self.x)) * self.gamma
        return np.array([[self.x, off], [np.conj(off), 1.0 - self.x]])

    def eigenvalues(self) -> np.ndarray:
        """Spectrum (1 -/+ z)/2, ascending, with z^2 = (2x-1)^2 + 4x(1-x)|g|^2."""
        z = math.sqrt(
            (2.0 * self.x - 1.0) ** 2
            + 4.0 * self.x * (1.0 - self.x) * abs(self.gamma) ** 2
        )
        return np.array([(1.0 - z) / 2.0, (1.0 + z) / 2.0])


def branch_to_state_vector(spec: BranchSpec) -> PureState:
    """Dense (N+1)-qubit vector of the branch state, system at register 0."""
    if spec.n_env + 1 > SOFT_QUBIT_LIMIT:
        raise ValueError(
            f"register of {spec.n_env + 1} qubits exceeds soft limit "
            f"{SOFT_QUBIT_LIMIT}"
        )
    left = reduce(np.kron, (p for p, _ in spec.env_pairs))
    right = reduce(np.kron, (q for _, q in spec.env_pairs))
    amp = np.concatenate([spec.alpha * left, spec.beta * right])
    return PureState(spec.n_env + 1, amp)


def profile_from_branch(spec: BranchSpec) -> DecoherenceProfile:
    """(P0, d) parameterization of a branch state.

    d_i = -ln|gamma_i|^2, clamped at 0 when roundoff pushes |gamma_i| a hair
    above 1, and +inf for orthogonal record pairs.
    """
    x = abs(spec.alpha) ** 2
    p0 = x * x + (1.0 - x) * (1.0 - x)
    d = []
    for g in spec.gammas():
        g2 = abs(g) ** 2
        d.append(math.inf if g2 == 0.0 else max(0.0, -math.log(g2)))
    return DecoherenceProfile(p0, tuple(d))


def reduced_density_matrix(spec: BranchSpec, which: str, mask=()) -> VirtualQubit:
    """Rank-2 reduced state of the system, a fragment, or both together.

    which selects the kept subsystem: "S" (system alone), "E" (the masked
    environments), or "SE" (system plus masked environments).  The mask holds
    register indices, so environment i is i+1 and 0 is rejected.  The
    off-diagonal factor is the product of gamma_i over the traced-out
    environments' records that distinguish the branches: all i for S, the
    mask complement for SE, and the mask itself for E (where tracing the
    system leaves the overlap of the kept records).
    """
    n = spec.n_env
    idx = sorted({int(q) for q in mask})
    if any(q == 0 for q in idx):
        raise ValueError("system not an environment")
    if idx and (idx[0] < 1 or idx[-1] > n):
        raise ValueError(f"mask out of range for environments 1..{n}: {idx}")
    gammas = spec.gammas()
    chosen = {q - 1 for q in idx}
    if which == "S":
        if idx:
            raise ValueError("mask applies only to E or SE reductions")
        factors = gammas
    elif which == "SE":
        factors = [g for i, g in enumerate(gammas) if i not in chosen]
    elif which == "E":
        if not idx:
            raise ValueError("empty subsystem")
        factors = [g for i, g in enumerate(gammas) if i in chosen]
    else:
        raise ValueError(f"which must be 'S', 'E' or 'SE', got {which!r}")
    return VirtualQubit(abs(spec.alpha) ** 2, complex(np.prod(factors)))


def entropy_h(p0: float, d) -> float:
    """Entropy (nats) of a virtual qubit with base purity p0 and factor d.

    H = ln2 - [(1+z)ln(1+z) + (1-z)ln(1-z)]/2 with
    z = sqrt(1 - 2(1-p0)(1-e^(-d))).  Vectorizes over d; d may be +inf.
    """
    if not 0.5 - 1e-12 <= p0 <= 1.0 + 1e-12:
        raise ValueError(f"p0 must lie in [1/2, 1], got {p0}")
    d_arr = np.asarray(d, dtype=np.float64)
    if np.isnan(d_arr).any() or (d_arr < 0).any():
        raise ValueError("d must be >= 0 (or +inf)")
    # -expm1(-d) = 1 - e^(-d), exact at both endpoints (0 at d=0, 1 at inf)
    z = np.sqrt(np.maximum(1.0 + 2.0 * (1.0 - p0) * np.expm1(-d_arr), 0.0))
    h = LN2 - 0.5 * (xlogy(1.0 + z, 1.0 + z) + xlogy(1.0 - z, 1.0 - z))
    h = np.clip(h, 0.0, LN2)
    return float(h) if np.isscalar(d) or np.ndim(d) == 0 else h


def subset_mutual_information(profile: DecoherenceProfile, mask) -> float:
    """I(system : masked environments) in nats, straight from the profile.

    I = H(p0, d_S) + H(p0, d_mask) - H(p0, d_complement), each d the direct
    sum of its members (the complement is never formed by subtraction, so
    profiles containing +inf stay well defined).  Mask entries index the d
    list, 0-based.
    """
    idx = sorted({int(i) for i in mask})
    if idx and (idx[0] < 0 or idx[-1] >= profile.n_env):
        raise ValueError(
            f"mask out of range for {profile.n_env} environments: {idx}"
        )
    chosen = set(idx)
    p0 = profile.p0
    d_all = sum(profile.d)
    d_in = sum(profile.d[i] for i in range(profile.n_env) if i in chosen)
    d_out = sum(profile.d[i] for i in range(profile.n_env) if i not in chosen)
    return entropy_h(p0, d_all) + entropy_h(p0, d_in) - entropy_h(p0, d_out)
