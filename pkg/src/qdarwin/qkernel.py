"""Dense state-vector kernel for small qubit registers.

Register convention: qubit 0 is the system, qubits 1..N are environment
sites.  Amplitudes are ordered with qubit 0 as the most significant axis,
matching ``reshape([2] * n_qubits)`` and the operand order of ``np.kron``.
All entropies returned by this module are in nats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

LN2 = float(np.log(2.0))

# Dense vectors above this many qubits are almost certainly a mistake on a
# workstation; the largest register we target is an 11-qubit universe.
# Module-level on purpose: bump qkernel.SOFT_QUBIT_LIMIT if you mean it.
SOFT_QUBIT_LIMIT = 14

# Reduced-matrix eigenvalues in [EIG_FLOOR, 0) are roundoff and get clipped;
# anything below EIG_FLOOR means the input was never a density matrix.
EIG_FLOOR = -1e-10


def nats_to_bits(x: float) -> float:
    return x / LN2


@dataclass(frozen=True)
class PureState:
    """Normalized state vector over ``n_qubits`` qubits.

    The amplitude array is copied at construction and marked read-only;
    instances are safe to share across threads.
    """

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= SOFT_QUBIT_LIMIT:
            raise ValueError(
                f"n_qubits={self.n_qubits} outside 1..{SOFT_QUBIT_LIMIT} "
                "(raise qkernel.SOFT_QUBIT_LIMIT if you really mean it)"
            )
        amp = np.array(self.amplitudes, dtype=np.complex128, copy=True).reshape(-1)
        if amp.size != 2**self.n_qubits:
            raise ValueError("amplitude vector length must be 2**n_qubits")
        sq = float(np.vdot(amp, amp).real)
        if abs(sq - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: <psi|psi> = {sq!r}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, trace-one matrix over ``n_qubits`` qubits.

    Hermiticity and trace are validated here; positivity is enforced where
    spectra are actually taken (an eigensolve per intermediate value would
    dominate the cost of everything built on top).
    """

    n_qubits: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        dim = 2**self.n_qubits
        ent = np.array(self.entries, dtype=np.complex128, copy=True)
        if ent.shape != (dim, dim):
            raise ValueError("entries must be square with dimension 2**n_qubits")
        if not np.allclose(ent, ent.conj().T, rtol=0.0, atol=1e-12):
            raise ValueError("entries not Hermitian")
        tr = float(np.trace(ent).real)
        if abs(tr - 1.0) > 1e-12:
            raise ValueError(f"trace is {tr!r}, expected 1")
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits


def _as_mask(keep, n_qubits: int) -> tuple[int, ...]:
    """Normalize an iterable of qubit indices to a sorted unique tuple."""
    idx = tuple(sorted({int(q) for q in keep}))
    if not idx:
        raise ValueError("empty subsystem")
    if idx[0] < 0 or idx[-1] >= n_qubits:
        raise ValueError(f"mask out of range for {n_qubits} qubits: {idx}")
    return idx


def partial_trace(state: PureState | DensityMatrix, keep) -> DensityMatrix:
    """Reduced density matrix on the ``keep`` qubits (ascending order)."""
    n = state.n_qubits
    idx = _as_mask(keep, n)
    kept = set(idx)
    if isinstance(state, PureState):
        drop = tuple(q for q in range(n) if q not in kept)
        mat = (
            state.amplitudes.reshape([2] * n)
            .transpose(idx + drop)
            .reshape(2 ** len(idx), -1)
        )
        rho = mat @ mat.conj().T
    else:
        # row axis q labeled q; column axis q repeats the row label when
        # dropped (einsum traces it) and gets a fresh label n+q when kept
        labels = list(range(n)) + [n + q if q in kept else q for q in range(n)]
        out = list(idx) + [n + q for q in idx]
        red = np.einsum(state.entries.reshape([2] * (2 * n)), labels, out)
        rho = red.reshape(2 ** len(idx), 2 ** len(idx))
    return DensityMatrix(len(idx), rho)


def entropy_from_eigenvalues(lam: np.ndarray) -> float:
    """H = -sum(lam ln lam) in nats with 0 ln 0 := 0 and roundoff clipping."""
    low = float(lam.min()) if lam.size else 0.0
    if low < EIG_FLOOR:
        raise ValueError(f"not positive semidefinite: eigenvalue {low}")
    lam = lam[lam > 0.0]
    return float(-(lam * np.log(lam)).sum())


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy of ``rho`` in nats."""
    return entropy_from_eigenvalues(np.linalg.eigvalsh(rho.entries))


def _pure_marginal_entropy(state: PureState, mask: tuple[int, ...]) -> float:
    """Entropy of a marginal of a globally pure state, in nats.

    The global state is pure, so H(A) = H(complement of A) and the eigensolve
    runs on whichever side is smaller; a 10-qubit universe never needs more
    than a 32x32 diagonalization.
    """
    comp = tuple(q for q in range(state.n_qubits) if q not in set(mask))
    if not comp:
        return 0.0
    side = mask if len(mask) <= len(comp) else comp
    return von_neumann_entropy(partial_trace(state, side))


def mutual_information(state: PureState, a, b) -> float:
    """I(a:b) = H(a) + H(b) - H(ab) in nats for disjoint masks a, b."""
    if not isinstance(state, PureState):
        raise TypeError("mutual_information needs the global PureState")
    n = state.n_qubits
    ma = _as_mask(a, n)
    mb = _as_mask(b, n)
    if set(ma) & set(mb):
        raise ValueError("subsystems overlap")
    return (
        _pure_marginal_entropy(state, ma)
        + _pure_marginal_entropy(state, mb)
        - _pure_marginal_entropy(state, _as_mask(ma + mb, n))
    )


def all_bipartitions_maximally_entangled(state: PureState, tol: float = 1e-9) -> bool:
    """True iff every subsystem of at most half the qubits is maximally mixed.

    This is the defining property of a perfect coding state: no bipartition
    reveals anything short of the maximum k*ln2 entropy.
    """
    n = state.n_qubits
    if n < 2:
        raise ValueError("need at least two qubits")
    for r in range(1, n // 2 + 1):
        target = r * LN2
        for sub in itertools.combinations(range(n), r):
            if abs(_pure_marginal_entropy(state, sub) - target) > tol:
                return False
    return True


def ghz_state(n_qubits: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2)."""
    amp = np.zeros(2**n_qubits, dtype=np.complex128)
    amp[0] = amp[-1] = 1.0 / np.sqrt(2.0)
    return PureState(n_qubits, amp)
