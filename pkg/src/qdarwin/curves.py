"""Containers for partial information plots.

A partial information plot (PIP) records the average mutual information
between the system qubit and environment fragments of each size m = 0..N.
Every producer in this package (exact formulas, subset enumeration, Monte
Carlo) returns the same container so the CLI and tests can treat curves
uniformly; the provenance tag says which machinery filled it in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PROVENANCES = ("analytic", "quadrature", "enumeration", "montecarlo")


@dataclass(frozen=True)
class PIPCurve:
    """Mean fragment mutual information, in bits, indexed by fragment size.

    ``mi_bits[m]`` is the ensemble average of I(system : m-environment
    fragment).  ``stderr_bits`` is None when every point is exact and a
    per-point standard error of the mean otherwise.
    """

    n_env: int
    mi_bits: np.ndarray
    stderr_bits: np.ndarray | None
    provenance: str

    def __post_init__(self) -> None:
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.n_env < 1:
            raise ValueError("need at least one environment")
        mi = np.array(self.mi_bits, dtype=np.float64, copy=True).reshape(-1)
        if mi.shape != (self.n_env + 1,):
            raise ValueError("curve must have one point per m in 0..n_env")
        if abs(mi[0]) > 1e-12:
            raise ValueError("zero-size fragment must carry zero information")
        mi.setflags(write=False)
        object.__setattr__(self, "mi_bits", mi)
        if self.stderr_bits is not None:
            se = np.array(self.stderr_bits, dtype=np.float64, copy=True).reshape(-1)
            if se.shape != mi.shape:
                raise ValueError("stderr length must match curve length")
            if (se < 0).any():
                raise ValueError("standard errors must be nonnegative")
            se.setflags(write=False)
            object.__setattr__(self, "stderr_bits", se)

    @property
    def m(self) -> np.ndarray:
        return np.arange(self.n_env + 1)

    @property
    def points(self) -> list[tuple[int, float, float | None]]:
        """(m, mean bits, stderr bits or None) triples, m ascending."""
        se = self.stderr_bits
        return [
            (int(m), float(self.mi_bits[m]), None if se is None else float(se[m]))
            for m in range(self.n_env + 1)
        ]


# The distribution-averaged producers return the same container; the alias
# keeps call sites honest about which pipeline made the curve.
AveragedPIP = PIPCurve
