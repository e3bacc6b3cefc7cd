"""Information storage of one qubit across a many-qubit environment.

The package quantifies how well fragments of an environment record the
state of a single system qubit: exact Haar-ensemble averages and their
Monte Carlo checks, branch (record-forming) states with per-environment
decoherence factors, distribution-averaged partial information plots,
and redundancy measures that count how many disjoint fragments each
nearly know the system.  Internal entropies are in nats; curve
containers and CSV outputs are in bits.
"""

from .branch import (
    BranchSpec,
    DecoherenceProfile,
    VirtualQubit,
    branch_to_state_vector,
    entropy_h,
    profile_from_branch,
    reduced_density_matrix,
    subset_mutual_information,
)
from .curves import AveragedPIP, PIPCurve
from .ensembles import (
    Bimodal,
    DDistribution,
    Empirical,
    Exponential,
    Unimodal,
    bimodal_average_pip,
    clt_moments,
    empirical_average_pip,
    erlang_mean_entropy_quadrature,
    erlang_pdf,
    hypergeometric_weight,
    pip_integral,
    poisson_average_pip,
    poisson_mean_entropy,
    unimodal_pip,
)
from .haar import (
    haar_average_pip,
    haar_random_pure_state,
    mean_qubit_entropy,
    page_mean_entropy,
    sampled_average_pip,
)
from .qkernel import (
    LN2,
    DensityMatrix,
    PureState,
    all_bipartitions_maximally_entangled,
    ghz_state,
    mutual_information,
    nats_to_bits,
    partial_trace,
    von_neumann_entropy,
)
from .redundancy import (
    RedundancyReport,
    critical_d,
    redundancy_infdiv,
    redundancy_partition,
)

__version__ = "0.1.0"

__all__ = [
    "AveragedPIP",
    "Bimodal",
    "BranchSpec",
    "DDistribution",
    "DecoherenceProfile",
    "DensityMatrix",
    "Empirical",
    "Exponential",
    "LN2",
    "PIPCurve",
    "PureState",
    "RedundancyReport",
    "Unimodal",
    "VirtualQubit",
    "all_bipartitions_maximally_entangled",
    "bimodal_average_pip",
    "branch_to_state_vector",
    "clt_moments",
    "critical_d",
    "empirical_average_pip",
    "entropy_h",
    "erlang_mean_entropy_quadrature",
    "erlang_pdf",
    "ghz_state",
    "haar_average_pip",
    "haar_random_pure_state",
    "hypergeometric_weight",
    "mean_qubit_entropy",
    "mutual_information",
    "nats_to_bits",
    "page_mean_entropy",
    "partial_trace",
    "pip_integral",
    "poisson_average_pip",
    "poisson_mean_entropy",
    "profile_from_branch",
    "redundancy_infdiv",
    "redundancy_partition",
    "reduced_density_matrix",
    "sampled_average_pip",
    "subset_mutual_information",
    "unimodal_pip",
    "von_neumann_entropy",
]
