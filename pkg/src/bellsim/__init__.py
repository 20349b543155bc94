"""Monte Carlo simulator and analytic oracles for Bell correlations
built from chaotic-light statistics (exponential intensities, mixed
Poisson counting, binomial beam-splitter splitting)."""

from bellsim.source import SourceParams, SourceDraw, sample_draw, apply_pair_constraints
from bellsim.polarizer import (
    AnalyzerSettings,
    PortIntensities,
    amplitudes_at_ports,
    port_intensities,
    sequential_polarizers,
)
from bellsim.photon_stats import (
    CountPair,
    TrialCounts,
    poisson_pmf,
    sample_poisson,
    binomial_split,
    split_product_mean_conditional,
    split_product_mean_poisson,
    bose_einstein_pmf,
    sample_count_marginal,
)
from bellsim.oracle import (
    PortPairKind,
    OracleParams,
    raw_product_mean,
    corrected_product_mean,
    bell_correlation_raw,
    normalization_sum,
    normalized_correlation,
    chsh_value,
)
from bellsim.montecarlo import (
    SimConfig,
    EstimateSet,
    PostselectedTally,
    run_intensity_experiment,
    run_count_experiment,
    run_postselected_experiment,
    sweep_angles,
    chsh_experiment,
)
from bellsim.inequality import (
    SignSequence,
    InequalityReport,
    cross_correlation,
    bell_three_check,
    chsh_four_check,
)

__version__ = "0.1.0"
