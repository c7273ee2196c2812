"""Balance-rate estimation for uncertain signed graphs.

A signed graph whose edges exist independently with given probabilities is
balanced with some probability -- its balance rate.  This package estimates
that rate by decomposing the graph into 2-edge-connected blocks (whose rates
multiply) and running a Rao-Blackwellized cycle-chord sampler per block, with
Delta-method confidence intervals, all validated against exact enumeration
oracles at desk scale.
"""

from .decompose import Block, CutStructure, decompose_blocks, find_cut_structure
from .experiments import (CriticalGroundTruth, GenerationError, GeneratorConfig,
                          gen_balanced, gen_sparse, greedy_critical,
                          hidden_conflict_instance, inject_critical_edges,
                          recover_bipartition, scale_probabilities, sweep)
from .graph import (NEGATIVE, POSITIVE, ParseError, SignedEdge,
                    UncertainSignedGraph, check_balanced, parse_edge_list,
                    realize, serialize_edge_list)
from .oracle import (ENUMERATION_GUARD, EnumerationGuardError,
                     EstimatorDistribution, exact_balance_rate,
                     exact_estimator_moments)
from .paritydsu import ParityDSU
from .sampler import (CompareRecord, EstimateReport, InvalidPlanError,
                      SamplePlan, cci_sample, estimate, joint_samples,
                      mc_sample, prefix_estimates, run_compare)
from .stats import (BlockStats, DeltaInterval, delta_interval,
                    mean_and_unbiased_variance, normal_quantile)

__version__ = "0.1.0"

__all__ = [
    "Block", "BlockStats", "CompareRecord", "CriticalGroundTruth",
    "CutStructure", "DeltaInterval", "ENUMERATION_GUARD", "EstimateReport",
    "EstimatorDistribution", "EnumerationGuardError", "GenerationError",
    "GeneratorConfig", "InvalidPlanError", "NEGATIVE", "POSITIVE",
    "ParityDSU", "ParseError", "SamplePlan", "SignedEdge",
    "UncertainSignedGraph", "cci_sample", "check_balanced", "decompose_blocks",
    "delta_interval", "estimate", "exact_balance_rate",
    "exact_estimator_moments", "find_cut_structure", "gen_balanced",
    "gen_sparse", "greedy_critical", "hidden_conflict_instance",
    "inject_critical_edges", "joint_samples", "mc_sample",
    "mean_and_unbiased_variance", "normal_quantile", "parse_edge_list",
    "prefix_estimates", "realize", "recover_bipartition", "run_compare",
    "scale_probabilities", "serialize_edge_list", "sweep",
]
