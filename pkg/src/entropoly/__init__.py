"""Exact and certified information optimization over transportation polytopes."""

from .channel import (
    BalancedPartitionWitness,
    ChannelFamily,
    capacity_upper_bound,
    decide_optimal_channel,
    max_mutual_information,
    min_joint_entropy_over_family,
)
from .core import (
    Coupling,
    Distribution,
    Entropy,
    col_marginal,
    conditional_entropy_x_given_y,
    conditional_entropy_y_given_x,
    entropy,
    is_col_deterministic,
    is_row_deterministic,
    joint_entropy,
    mutual_information,
    product_coupling,
    row_marginal,
)
from .errors import DenominatorOverflow, LimitExceeded, MalformedInstance, TargetExceedsTotal
from .metrics import (
    decide_vi_equals_entropy_gap,
    total_variation,
    vi,
    vi_distance,
    vi_distance_normalized,
    vi_normalized,
)
from .minentropy import (
    DeterministicWitness,
    MinEntropyResult,
    NoWitness,
    decide_entropy_min,
    decide_entropy_min_two_cols,
    local_search_min_entropy,
    max_joint_entropy,
    min_joint_entropy_exact,
)
from .polytope import (
    BasisTree,
    TransportationPolytope,
    Vertex,
    enumerate_vertices,
    is_member,
    northwest_corner,
    pivot_neighbors,
)
from .reductions import (
    Certificate,
    SubsetSumInstance,
    ThreePartitionInstance,
    reduce_subset_sum,
    reduce_three_partition,
    solve_subset_sum_via_entropy,
    solve_three_partition_via_channel,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BalancedPartitionWitness",
    "BasisTree",
    "Certificate",
    "ChannelFamily",
    "Coupling",
    "DenominatorOverflow",
    "DeterministicWitness",
    "Distribution",
    "Entropy",
    "LimitExceeded",
    "MalformedInstance",
    "MinEntropyResult",
    "NoWitness",
    "SubsetSumInstance",
    "TargetExceedsTotal",
    "ThreePartitionInstance",
    "TransportationPolytope",
    "Vertex",
    "capacity_upper_bound",
    "col_marginal",
    "conditional_entropy_x_given_y",
    "conditional_entropy_y_given_x",
    "decide_entropy_min",
    "decide_entropy_min_two_cols",
    "decide_optimal_channel",
    "decide_vi_equals_entropy_gap",
    "entropy",
    "enumerate_vertices",
    "is_col_deterministic",
    "is_member",
    "is_row_deterministic",
    "joint_entropy",
    "local_search_min_entropy",
    "max_joint_entropy",
    "max_mutual_information",
    "min_joint_entropy_exact",
    "min_joint_entropy_over_family",
    "mutual_information",
    "northwest_corner",
    "pivot_neighbors",
    "product_coupling",
    "reduce_subset_sum",
    "reduce_three_partition",
    "row_marginal",
    "solve_subset_sum_via_entropy",
    "solve_three_partition_via_channel",
    "total_variation",
    "verify_certificate",
    "vi",
    "vi_distance",
    "vi_distance_normalized",
    "vi_normalized",
]
