"""Partial Steiner systems with popularity-rank labelings: constructions,
access-balance metrics and bounds, independent-set machinery, labeling
search, and a storage-layout simulator."""

from .design import (
    Design,
    DesignError,
    Labeling,
    PackingStatus,
    identity_labeling,
    read_design,
    read_labeling,
    reverse_labeling,
    validate,
    write_design,
    write_labeling,
)
from .metrics import (
    BoundSheet,
    MetricReport,
    basic_bounds,
    metric_report,
    phi,
    sts_diffsum_lower,
    triple_bound,
)
from .numtheory import (
    FactorSplit,
    cubic_one_factorization,
    is_singly_even,
    neg2_cycles,
    order_of_minus2,
    split_two_factors,
    swc_condition,
)
from .constructions import (
    bose,
    bose_independent_pair,
    catalog,
    fourpack,
    skolem,
    skolem_independent_pair,
    sum_class_packing,
    sw_complete_general,
    sw_complete_special,
)
from .independence import (
    IndependentPair,
    greedy_independent_set,
    indep_bounds,
    independent_pair,
    labeling_from_pair,
    max_independent_set,
)
from .search import (
    SearchResult,
    anneal_labeling,
    bb_labeling,
    exhaustive_labeling,
    table_search,
)
from .storage import (
    AccessProfile,
    LoadReport,
    access_load,
    frc_rate,
    linear_profile,
    recovery_uniformity,
    uniform_profile,
    zipf_profile,
)

__all__ = [name for name in dir() if not name.startswith("_")]
