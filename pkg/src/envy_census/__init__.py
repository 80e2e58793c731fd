"""Exact EF1/EFX allocation censuses for two agents with monotone
valuations, plus the subset-lattice and extremal set-theory toolkit that
explains their counts: bundle classification systems, cascade
decompositions, shadow bounds, Sperner profile feasibility, and
Hamming-ball distance checks.
"""
from .census import (
    CensusReport,
    SetSystems,
    census_report,
    combine_ef1_partitions,
    count_ef1_allocations,
    count_efx_allocations,
    cut_and_choose_efx,
    ef1_bundle_mask,
    efx_bundle_mask,
    efx_partition,
    extract_set_systems,
    f_ef1,
    list_ef1_partitions,
    verify_separation,
)
from .combinatorics import (
    Cascade,
    HarperReport,
    a_hamming_ball,
    binom,
    bjorner_feasible,
    cascade_decompose,
    hamming_distance,
    is_sperner,
    shadow,
    shadow_is_monotone,
    system_distance,
    the_hamming_ball,
    verify_harper,
)
from .fairness import (
    BundleClass,
    classify_bundle,
    is_ef1_allocation,
    is_ef1_bundle,
    is_efx_allocation,
    is_efx_bundle,
)
from .model import (
    MAX_ITEMS,
    Instance,
    InstanceFormatError,
    MonotoneViolation,
    Valuation,
    as_fraction,
    bundle_of,
    bundle_size,
    check_monotone,
    complement,
    derive_seed,
    dumps_instance,
    full_bundle,
    instance_from_dict,
    instance_to_dict,
    iter_items,
    load_instance,
    make_additive,
    random_instance,
    random_monotone,
    save_instance,
    tight_ef1_instance,
    tight_efx_instance,
    value,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_ITEMS",
    "BundleClass",
    "Cascade",
    "CensusReport",
    "HarperReport",
    "Instance",
    "InstanceFormatError",
    "MonotoneViolation",
    "SetSystems",
    "Valuation",
    "a_hamming_ball",
    "as_fraction",
    "binom",
    "bjorner_feasible",
    "bundle_of",
    "bundle_size",
    "cascade_decompose",
    "census_report",
    "check_monotone",
    "classify_bundle",
    "combine_ef1_partitions",
    "complement",
    "count_ef1_allocations",
    "count_efx_allocations",
    "cut_and_choose_efx",
    "derive_seed",
    "dumps_instance",
    "ef1_bundle_mask",
    "efx_bundle_mask",
    "efx_partition",
    "extract_set_systems",
    "f_ef1",
    "full_bundle",
    "hamming_distance",
    "instance_from_dict",
    "instance_to_dict",
    "is_ef1_allocation",
    "is_ef1_bundle",
    "is_efx_allocation",
    "is_efx_bundle",
    "is_sperner",
    "iter_items",
    "list_ef1_partitions",
    "load_instance",
    "make_additive",
    "random_instance",
    "random_monotone",
    "save_instance",
    "shadow",
    "shadow_is_monotone",
    "system_distance",
    "the_hamming_ball",
    "tight_ef1_instance",
    "tight_efx_instance",
    "value",
    "verify_harper",
    "verify_separation",
    "__version__",
]
