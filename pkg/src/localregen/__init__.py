"""Finite-field coding toolkit for storage codes with locality and local
regeneration: constructions, exhaustive certification, bounds, and a
repair-cost simulator."""

from .bounds import (
    ProfileCalculator,
    concatenated_bound,
    cutset_bound,
    erasure_and_singleton,
    kappa_bound,
    mbr_bound,
    mbr_profile,
    msr_k_bound,
    msr_profile,
    rate_bound,
    scalar_locality_bound,
    structural_bounds,
)
from .constructions import (
    ConstructedCode,
    build,
    product_cyclic,
    pyramid_msr,
    random_msr_all_symbol,
    random_msr_local,
    rbt_mbr_all_symbol,
    rbt_mbr_local,
    stack,
    sum_parity_msr,
)
from .field import FieldElement, FiniteField, arith, field_new, smallest_field_at_least
from .linalg import Matrix, rs_generator, systematic_form, vandermonde
from .regen import (
    RegenCode,
    RegenParams,
    RepairTranscript,
    data_collect,
    pm_msr_construct,
    rbt_mbr_construct,
    rbt_repair,
    regen_repair,
    trivial_msr,
)
from .scalar import (
    parity_split_construct,
    pyramid_construct,
    random_all_symbol_construct,
)
from .simulate import ComparisonRecord, compare, repair_sweep
from .vectorcode import (
    LocalityStructure,
    NotURA,
    RankProfile,
    VectorCode,
    WitnessSet,
    check_optimal_structure,
    find_witness,
    validate_locality,
)

__version__ = "0.1.0"
