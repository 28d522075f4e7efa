"""Maximal frequent itemset mining over a hybrid cell-array / bitmap store."""

from .dataset import (
    FimiParseError,
    ItemMap,
    RawDatabase,
    TransactionDatabase,
    atl,
    gen_sparse,
    global_supports,
    parse_fimi,
    prune_and_remap,
    read_fimi,
    to_fimi,
)
from .hdr import (
    Cell,
    CostCounters,
    CountMode,
    HdrStore,
    Pdr,
    build_hdr,
    count_supports,
    project_vertical,
    select_mode,
    verify_counts,
)
from .miner import (
    LmfiView,
    MfiStore,
    MinerConfig,
    NodeFrame,
    SearchStats,
    fhut_signal,
    hut_prune_check,
    lmfi_project,
    maximality_insert,
    mine_mfi,
    pep_trim,
    reorder_tail,
)
from .oracle import (
    BRUTEFORCE_MAX_ITEMS,
    CapacityError,
    FrequentSet,
    enumerate_fi_bruteforce,
    maximal_filter,
    mine_bitmap_baseline,
)

__version__ = "0.1.0"

__all__ = [
    "FimiParseError",
    "ItemMap",
    "RawDatabase",
    "TransactionDatabase",
    "atl",
    "gen_sparse",
    "global_supports",
    "parse_fimi",
    "prune_and_remap",
    "read_fimi",
    "to_fimi",
    "Cell",
    "CostCounters",
    "CountMode",
    "HdrStore",
    "Pdr",
    "build_hdr",
    "count_supports",
    "project_vertical",
    "select_mode",
    "verify_counts",
    "LmfiView",
    "MfiStore",
    "MinerConfig",
    "NodeFrame",
    "SearchStats",
    "fhut_signal",
    "hut_prune_check",
    "lmfi_project",
    "maximality_insert",
    "mine_mfi",
    "pep_trim",
    "reorder_tail",
    "BRUTEFORCE_MAX_ITEMS",
    "CapacityError",
    "FrequentSet",
    "enumerate_fi_bruteforce",
    "maximal_filter",
    "mine_bitmap_baseline",
    "__version__",
]
