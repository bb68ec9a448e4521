"""Exact cache-aided cooperative transmission experiments on linear networks."""

from .analysis import (
    Metrics,
    MemorySplit,
    corollary_transform,
    equivalent_nocache_mt,
    figure3_data,
    figure4_data,
    interior_window,
    measure_backhaul,
    measure_pudof,
    memory_share_pudof,
    memory_share_split,
    nocache_envelope,
    schedule_window,
    theory_backhaul_cached_even,
    theory_backhaul_cached_odd,
    theory_pudof_eq1,
    theory_pudof_eq2,
)
from .cached import build_cached_schedule
from .decode import DecodeReport, Outcome, decode_slot, run_delivery
from .experiment import RunConfig, RunResult, run_simulation
from .memoryshare import CompositeResult, run_memory_share
from .network import (
    LibraryConfig,
    NetworkConfig,
    RxObservation,
    SubfileId,
    TxSignal,
    XorSymbol,
    receive,
    sample_channels,
    worst_case_demands,
)
from .nocache import build_nocache_a, build_nocache_b
from .placement import CacheState, FileStore, no_caches, place_caches
from .schedule import Schedule, Slot, Term

__version__ = "0.1.0"
