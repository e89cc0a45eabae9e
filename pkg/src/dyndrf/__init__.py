"""Dynamic dominant resource fairness with exact offline benchmarks."""

from .core import (Allocation, DemandVector, Instance, ShareVector, allocation_from_shares,
                   normalize, validate)
from .drf import StepSolution, run, step_update_bisect, step_update_naive
from .generators import gen_random, gen_theorem1, gen_theorem2
from .offline import maxmin_offline, maxsum_offline
from .ratios import cr_maxmin, cr_maxsum, ratio_report, verify_run

__version__ = "0.1.0"

__all__ = [
    "Allocation", "DemandVector", "Instance", "ShareVector", "StepSolution",
    "allocation_from_shares", "cr_maxmin", "cr_maxsum", "gen_random", "gen_theorem1",
    "gen_theorem2", "maxmin_offline", "maxsum_offline", "normalize", "ratio_report", "run",
    "step_update_bisect", "step_update_naive", "validate", "verify_run",
]
