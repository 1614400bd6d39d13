"""Dynamical sieve toolkit.

Primes modelled as crossing trains on a discrete time line: untouched
times decode as primes and spawn trains, crossed times are composites
encoded by their crossers.  Submodules add a segmented reference sieve
with a cached binary table, Euler-product series checks, three-odd-prime
decomposition of odd numbers, and figure tracing/rendering.
"""

from .engine import (
    Classification,
    Engine,
    PrimeTrain,
    SieveLedger,
    SieveMode,
    TimeIndex,
    Verdict,
    euler_run_to,
    new_engine,
    run_to,
)
from .goldbach import (
    BelowThresholdError,
    DecompositionNotFound,
    GoldbachWitness,
    RangeReport,
    goldbach_pair,
    goldbach_triple,
    verify_range,
    witnesses_use_decoded_primes,
)
from .oracle import CorruptCacheError, PrimeTable, build, load_cache, save_cache
from .series import (
    DivergentSeriesError,
    SeriesComparison,
    SeriesParams,
    ZetaTruncation,
    compare_sieved_series,
    crossing_set_identity,
    survivor_indices,
    survivor_sum,
    train_crossing_sum,
    truncated_zeta,
)
from .trace import (
    FigureDataset,
    TraceRecord,
    WaveSample,
    crossing_times,
    extremum_times,
    figure_dataset,
    render_wave,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "Engine",
    "PrimeTrain",
    "SieveLedger",
    "SieveMode",
    "TimeIndex",
    "Verdict",
    "euler_run_to",
    "new_engine",
    "run_to",
    "BelowThresholdError",
    "DecompositionNotFound",
    "GoldbachWitness",
    "RangeReport",
    "goldbach_pair",
    "goldbach_triple",
    "verify_range",
    "witnesses_use_decoded_primes",
    "CorruptCacheError",
    "PrimeTable",
    "build",
    "load_cache",
    "save_cache",
    "DivergentSeriesError",
    "SeriesComparison",
    "SeriesParams",
    "ZetaTruncation",
    "compare_sieved_series",
    "crossing_set_identity",
    "survivor_indices",
    "survivor_sum",
    "train_crossing_sum",
    "truncated_zeta",
    "FigureDataset",
    "TraceRecord",
    "WaveSample",
    "crossing_times",
    "extremum_times",
    "figure_dataset",
    "render_wave",
    "__version__",
]
