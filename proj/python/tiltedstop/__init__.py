"""Secretary problem under left-to-right-minimum tilted arrivals."""

from ._core import (
    EstimateReport,
    OptimalResult,
    RecordIndicatorTable,
    RegimeReport,
    StrategyEvaluation,
    brute_force_success,
    classify,
    draw_insertion,
    draw_kappa,
    enumerate_all,
    estimate,
    expected_lr_asymptotic,
    expected_lr_min,
    insertion_to_permutation,
    kappa_to_permutation,
    limiting_probability_floor_check,
    log_raising_factorial,
    lr_min_statistic,
    optimal_cutoff,
    play_game,
    pmf,
    raising_factorial,
    record_indicator_suite,
    sample,
    stirling_first_kind,
    success_probability,
)

__version__ = "0.1.0"
