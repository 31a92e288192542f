"""Threshold-mixture evaluation of binary probabilistic classifiers.

Scores a classifier by its expected decision regret over ranges of cost
ratios: Brier score, log loss and their bounded-interval variants,
Beta-weighted H-measures, decision-curve net benefit and its rescalings,
AUC-ROC with its regret representation, and PAV-based calibration /
refinement decompositions.  Every closed form is backed by an exact
piecewise-linear regret curve that doubles as an integration oracle.
"""

from .calibration import (
    DecompositionReport,
    IsotonicBlock,
    IsotonicFit,
    brier_decomposition,
    log_loss_decomposition,
    pav_fit,
)
from .curves import (
    CurveSeries,
    CurveSpec,
    FillAnnotation,
    TickMark,
    build_curve,
    emit,
    odds_label,
)
from .dataset import (
    EmpiricalDistributionPair,
    LabeledScores,
    empirical_cdfs,
    from_pairs,
    load_csv,
    prevalence,
)
from .dca import (
    DecisionCurve,
    RescaledDecisionCurve,
    average_net_benefit_exact,
    bounded_net_benefit,
    decision_curve,
    net_benefit,
    rescaled_decision_curve,
    treat_all_net_benefit,
)
from .errors import (
    DatasetError,
    DegenerateClassError,
    EmptyDatasetError,
    IntervalAtBoundaryError,
    LabelMismatchError,
    MalformedRowError,
    MissingColumnError,
    NonBinaryLabelError,
    NonIntegrableError,
    ScoreOutOfRangeError,
    SinkWriteError,
    ThresholdAtBoundaryError,
    ThreshmixError,
)
from .hmeasure import RankTable, WeightSpec, h_measure, rank_models
from .interval import ThresholdInterval, log_odds
from .ranking import RocCurve, auc_roc, hand_identity_gap, roc_curve
from .regret import (
    RegretCurve,
    accuracy,
    average_regret,
    integrate_regret,
    minimal_regret_curve,
    regret,
)
from .scoring import (
    DensityCurve,
    ScoreReport,
    bounded_brier,
    bounded_log_loss,
    brier,
    log_loss,
    shift_score,
    shifted_brier,
    weighting_density,
)

__version__ = "0.1.0"

__all__ = [
    "DatasetError",
    "DecisionCurve",
    "DecompositionReport",
    "DegenerateClassError",
    "DensityCurve",
    "CurveSeries",
    "CurveSpec",
    "EmptyDatasetError",
    "EmpiricalDistributionPair",
    "FillAnnotation",
    "IntervalAtBoundaryError",
    "IsotonicBlock",
    "IsotonicFit",
    "LabelMismatchError",
    "LabeledScores",
    "MalformedRowError",
    "MissingColumnError",
    "NonBinaryLabelError",
    "NonIntegrableError",
    "RankTable",
    "RegretCurve",
    "RescaledDecisionCurve",
    "RocCurve",
    "ScoreOutOfRangeError",
    "ScoreReport",
    "SinkWriteError",
    "ThreshmixError",
    "ThresholdAtBoundaryError",
    "ThresholdInterval",
    "TickMark",
    "WeightSpec",
    "accuracy",
    "auc_roc",
    "average_net_benefit_exact",
    "average_regret",
    "bounded_brier",
    "bounded_log_loss",
    "bounded_net_benefit",
    "brier",
    "brier_decomposition",
    "build_curve",
    "decision_curve",
    "emit",
    "empirical_cdfs",
    "from_pairs",
    "h_measure",
    "hand_identity_gap",
    "integrate_regret",
    "load_csv",
    "log_loss",
    "log_loss_decomposition",
    "log_odds",
    "minimal_regret_curve",
    "net_benefit",
    "odds_label",
    "pav_fit",
    "prevalence",
    "rank_models",
    "regret",
    "rescaled_decision_curve",
    "roc_curve",
    "shift_score",
    "shifted_brier",
    "treat_all_net_benefit",
    "weighting_density",
]
