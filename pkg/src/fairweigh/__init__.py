"""Fair binary classification via adaptive priority reweighing."""

from .data import (
    DataError,
    Dataset,
    DatasetSchema,
    LoadReport,
    SubgroupStats,
    generate_synthetic,
    load_csv,
    split,
    standardize,
    subgroup_stats,
    write_csv,
)
from .metrics import (
    FairnessReport,
    MetricError,
    accuracy,
    delta_dp,
    delta_eo,
    delta_eop,
    fairness_report,
)
from .model import (
    ModelParams,
    TrainSettings,
    TrainingError,
    gradient,
    init_params,
    predict_label,
    predict_labels,
    predict_score,
    predict_scores,
    train_weighted,
    weighted_loss,
)
from .reweigh import (
    FairnessCriterion,
    ReweighConfig,
    ReweighError,
    TrainTrace,
    WeightState,
    compute_margins,
    compute_sample_weights,
    train_fair,
    update_subgroup_weights_dp,
    update_subgroup_weights_eo,
    update_subgroup_weights_eop,
)
from .baselines import (
    cut_to_balance,
    fixed_reweighing_weights,
    train_cutting,
    train_erm,
    train_fixed_reweighing,
)
from .harness import (
    ExperimentConfig,
    ResultRecord,
    emit_results,
    evaluate,
    grid_search,
    parse_config_file,
    parse_config_text,
    run_experiment,
)

__version__ = "0.1.0"
