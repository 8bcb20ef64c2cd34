"""cmstruct: classify concept maps as chain, network or spoke structures.

The toolkit covers the full pipeline: map ingestion, degree-statistics
feature extraction, seeded synthetic corpus generation, from-scratch
multiclass classifiers, a benchmark protocol with permutation importance,
a CLI, and a small HTTP service for live feedback in a map editor.
"""

from .errors import CmstructError
from .evaluation import (
    EvalProtocol,
    EvaluationReport,
    LabeledDataset,
    balance,
    benchmark_all,
    confusion_matrix,
    cross_validate,
    dataset_from_corpus,
    dataset_from_rows,
    metrics,
    permutation_importance,
    render_table,
    split_dataset,
)
from .features import (
    FEATURE_NAMES,
    FeatureVector,
    extract_features,
    features_from_csv,
    features_to_csv,
    quantile,
    read_features_csv,
    std_dev,
    write_features_csv,
)
from .generate import (
    Corpus,
    GeneratorParams,
    corpus_from_manifest,
    default_params,
    generate_corpus,
    generate_map,
    rule_label,
)
from .graph import (
    ConceptMap,
    DegreeSequence,
    Edge,
    Node,
    ValidatedGraph,
    degree_sequence,
    parse_map,
    scan_directory,
    serialize_map,
    validate,
)
from .labels import CLASS_NAMES, LABELS, StructureLabel
from .models import (
    MODEL_KINDS,
    ModelSpec,
    TrainedModel,
    best_split,
    fit,
    gini,
    load_model,
    predict,
    predict_matrix,
    predict_scores,
    save_model,
)

__version__ = "0.1.0"
