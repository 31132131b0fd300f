"""Finger-trajectory gesture toolkit: spotting, features, classification,
evaluation, and parametric shape rendering."""

__version__ = "0.1.0"

from .tracking import (
    Finger,
    Frame,
    GestureSample,
    GestureType,
    LeftHandState,
    ManifestEntry,
    Point3,
    Recording,
    RecordingSource,
    RightHandState,
    Trajectory,
    load_recording,
    load_recording_file,
    read_manifest,
    save_recording_file,
    write_manifest,
)
from .trajectory import (
    classify_gesture_type,
    collapse_multifinger,
    normalize,
    project_to_plane,
    resample,
    spot_gestures,
)
from .features import (
    FeatureDim,
    FeatureSequence,
    FeatureVector,
    WindowExtents,
    curvature_moments,
    extract_f7,
    extract_f12,
)
from .hmm import (
    ClassifierBank,
    Gmm,
    HmmModel,
    RecognitionResult,
    TrainConfig,
    apply_rejection,
    forward_log_likelihood,
    gmm_log_density,
    init_model,
    load_bank,
    recognize,
    save_bank,
    train_classifier_bank,
    train_model,
)
from .dtw import DtwConfig, dtw_distance, knn_classify
from .evaluation import (
    ExperimentConfig,
    compute_metrics,
    confusion,
    kfold_split,
    run_experiment,
    top_n_accuracy,
)
from .synth import NoiseSpec, ShapeSpec, generate_dataset, generate_sample, shape_specs
from .render import (
    RenderKind,
    RenderParams,
    RenderSpec,
    SizeClass,
    extract_params,
    render,
    size_class,
)
