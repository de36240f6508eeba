"""Secret-breach detection for issue reports."""

from ._core import (
    Error,
    IoError,
    ParseError,
    RemoteError,
    ValidationError,
    clean,
    cohen_kappa,
    compute_metrics,
    detect,
    entropy,
    extract_window,
    f_beta_from,
    feature_names,
    featurize,
    handle_detect_http,
    predict,
    rule_names,
    run_cli,
    scan,
    train,
)

__all__ = [
    "Error",
    "IoError",
    "ParseError",
    "RemoteError",
    "ValidationError",
    "clean",
    "cohen_kappa",
    "compute_metrics",
    "detect",
    "entropy",
    "extract_window",
    "f_beta_from",
    "feature_names",
    "featurize",
    "handle_detect_http",
    "predict",
    "rule_names",
    "run_cli",
    "scan",
    "train",
]
