"""Trust-aware user-based collaborative filtering."""

import json

from ._core import (
    Config,
    DataError,
    Dataset,
    Error,
    Model,
    UsageError,
    apply_filters,
    configuration_names,
    custom_config,
    ingest_librarything,
    ingest_yelp,
    load_canonical,
    load_category_closure,
    make_config,
    make_synthetic,
    save_canonical,
    split_folds,
    stats,
)
from ._core import run_experiment as _run_experiment

__all__ = [
    "Config",
    "DataError",
    "Dataset",
    "Error",
    "Model",
    "UsageError",
    "apply_filters",
    "configuration_names",
    "custom_config",
    "ingest_librarything",
    "ingest_yelp",
    "load_canonical",
    "load_category_closure",
    "make_config",
    "make_synthetic",
    "run_experiment",
    "save_canonical",
    "split_folds",
    "stats",
]


def run_experiment(dataset, configs, folds=10, seed=1, k=10, tau=4.0, threads=1, tsv=False):
    """Cross-validate configs; returns the summary as a dict (plus the TSV text when tsv=True)."""
    if isinstance(configs, Config):
        configs = [configs]
    summary, table = _run_experiment(dataset, list(configs), folds, seed, k, tau, threads)
    report = json.loads(summary)
    return (report, table) if tsv else report
