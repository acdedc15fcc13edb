"""
实验驱动、语料与报告存储
"""
from .corpus import (
    CorpusExhausted, CorpusSpec, generate_corpus, is_absolutely_irreducible,
    top_part_absolutely_irreducible,
)
from .report import ExperimentReport, SCHEMA_VERSION
from .regression import compare_regression, freeze_regression, load_regression
from .experiments import (
    EXPERIMENTS, experiment_affine_curve_bound, experiment_chebyshev, experiment_curve_bound,
    experiment_padic, experiment_surface_linear, experiment_witness_floor, run_experiment,
)
from .store import ReportStore

__all__ = [
    'CorpusExhausted', 'CorpusSpec', 'generate_corpus', 'is_absolutely_irreducible',
    'top_part_absolutely_irreducible', 'ExperimentReport', 'SCHEMA_VERSION',
    'compare_regression', 'freeze_regression', 'load_regression', 'EXPERIMENTS',
    'experiment_affine_curve_bound', 'experiment_chebyshev', 'experiment_curve_bound',
    'experiment_padic', 'experiment_surface_linear', 'experiment_witness_floor',
    'run_experiment', 'ReportStore',
]
