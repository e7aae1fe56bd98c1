#!/usr/bin/env python3
"""
cli_runner/__init__.py
Orquestación de experimentos: configuración, ensembles sembrados, CSV/JSON y recetas
"""

from .executor import CSV_COLUMNS, MANIFEST_SCHEMA_VERSION, RunResult, TrialFailureError, execute
from .experiment import (ConfigError, ExperimentConfig, GridPoint, OutputPathError, dumps_config, load_config,
                         parse_config)
from .recipes import RECIPES, recipe
from .tasks import column_names, trial_rng
from .verify import SUITES, SuiteResult, run_suites

__all__ = [
    'CSV_COLUMNS', 'MANIFEST_SCHEMA_VERSION', 'RunResult', 'TrialFailureError', 'execute',
    'ConfigError', 'ExperimentConfig', 'GridPoint', 'OutputPathError', 'dumps_config', 'load_config',
    'parse_config',
    'RECIPES', 'recipe',
    'column_names', 'trial_rng',
    'SUITES', 'SuiteResult', 'run_suites',
]
