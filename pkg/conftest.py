#!/usr/bin/env python3
"""
conftest.py
Fixtures comunes: generador sembrado y registro silencioso
"""

import logging

import numpy as np
import pytest

from config import configurar_logging


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True, scope="session")
def _registro_silencioso():
    configurar_logging(logging.WARNING)
