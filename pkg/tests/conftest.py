# -*- coding: utf-8 -*-
"""Fixtures compartidas de las pruebas de LexKit"""

import pytest

from lexkit.config import CliConfig, SUITE_DEFAULTS
from lexkit.engine import RewriteEngine
from lexkit.syntax import parse_term


@pytest.fixture
def engine():
    return RewriteEngine(node_fuel=5000, class_bound=256, step_fuel=2000)


@pytest.fixture
def settings():
    return CliConfig(node_fuel=5000, class_bound=256, step_fuel=2000)


@pytest.fixture
def sizes():
    return dict(SUITE_DEFAULTS)


@pytest.fixture
def t():
    """Atajo para leer términos: t('\\x.x')"""
    return parse_term
